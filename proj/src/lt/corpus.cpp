#include "lt/corpus.hpp"

#include <sstream>

namespace lt {

namespace {

const char* kHeader = "label|formula|status|effort|subproblems|substitutions";

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream in(line);
    while (std::getline(in, field, '|')) out.push_back(field);
    if (!line.empty() && line.back() == '|') out.push_back("");
    return out;
}

std::string status_of(const ProofResult& r) {
    return r.proved ? "proved" : "unproved";
}

}  // namespace

const std::string& embedded_file(const std::string& name) {
    auto it = embedded_files().find(name);
    if (it == embedded_files().end()) throw std::out_of_range("no embedded file " + name);
    return it->second;
}

std::vector<ReportRow> parse_report(const std::string& text) {
    std::vector<ReportRow> rows;
    std::stringstream in(text);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#' || line == kHeader) continue;
        auto f = split(line);
        if (f.size() != 3 && f.size() != 6)
            throw CorpusError("line " + std::to_string(n) + ": expected 3 or 6 fields");
        ReportRow r{f[0], f[1], f[2], std::nullopt};
        if (r.status != "proved" && r.status != "unproved")
            throw CorpusError("line " + std::to_string(n) + ": status must be proved or unproved");
        try {
            parse(r.formula);
        } catch (const ParseError& e) {
            throw CorpusError("line " + std::to_string(n) + ": " + e.what());
        }
        if (f.size() == 6) {
            try {
                r.stats = Statistics{std::stoll(f[3]), std::stoi(f[4]), std::stoi(f[5])};
            } catch (const std::exception&) {
                throw CorpusError("line " + std::to_string(n) + ": bad statistics");
            }
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

const std::vector<ReportRow>& builtin_corpus() {
    static const std::vector<ReportRow> rows = parse_report(embedded_file("table3.txt"));
    return rows;
}

int BatchReport::proved() const {
    int n = 0;
    for (const ProofResult& r : results) n += r.proved;
    return n;
}

std::string BatchReport::summary() const {
    return std::to_string(proved()) + " proved / " + std::to_string(unproved()) + " unproved";
}

std::vector<ReportRow> BatchReport::rows() const {
    std::vector<ReportRow> out;
    for (const ProofResult& r : results) out.push_back({r.label, print(r.goal), status_of(r), r.stats});
    return out;
}

BatchReport run_batch(Prover& prover, TheoremStore& store, const std::vector<ReportRow>& theorems) {
    BatchReport b;
    for (const ReportRow& t : theorems) {
        ProofResult r = prover.prove(store, t.label, parse(t.formula));
        if (r.proved) store.add_proved(t.label, r.goal);
        b.results.push_back(std::move(r));
    }
    return b;
}

std::string format_report(const std::vector<ReportRow>& rows) {
    std::string out = std::string(kHeader) + "\n";
    for (const ReportRow& r : rows) {
        out += r.label + "|" + r.formula + "|" + r.status;
        if (r.stats)
            out += "|" + std::to_string(r.stats->effort) + "|" + std::to_string(r.stats->subproblems) + "|" +
                   std::to_string(r.stats->substitutions);
        out += "\n";
    }
    return out;
}

std::vector<std::string> diff_reports(const std::vector<ReportRow>& expected, const std::vector<ReportRow>& actual) {
    std::vector<std::string> out;
    std::size_t n = std::max(expected.size(), actual.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (i >= expected.size()) {
            out.push_back("unexpected " + actual[i].label);
            continue;
        }
        if (i >= actual.size()) {
            out.push_back("missing " + expected[i].label);
            continue;
        }
        const ReportRow& e = expected[i];
        const ReportRow& a = actual[i];
        if (e.label != a.label || !equal(parse(e.formula), parse(a.formula)))
            out.push_back("row " + std::to_string(i + 1) + ": expected " + e.label + " " + e.formula + ", got " +
                          a.label + " " + a.formula);
        else if (e.status != a.status)
            out.push_back(e.label + ": expected " + e.status + ", got " + a.status);
    }
    return out;
}

}  // namespace lt
