#include "ipl/loader.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace ipl {

static std::string join_errors(const std::vector<CardError>& errs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < errs.size(); ++i) {
        if (i) os << "; ";
        os << "line " << errs[i].line << ": " << errs[i].message;
    }
    return os.str();
}

LoadError::LoadError(std::vector<CardError> errs)
    : MachineError(Fault::load, join_errors(errs)), errors_(std::move(errs)) {}

static bool is_pq(const std::string& t) {
    return t.size() == 2 && std::isdigit(static_cast<unsigned char>(t[0])) &&
           std::isdigit(static_cast<unsigned char>(t[1]));
}

CardFile parse_cards(const std::string& text) {
    CardFile out;
    std::set<std::string> names;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto semi = raw.find(';');
        std::string line = raw.substr(0, semi);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        auto bad = [&](const std::string& msg) { out.errors.push_back({lineno, msg}); };
        if (line.front() != '(' || line.back() != ')') {
            bad("malformed card: expected one parenthesized tuple");
            continue;
        }
        std::string body = line.substr(1, line.size() - 2);
        if (body.find_first_of("()") != std::string::npos) {
            bad("malformed card: nested parentheses");
            continue;
        }
        std::vector<std::string> tok;
        std::istringstream ts(body);
        for (std::string t; ts >> t;) tok.push_back(t);
        Card c;
        c.line = lineno;
        std::size_t i = 0;
        if (!tok.empty() && !is_pq(tok[0])) c.name = tok[i++];
        std::size_t rest = tok.size() - i;
        if (tok.empty() || rest < 2 || rest > 3) {
            bad("malformed card: expected (NAME PQ SYMB LINK) or (PQ SYMB [LINK])");
            continue;
        }
        const std::string& pq = tok[i];
        if (pq.size() != 2 || !std::isdigit(static_cast<unsigned char>(pq[0])) ||
            !std::isdigit(static_cast<unsigned char>(pq[1]))) {
            bad("bad PQ field '" + pq + "'");
            continue;
        }
        c.p = pq[0] - '0';
        c.q = pq[1] - '0';
        if (c.p > 7) {
            bad("P out of range: " + pq);
            continue;
        }
        if (c.q > 2) {
            bad("Q out of range: " + pq);
            continue;
        }
        c.symb = tok[i + 1];
        c.link = rest == 3 ? tok[i + 2] : "";
        if (c.link == "-") c.link = "";
        if (!c.name.empty()) {
            if (c.name == "-" || c.name == "0") {
                bad("reserved card name '" + c.name + "'");
                continue;
            }
            if (!names.insert(c.name).second) {
                bad("duplicate name " + c.name);
                continue;
            }
        }
        out.cards.push_back(std::move(c));
    }
    return out;
}

LoadReport load(Machine& m, const CardFile& file) {
    if (!file.ok()) throw LoadError(file.errors);
    std::vector<CardError> errs;
    const auto& cards = file.cards;

    // pass 1: names
    std::vector<std::string> names(cards.size());
    std::unordered_map<std::string, std::size_t> defined;
    std::string base;
    int k = 0;
    for (std::size_t i = 0; i < cards.size(); ++i) {
        if (!cards[i].name.empty()) {
            base = cards[i].name;
            k = 0;
            names[i] = base;
        } else if (base.empty()) {
            errs.push_back({cards[i].line, "unnamed card before any named card"});
            continue;
        } else {
            names[i] = base + "+" + std::to_string(++k);
        }
        if (!defined.emplace(names[i], i).second)
            errs.push_back({cards[i].line, "duplicate name " + names[i]});
        else if (auto s = m.lookup(names[i]); s && (m.live(*s) || m.on_free_list(*s)))
            errs.push_back({cards[i].line, "name " + names[i] + " already defined in machine"});
    }
    if (!errs.empty()) throw LoadError(errs);

    auto known = [&](const std::string& n) {
        if (n == "0" || defined.count(n)) return true;
        auto s = m.lookup(n);
        return s && m.live(*s);
    };

    // pass 2: links and designated cells must resolve
    std::vector<std::string> links(cards.size());
    std::set<std::string> externals;
    for (std::size_t i = 0; i < cards.size(); ++i) {
        const Card& c = cards[i];
        if (c.link.empty())
            links[i] = i + 1 < cards.size() ? names[i + 1] : "0";
        else
            links[i] = c.link;
        if (!known(links[i]))
            errs.push_back({c.line, "unresolved name " + links[i]});
        bool designates = c.p >= 2 && c.p != 5;
        if (designates && c.q == 0 && c.symb != "-" && !known(c.symb))
            errs.push_back({c.line, "unresolved name " + c.symb});
        if (c.q >= 1 && c.symb != "-" && !known(c.symb))
            errs.push_back({c.line, "unresolved name " + c.symb});
        if (c.symb != "-" && !known(c.symb)) externals.insert(c.symb);
    }
    if (!errs.empty()) throw LoadError(errs);

    LoadReport rep;
    for (std::size_t i = 0; i < cards.size(); ++i) {
        Cell& cell = m.define(m.intern(names[i]));
        cell.p = static_cast<std::uint8_t>(cards[i].p);
        cell.q = static_cast<std::uint8_t>(cards[i].q);
        rep.names.push_back(names[i]);
    }
    for (std::size_t i = 0; i < cards.size(); ++i) {
        SymbolRef symb = cards[i].symb == "-" ? SymbolRef{} : m.intern(cards[i].symb);
        SymbolRef link = m.intern(links[i]);
        Cell& cell = m.cell(m.intern(names[i]));
        cell.symb = symb;
        cell.link = link;
    }
    rep.cells = cards.size();
    for (auto& e : externals)
        if (!m.live(m.intern(e))) rep.externals.push_back(e);
    return rep;
}

LoadReport load_text(Machine& m, const std::string& text) {
    return load(m, parse_cards(text));
}

LoadReport load_file(Machine& m, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError({{0, "cannot open " + path}});
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_text(m, ss.str());
}

namespace {

// "L1+12" -> ("L1", 12); plain names get index 0
std::pair<std::string, long> split_name(const std::string& n) {
    auto plus = n.rfind('+');
    if (plus == std::string::npos || plus == 0 || plus + 1 == n.size()) return {n, 0};
    for (std::size_t i = plus + 1; i < n.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(n[i]))) return {n, 0};
    return {n.substr(0, plus), std::stol(n.substr(plus + 1))};
}

// natural order: digit runs compare numerically
bool natural_less(const std::string& a, const std::string& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (std::isdigit(static_cast<unsigned char>(a[i])) && std::isdigit(static_cast<unsigned char>(b[j]))) {
            std::size_t i2 = i, j2 = j;
            while (i2 < a.size() && std::isdigit(static_cast<unsigned char>(a[i2]))) ++i2;
            while (j2 < b.size() && std::isdigit(static_cast<unsigned char>(b[j2]))) ++j2;
            long x = std::stol(a.substr(i, i2 - i)), y = std::stol(b.substr(j, j2 - j));
            if (x != y) return x < y;
            i = i2;
            j = j2;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    return a.size() - i < b.size() - j;
}

}  // namespace

std::string dump_region(const Machine& m, const std::string& prefix) {
    std::vector<std::pair<std::string, long>> rows;
    for (std::uint32_t id = 1; id < m.symbol_count(); ++id) {
        SymbolRef s{id};
        if (!m.live(s) || m.is_control(s)) continue;
        const std::string& n = m.name(s);
        if (m.kind(s) == SymbolKind::internal) continue;
        if (n.compare(0, prefix.size(), prefix) != 0) continue;
        rows.push_back(split_name(n));
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return natural_less(a.first, b.first);
        return a.second < b.second;
    });
    std::ostringstream os;
    for (auto& [b, k] : rows) {
        std::string n = k ? b + "+" + std::to_string(k) : b;
        const Cell& c = m.cell(*m.lookup(n));
        os << '(' << n << ' ' << int(c.p) << int(c.q) << ' ' << m.name(c.symb) << ' '
           << (c.link.blank() ? "-" : m.name(c.link)) << ")\n";
    }
    return os.str();
}

}  // namespace ipl
