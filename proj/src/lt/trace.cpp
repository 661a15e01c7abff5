#include "lt/trace.hpp"

namespace lt {

namespace {

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

}  // namespace

std::string format_footer(const Statistics& actual, const EffortLimits& limits) {
    auto line = [](const std::string& name, long long limit, long long used) {
        std::string head = pad(name + " ", 12);
        return pad(head + "LIMIT " + std::to_string(limit), 26) + "ACTUAL " + std::to_string(used) + "\n";
    };
    return line("EFFORT", limits.effort, actual.effort) + line("SUBPROBLEMS", limits.subproblems, actual.subproblems) +
           line("SUBSTITUTIONS", limits.substitutions, actual.substitutions);
}

std::string format_trace(const ProofResult& r, const TheoremStore& store, const EffortLimits& limits) {
    std::string out = pad(r.label, 7) + " " + print(r.goal) + "\n\n";
    if (!r.proved) return out + "NO PROOF FOUND.\n\n" + format_footer(r.stats, limits);
    out += "PROOF FOUND.\n\n";
    int derived = 0;
    for (std::size_t i = 0; i < r.steps.size(); ++i) {
        const ProofStep& s = r.steps[i];
        std::string ref;
        if (s.method == Method::given) {
            const Entry* e = store.find(s.cited);
            ref = e ? display_label(*e) : s.cited;
        } else if (i + 1 == r.steps.size()) {
            ref = r.label;
        } else {
            ref = "." + std::to_string(derived++);
        }
        out += "    " + pad(method_name(s.method) + " ", 16) + pad(ref + " ", 6) + print(s.formula) + "\n";
    }
    out += "    Q.E.D.\n\n";
    return out + format_footer(r.stats, limits);
}

}  // namespace lt
