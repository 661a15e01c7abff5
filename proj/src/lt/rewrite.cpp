#include "lt/rewrite.hpp"

namespace lt {

const std::vector<Rule>& definitions() {
    static const std::vector<Rule> defs = {
        {"1.01", parse("AIB"), parse("-AVB"), Rule::Kind::equivalence},
        {"2.33", parse("AV(BVC)"), parse("(AVB)VC"), Rule::Kind::equivalence},
        {"3.01", parse("A*B"), parse("-(-AV-B)"), Rule::Kind::equivalence},
        {"4.01", parse("A=B"), parse("(AIB)*(BIA)"), Rule::Kind::equivalence},
    };
    return defs;
}

const Rule* find_definition(const std::string& label) {
    for (const Rule& r : definitions())
        if (r.label == label) return &r;
    return nullptr;
}

bool polarity_allows(Rule::Kind kind, Polarity pol, Direction dir) {
    if (kind == Rule::Kind::equivalence) return true;
    // lhs implies rhs: weakening (lhs -> rhs) is sound at positive positions, strengthening at negative ones
    if (dir == Direction::forward) return pol == Polarity::positive;
    return pol == Polarity::negative;
}

Polarity polarity_at(const Formula& f, const Path& path) {
    for (const Position& p : positions(f))
        if (p.path == path) return p.polarity;
    throw RewriteError("invalid position " + print(path) + " in " + print(f));
}

Formula rewrite_subterm(const Formula& f, const Rule& rule, const Path& path, Direction dir,
                        const Substitution& seed) {
    Formula sub;
    try {
        sub = subterm(f, path);
    } catch (const std::out_of_range& e) {
        throw RewriteError(e.what());
    }
    if (!polarity_allows(rule.kind, polarity_at(f, path), dir))
        throw RewriteError("rule " + rule.label + " not sound at " + print(path) + " of " + print(f));
    const Formula& from = dir == Direction::forward ? rule.lhs : rule.rhs;
    const Formula& to = dir == Direction::forward ? rule.rhs : rule.lhs;
    auto sig = match(from, sub, "", seed);
    if (!sig) throw RewriteError("rule " + rule.label + " does not match " + print(sub));
    for (char v : variables(to))
        if (!sig->count(v))
            throw RewriteError("rule " + rule.label + " leaves " + std::string(1, v) + " unbound");
    return replace_at(f, path, lt::apply(*sig, to));
}

}  // namespace lt
