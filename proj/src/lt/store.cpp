#include "lt/store.hpp"

namespace lt {

TheoremStore TheoremStore::initial() {
    TheoremStore s;
    for (const Rule& d : definitions())
        s.entries_.push_back({d.label, equiv(d.lhs, d.rhs), EntryKind::definition});
    const char* axioms[][2] = {
        {"1.2", "(AVA)IA"},
        {"1.3", "BI(AVB)"},
        {"1.4", "(AVB)I(BVA)"},
        {"1.5", "(AV(BVC))I(BV(AVC))"},
        {"1.6", "(BIC)I((AVB)I(AVC))"},
    };
    for (auto& a : axioms) s.entries_.push_back({a[0], parse(a[1]), EntryKind::axiom});
    return s;
}

const Entry* TheoremStore::find(const std::string& label) const {
    for (const Entry& e : entries_)
        if (e.label == label) return &e;
    return nullptr;
}

const Entry& TheoremStore::add_proved(const std::string& label, const Formula& f) {
    entries_.push_back({label, schematic_form(f), EntryKind::proved});
    return entries_.back();
}

std::optional<Rule> TheoremStore::rule(const std::string& label) const {
    if (const Rule* d = find_definition(label)) return *d;
    const Entry* e = find(label);
    if (!e) return std::nullopt;
    if (e->formula->op == Op::imp) return Rule{e->label, e->formula->a, e->formula->b, Rule::Kind::implication};
    if (e->formula->op == Op::equiv) return Rule{e->label, e->formula->a, e->formula->b, Rule::Kind::equivalence};
    return std::nullopt;
}

std::string display_label(const Entry& e) {
    return e.kind == EntryKind::axiom ? "*" + e.label : e.label;
}

}  // namespace lt
