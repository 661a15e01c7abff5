#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lt/formula.hpp"
#include "lt/rewrite.hpp"

namespace lt {

enum class EntryKind { axiom, definition, proved };

struct Entry {
    std::string label;
    Formula formula;  // for definitions: lhs = rhs, used only as a rewrite rule
    EntryKind kind;
};

class TheoremStore {
public:
    // the five axioms and four definitions
    static TheoremStore initial();

    const std::vector<Entry>& entries() const { return entries_; }
    const Entry* find(const std::string& label) const;

    // Appends in schematic form (variables renamed A, B, C, ... in order of appearance).
    const Entry& add_proved(const std::string& label, const Formula& f);

    // The rewrite rule a label denotes: a definition, or an implication / biconditional entry.
    std::optional<Rule> rule(const std::string& label) const;

    std::size_t size() const { return entries_.size(); }

private:
    std::vector<Entry> entries_;
};

std::string display_label(const Entry& e);  // axioms carry a leading '*'

}  // namespace lt
