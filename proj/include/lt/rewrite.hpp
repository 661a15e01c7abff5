#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lt/formula.hpp"

namespace lt {

// A rewrite rule: either an equivalence lhs .=. rhs (usable both ways at any position)
// or an implication lhs I rhs (usable only where polarity makes the replacement sound).
struct Rule {
    enum class Kind { equivalence, implication };

    std::string label;
    Formula lhs;
    Formula rhs;
    Kind kind = Kind::equivalence;
};

enum class Direction { forward, backward };  // forward replaces an lhs instance by the rhs instance

const std::vector<Rule>& definitions();
const Rule* find_definition(const std::string& label);

class RewriteError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Rewrites the subterm at `path`. Variables of the target side that the source side does not
// bind must be supplied in `seed`. Throws RewriteError on a position, match or polarity failure.
Formula rewrite_subterm(const Formula& f, const Rule& rule, const Path& path, Direction dir,
                        const Substitution& seed = {});

// True when replacing at a position of this polarity, in this direction, keeps the result implied
// by the rewritten formula (implication rules only; equivalences are always allowed).
bool polarity_allows(Rule::Kind kind, Polarity pol, Direction dir);

Polarity polarity_at(const Formula& f, const Path& path);

}  // namespace lt
