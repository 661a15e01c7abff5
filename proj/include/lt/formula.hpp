#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lt {

enum class Op : unsigned char { var, neg, imp, dis, conj, equiv };

char op_char(Op op);  // 'I', 'V', '*', '=' for binaries, '-' for negation

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
    Op op;
    char name;  // variables only
    Formula a;  // child, or left operand
    Formula b;  // right operand
};

Formula var(char name);
Formula neg(Formula f);
Formula bin(Op op, Formula l, Formula r);
inline Formula imp(Formula l, Formula r) { return bin(Op::imp, std::move(l), std::move(r)); }
inline Formula dis(Formula l, Formula r) { return bin(Op::dis, std::move(l), std::move(r)); }
inline Formula conj(Formula l, Formula r) { return bin(Op::conj, std::move(l), std::move(r)); }
inline Formula equiv(Formula l, Formula r) { return bin(Op::equiv, std::move(l), std::move(r)); }

bool is_binary(Op op);
bool equal(const Formula& x, const Formula& y);
std::size_t size(const Formula& f);
std::size_t depth(const Formula& f);
std::size_t hash(const Formula& f);

struct FormulaHash {
    std::size_t operator()(const Formula& f) const { return hash(f); }
};
struct FormulaEq {
    bool operator()(const Formula& x, const Formula& y) const { return equal(x, y); }
};

// variables in order of first appearance (left to right)
std::vector<char> variables(const Formula& f);

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t pos, const std::string& msg);
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

Formula parse(const std::string& text);
std::string print(const Formula& f);

using Substitution = std::map<char, Formula>;

std::string print(const Substitution& s);

// One-way match: only variables in `schematic` may bind; the rest must match literally.
// An empty schematic string means every pattern variable is schematic.
std::optional<Substitution> match(const Formula& pattern, const Formula& subject, const std::string& schematic = "",
                                  Substitution seed = {});
Formula apply(const Substitution& s, const Formula& f);

// Rename variables in order of appearance to A, B, C, ... (store form) or P, Q, R, ... (goal form).
Formula schematic_form(const Formula& f);
Formula canonical_form(const Formula& f);

bool tautology(const Formula& f);

// positions: a path of child indices, 0 = first operand (or negation child), 1 = second
using Path = std::vector<unsigned char>;

enum class Polarity { positive, negative, none };

struct Position {
    Path path;
    Polarity polarity;
    Formula sub;
};

std::vector<Position> positions(const Formula& f);
Formula subterm(const Formula& f, const Path& p);
Formula replace_at(const Formula& f, const Path& p, const Formula& with);
std::string print(const Path& p);

}  // namespace lt
