#include "lt/formula.hpp"

#include <algorithm>
#include <functional>

namespace lt {

char op_char(Op op) {
    switch (op) {
    case Op::imp: return 'I';
    case Op::dis: return 'V';
    case Op::conj: return '*';
    case Op::equiv: return '=';
    case Op::neg: return '-';
    case Op::var: return '?';
    }
    return '?';
}

bool is_binary(Op op) {
    return op == Op::imp || op == Op::dis || op == Op::conj || op == Op::equiv;
}

Formula var(char name) {
    return std::make_shared<const Node>(Node{Op::var, name, nullptr, nullptr});
}

Formula neg(Formula f) {
    return std::make_shared<const Node>(Node{Op::neg, 0, std::move(f), nullptr});
}

Formula bin(Op op, Formula l, Formula r) {
    return std::make_shared<const Node>(Node{op, 0, std::move(l), std::move(r)});
}

bool equal(const Formula& x, const Formula& y) {
    if (x == y) return true;
    if (x->op != y->op) return false;
    switch (x->op) {
    case Op::var: return x->name == y->name;
    case Op::neg: return equal(x->a, y->a);
    default: return equal(x->a, y->a) && equal(x->b, y->b);
    }
}

std::size_t size(const Formula& f) {
    if (f->op == Op::var) return 1;
    if (f->op == Op::neg) return 1 + size(f->a);
    return 1 + size(f->a) + size(f->b);
}

std::size_t depth(const Formula& f) {
    if (f->op == Op::var) return 0;
    if (f->op == Op::neg) return 1 + depth(f->a);
    return 1 + std::max(depth(f->a), depth(f->b));
}

std::size_t hash(const Formula& f) {
    std::size_t h = static_cast<std::size_t>(f->op) * 1000003u + static_cast<unsigned char>(f->name);
    if (f->a) h = h * 31 + hash(f->a);
    if (f->b) h = h * 131 + hash(f->b);
    return h;
}

static void collect(const Formula& f, std::vector<char>& out) {
    if (f->op == Op::var) {
        if (std::find(out.begin(), out.end(), f->name) == out.end()) out.push_back(f->name);
        return;
    }
    collect(f->a, out);
    if (f->b) collect(f->b, out);
}

std::vector<char> variables(const Formula& f) {
    std::vector<char> out;
    collect(f, out);
    return out;
}

ParseError::ParseError(std::size_t pos, const std::string& msg)
    : std::runtime_error("at " + std::to_string(pos) + ": " + msg), pos_(pos) {}

namespace {

struct Parser {
    const std::string& s;
    std::size_t i = 0;

    void skip() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }

    bool binop(char c, Op& op) const {
        switch (c) {
        case 'I': op = Op::imp; return true;
        case 'V': op = Op::dis; return true;
        case '*': op = Op::conj; return true;
        case '=': op = Op::equiv; return true;
        }
        return false;
    }

    Formula unary() {
        skip();
        if (i >= s.size()) throw ParseError(i, "empty operand");
        char c = s[i];
        if (c == '-') {
            ++i;
            return neg(unary());
        }
        if (c == '(') {
            std::size_t open = i++;
            skip();
            if (i < s.size() && s[i] == ')') throw ParseError(i, "empty operand");
            Formula f = expr();
            skip();
            if (i >= s.size() || s[i] != ')') throw ParseError(open, "unbalanced parentheses");
            ++i;
            return f;
        }
        if (c >= 'A' && c <= 'Z' && c != 'I' && c != 'V') {
            ++i;
            return var(c);
        }
        Op op;
        if (binop(c, op) || c == ')') throw ParseError(i, "empty operand");
        throw ParseError(i, std::string("unknown connective '") + c + "'");
    }

    Formula expr() {
        Formula l = unary();
        skip();
        Op op;
        if (i < s.size() && binop(s[i], op)) {
            ++i;
            Formula r = unary();
            skip();
            Op op2;
            if (i < s.size() && binop(s[i], op2))
                throw ParseError(i, "binary connectives must be parenthesized");
            return bin(op, l, r);
        }
        return l;
    }
};

void print_into(const Formula& f, std::string& out, bool top) {
    switch (f->op) {
    case Op::var: out += f->name; return;
    case Op::neg:
        out += '-';
        print_into(f->a, out, false);
        return;
    default:
        if (!top) out += '(';
        print_into(f->a, out, false);
        out += op_char(f->op);
        print_into(f->b, out, false);
        if (!top) out += ')';
    }
}

bool match_into(const Formula& p, const Formula& s, const std::string& schematic, Substitution& sig) {
    if (p->op == Op::var) {
        bool binds = schematic.empty() || schematic.find(p->name) != std::string::npos;
        if (!binds) return s->op == Op::var && s->name == p->name;
        auto it = sig.find(p->name);
        if (it != sig.end()) return equal(it->second, s);
        sig.emplace(p->name, s);
        return true;
    }
    if (p->op != s->op) return false;
    if (!match_into(p->a, s->a, schematic, sig)) return false;
    return !p->b || match_into(p->b, s->b, schematic, sig);
}

Formula rename(const Formula& f, const char* alphabet) {
    Substitution s;
    auto vs = variables(f);
    for (std::size_t k = 0; k < vs.size(); ++k) s[vs[k]] = var(alphabet[k]);
    return lt::apply(s, f);
}

bool eval(const Formula& f, const std::map<char, bool>& env) {
    switch (f->op) {
    case Op::var: return env.at(f->name);
    case Op::neg: return !eval(f->a, env);
    case Op::imp: return !eval(f->a, env) || eval(f->b, env);
    case Op::dis: return eval(f->a, env) || eval(f->b, env);
    case Op::conj: return eval(f->a, env) && eval(f->b, env);
    case Op::equiv: return eval(f->a, env) == eval(f->b, env);
    }
    return false;
}

void walk_positions(const Formula& f, Path& path, Polarity pol, std::vector<Position>& out) {
    out.push_back({path, pol, f});
    auto flip = [](Polarity p) {
        return p == Polarity::positive ? Polarity::negative
               : p == Polarity::negative ? Polarity::positive
                                         : Polarity::none;
    };
    switch (f->op) {
    case Op::var: return;
    case Op::neg:
        path.push_back(0);
        walk_positions(f->a, path, flip(pol), out);
        path.pop_back();
        return;
    default: {
        Polarity left = f->op == Op::imp ? flip(pol) : f->op == Op::equiv ? Polarity::none : pol;
        Polarity right = f->op == Op::equiv ? Polarity::none : pol;
        path.push_back(0);
        walk_positions(f->a, path, left, out);
        path.back() = 1;
        walk_positions(f->b, path, right, out);
        path.pop_back();
    }
    }
}

}  // namespace

Formula parse(const std::string& text) {
    Parser p{text};
    p.skip();
    if (p.i >= text.size()) throw ParseError(0, "empty formula");
    Formula f = p.expr();
    p.skip();
    if (p.i < text.size()) {
        if (text[p.i] == ')') throw ParseError(p.i, "unbalanced parentheses");
        throw ParseError(p.i, "unexpected '" + std::string(1, text[p.i]) + "'");
    }
    return f;
}

std::string print(const Formula& f) {
    std::string out;
    print_into(f, out, true);
    return out;
}

std::string print(const Substitution& s) {
    std::string out = "{";
    bool first = true;
    for (auto& [k, v] : s) {
        if (!first) out += ", ";
        first = false;
        out += k;
        out += ":=";
        out += print(v);
    }
    return out + "}";
}

std::optional<Substitution> match(const Formula& pattern, const Formula& subject, const std::string& schematic,
                                  Substitution seed) {
    if (match_into(pattern, subject, schematic, seed)) return seed;
    return std::nullopt;
}

Formula apply(const Substitution& s, const Formula& f) {
    switch (f->op) {
    case Op::var: {
        auto it = s.find(f->name);
        return it == s.end() ? f : it->second;
    }
    case Op::neg: {
        Formula a = lt::apply(s, f->a);
        return a == f->a ? f : neg(a);
    }
    default: {
        Formula a = lt::apply(s, f->a), b = lt::apply(s, f->b);
        return a == f->a && b == f->b ? f : bin(f->op, a, b);
    }
    }
}

Formula schematic_form(const Formula& f) {
    return rename(f, "ABCDEFGHJKLMNOPQRSTU");
}

Formula canonical_form(const Formula& f) {
    return rename(f, "PQRSTUWXYZABCDEFGHJK");
}

bool tautology(const Formula& f) {
    auto vs = variables(f);
    for (unsigned long bits = 0; bits < (1ul << vs.size()); ++bits) {
        std::map<char, bool> env;
        for (std::size_t k = 0; k < vs.size(); ++k) env[vs[k]] = (bits >> k) & 1;
        if (!eval(f, env)) return false;
    }
    return true;
}

std::vector<Position> positions(const Formula& f) {
    std::vector<Position> out;
    Path path;
    walk_positions(f, path, Polarity::positive, out);
    return out;
}

Formula subterm(const Formula& f, const Path& p) {
    Formula at = f;
    for (unsigned char k : p) {
        if (at->op == Op::var || (k == 1 && !at->b) || k > 1)
            throw std::out_of_range("invalid position " + print(p) + " in " + print(f));
        at = k == 0 ? at->a : at->b;
    }
    return at;
}

static Formula replace_rec(const Formula& f, const Path& p, std::size_t i, const Formula& with) {
    if (i == p.size()) return with;
    if (f->op == Op::var || (p[i] == 1 && !f->b) || p[i] > 1) throw std::out_of_range("invalid position");
    if (f->op == Op::neg) return neg(replace_rec(f->a, p, i + 1, with));
    if (p[i] == 0) return bin(f->op, replace_rec(f->a, p, i + 1, with), f->b);
    return bin(f->op, f->a, replace_rec(f->b, p, i + 1, with));
}

Formula replace_at(const Formula& f, const Path& p, const Formula& with) {
    try {
        return replace_rec(f, p, 0, with);
    } catch (const std::out_of_range&) {
        throw std::out_of_range("invalid position " + print(p) + " in " + print(f));
    }
}

std::string print(const Path& p) {
    if (p.empty()) return "root";
    std::string out;
    for (unsigned char k : p) out += static_cast<char>('1' + k);
    return out;
}

}  // namespace lt
