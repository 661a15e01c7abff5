#include "lt/prover.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace lt {

EffortLimits parse_limits(const std::string& text) {
    EffortLimits l;
    std::stringstream in(text);
    std::string part;
    std::vector<long long> v;
    while (std::getline(in, part, ',')) {
        std::size_t used = 0;
        long long n = -1;
        try {
            n = std::stoll(part, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != part.size() || n < 0) throw std::invalid_argument("bad limit '" + part + "'");
        v.push_back(n);
    }
    if (v.size() != 3) throw std::invalid_argument("limits take three values: effort,subproblems,substitutions");
    l.effort = v[0];
    l.subproblems = static_cast<int>(v[1]);
    l.substitutions = static_cast<int>(v[2]);
    return l;
}

std::string method_name(Method m) {
    switch (m) {
    case Method::given: return "GIVEN";
    case Method::substitution: return "SUBSTITUTION";
    case Method::detachment: return "DETACHMENT";
    case Method::replacement: return "REPLACEMENT";
    case Method::sublevel: return "SUBLEVEL REPL";
    case Method::forward: return "FORWARD CHAINING";
    case Method::backward: return "BACKWARD CHAINING";
    }
    return "?";
}

namespace {

Direction flip(Direction d) {
    return d == Direction::forward ? Direction::backward : Direction::forward;
}

bool ground(const Formula& f, const Substitution& s) {
    for (char v : variables(f))
        if (!s.count(v)) return false;
    return true;
}

std::string key_of(const Formula& f) {
    return print(canonical_form(f));
}

struct Oriented {
    std::string label;
    Formula from, to;
    Direction dir;  // of the rewrite from -> to, relative to the rule
};

struct Rewrite {
    Path path;
    const Rule* rule;
    Direction dir;
    Substitution sigma;
};

struct Candidate {
    Strategy method;
    Formula parent;
    std::vector<Formula> goals;
    const Entry* entry = nullptr;
    std::string rule;  // rewrite candidates
    Substitution sigma;
    Path path;
    Direction step_dir = Direction::forward;
};

struct Just {
    enum Kind { test, modulo, candidate } kind;
    Formula formula;
    const Entry* entry = nullptr;
    Substitution sigma;
    std::vector<Rewrite> rewrites;
    Formula rewritten;
    int cand = -1;
};

struct Stop {
    std::string reason;
};

class Search {
public:
    Search(const ProverOptions& o, Substrate& sub, const TheoremStore& store) : o_(o), sub_(sub) {
        c0_ = sub.cycles();
        a0_ = sub.attempts();
        for (const Entry& e : store.entries()) {
            if (e.kind == EntryKind::definition) continue;
            known_.push_back(&e);
            sub.encode(e.formula);
        }
        for (const Rule& d : definitions()) {
            sub.encode(d.lhs);
            sub.encode(d.rhs);
            defs_.push_back({d.label, d.lhs, d.rhs, Direction::forward});
        }
        for (const Rule& d : definitions()) defs_.push_back({d.label, d.rhs, d.lhs, Direction::backward});
    }

    std::int64_t effort() const {
        double raw = double(sub_.cycles() - c0_) + double(sub_.attempts() - a0_) + double(rewrites_);
        return std::llround(o_.multiplier * raw);
    }

    ProofResult run(const std::string& label, const Formula& goal);

private:
    std::optional<Just> test(const Formula& g);
    std::optional<Just> modulo(const Formula& g);
    bool mm(const Formula& p, const Formula& s, const Path& path, const Substitution& sig, int k,
            const std::function<bool(const Substitution&, int)>& cont);
    std::vector<Candidate> generate(const Formula& g, Strategy m);
    void check_limits();
    void mark(const std::string& key, Just j);
    int emit(const Formula& x);
    int add(ProofStep s);

    const ProverOptions& o_;
    Substrate& sub_;
    std::vector<const Entry*> known_;
    std::vector<Oriented> defs_;
    std::uint64_t c0_, a0_, rewrites_ = 0;

    int subst_ = 0, subp_ = 0;
    std::vector<std::int64_t> log_;
    std::vector<Candidate> cands_;
    std::map<std::string, Just> proved_;
    std::map<std::string, std::vector<int>> parents_;  // child key -> candidates
    std::vector<Rewrite> rws_;
    std::vector<Formula> marked_;

    std::vector<ProofStep> steps_;
    std::map<std::string, int> emitted_;
};

void Search::check_limits() {
    if (effort() > o_.limits.effort) throw Stop{"effort"};
    if (subst_ >= o_.limits.substitutions) throw Stop{"substitutions"};
    if (subp_ > o_.limits.subproblems) throw Stop{"subproblems"};
}

std::optional<Just> Search::test(const Formula& g) {
    log_.push_back(effort());
    ++subst_;
    for (auto it = known_.rbegin(); it != known_.rend(); ++it)
        if (auto s = sub_.match((*it)->formula, g)) return Just{Just::test, g, *it, *s, {}, nullptr, -1};
    return std::nullopt;
}

bool Search::mm(const Formula& p, const Formula& s, const Path& path, const Substitution& sig, int k,
                const std::function<bool(const Substitution&, int)>& cont) {
    sub_.count_attempts(1);
    if (p->op == Op::var) {
        auto it = sig.find(p->name);
        if (it != sig.end()) return equal(it->second, s) && cont(sig, k);
        Substitution bound = sig;
        bound[p->name] = s;
        return cont(bound, k);
    }
    if (p->op == s->op) {
        Path pa = path;
        pa.push_back(0);
        if (!p->b) {
            if (mm(p->a, s->a, pa, sig, k, cont)) return true;
        } else {
            Path pb = path;
            pb.push_back(1);
            auto second = [&](const Substitution& s1, int k1) { return mm(p->b, s->b, pb, s1, k1, cont); };
            if (mm(p->a, s->a, pa, sig, k, second)) return true;
        }
    }
    if (k > 0) {
        for (const Oriented& r : defs_) {
            auto g = match(r.from, s);
            if (!g || !ground(r.to, *g)) continue;
            ++rewrites_;
            Formula s2 = lt::apply(*g, r.to);
            if (s2->op != p->op) continue;
            rws_.push_back({path, find_definition(r.label), r.dir, *g});
            bool ok = mm(p, s2, path, sig, k - 1, cont);
            rws_.pop_back();
            if (ok) return true;
        }
    }
    return false;
}

std::optional<Just> Search::modulo(const Formula& g) {
    log_.push_back(effort());
    ++subst_;
    for (auto it = known_.rbegin(); it != known_.rend(); ++it) {
        std::vector<Rewrite> found;
        rws_.clear();
        bool ok = mm((*it)->formula, g, {}, {}, o_.modulo_rewrites, [&](const Substitution&, int) {
            found = rws_;
            return true;
        });
        if (!ok) continue;
        Formula t = g;
        for (const Rewrite& r : found) t = rewrite_subterm(t, *r.rule, r.path, r.dir, r.sigma);
        auto s = sub_.match((*it)->formula, t);
        if (!s) throw std::logic_error("machine MATCH disagrees with the guided match on " + print(t));
        return Just{Just::modulo, g, *it, *s, found, t, -1};
    }
    return std::nullopt;
}

std::vector<Candidate> Search::generate(const Formula& g, Strategy m) {
    std::vector<Candidate> out;
    auto cand = [&](std::vector<Formula> goals, const Entry* e, const Substitution& s) {
        Candidate c{m, g, std::move(goals), e, "", s, {}, Direction::forward};
        out.push_back(std::move(c));
    };
    switch (m) {
    case Strategy::detachment:
        for (const Entry* e : known_) {
            const Formula& f = e->formula;
            if (f->op != Op::imp) continue;
            auto s = sub_.match(f->b, g);
            if (s && ground(f->a, *s)) cand({lt::apply(*s, f->a)}, e, *s);
        }
        break;
    case Strategy::forward:
        if (g->op == Op::imp) {
            for (const Entry* e : known_) {
                const Formula& f = e->formula;
                if (f->op != Op::imp) continue;
                auto s = sub_.match(f->a, g->a);
                if (s && ground(f->b, *s)) cand({imp(lt::apply(*s, f->b), g->b)}, e, *s);
            }
        } else if (g->op == Op::equiv) {
            for (const Entry* e : known_) {
                const Formula& f = e->formula;
                if (f->op != Op::equiv) continue;
                auto s = sub_.match(f->a, g->a);
                if (!s || !ground(f->b, *s)) continue;
                Formula b = lt::apply(*s, f->b);
                cand({imp(b, g->b), imp(g->b, b)}, e, *s);
            }
        }
        break;
    case Strategy::backward:
        if (g->op != Op::imp) break;
        for (const Entry* e : known_) {
            const Formula& f = e->formula;
            if (f->op != Op::imp) continue;
            auto s = sub_.match(f->b, g->b);
            if (s && ground(f->a, *s)) cand({imp(g->a, lt::apply(*s, f->a))}, e, *s);
        }
        break;
    case Strategy::sublevel: {
        std::vector<Oriented> rules = defs_;
        std::vector<Oriented> imps;
        for (const Entry* e : known_)
            if (e->formula->op == Op::equiv)
                rules.push_back({e->label, e->formula->a, e->formula->b, Direction::forward});
        for (const Entry* e : known_)
            if (e->formula->op == Op::equiv)
                rules.push_back({e->label, e->formula->b, e->formula->a, Direction::backward});
        for (const Entry* e : known_)
            if (e->formula->op == Op::imp) imps.push_back({e->label, e->formula->a, e->formula->b, Direction::forward});
        auto rewrite = [&](const Position& pos, const Oriented& r) {
            auto s = sub_.match(r.from, pos.sub);
            if (!s || !ground(r.to, *s)) return;
            Candidate c{m, g, {replace_at(g, pos.path, lt::apply(*s, r.to))}, nullptr, r.label, *s, pos.path, flip(r.dir)};
            out.push_back(std::move(c));
        };
        for (const Position& pos : positions(g)) {
            if (pos.path.empty()) continue;
            for (const Oriented& r : rules) rewrite(pos, r);
            if (!o_.implication_sublevel || pos.polarity == Polarity::none) continue;
            for (const Oriented& r : imps) {
                if (pos.polarity == Polarity::positive)
                    rewrite(pos, {r.label, r.to, r.from, Direction::backward});
                else
                    rewrite(pos, r);
            }
        }
        break;
    }
    case Strategy::replacement:
        for (const Oriented& r : defs_) {
            auto s = sub_.match(r.from, g);
            if (!s || !ground(r.to, *s)) continue;
            Formula x = lt::apply(*s, r.to);
            std::vector<Formula> goals = x->op == Op::conj ? std::vector<Formula>{x->a, x->b} : std::vector<Formula>{x};
            Candidate c{m, g, goals, nullptr, r.label, *s, {}, flip(r.dir)};
            out.push_back(std::move(c));
        }
        break;
    case Strategy::modulo:
        break;
    }
    return out;
}

void Search::mark(const std::string& key, Just j) {
    std::vector<std::pair<std::string, Just>> work{{key, std::move(j)}};
    while (!work.empty()) {
        auto [k, just] = std::move(work.back());
        work.pop_back();
        if (proved_.count(k)) continue;
        marked_.push_back(just.formula);
        proved_.emplace(k, just);
        for (int ci : parents_[k]) {
            const Candidate& c = cands_[ci];
            std::string pk = key_of(c.parent);
            if (proved_.count(pk)) continue;
            bool all = true;
            for (const Formula& x : c.goals) all = all && proved_.count(key_of(x));
            if (all) work.push_back({pk, Just{Just::candidate, c.parent, nullptr, {}, {}, nullptr, ci}});
        }
    }
}

ProofResult Search::run(const std::string& label, const Formula& goal) {
    ProofResult r;
    r.label = label;
    r.goal = goal;
    const std::string root = key_of(goal);
    auto finish = [&](bool ok, const std::string& reason) {
        r.proved = ok;
        r.reason = reason;
        r.stats = {effort(), subp_, subst_};
        r.effort_log = log_;
        r.marked = marked_;
        r.cycles = sub_.cycles() - c0_;
        r.tariffs = sub_.attempts() - a0_ + rewrites_;
        if (ok) {
            emit(goal);
            r.steps = steps_;
        }
        return r;
    };

    if (auto j = test(goal)) {
        mark(root, *j);
        return finish(true, "");
    }
    r.agenda.push_back({goal, -1, Strategy::forward, 0});
    subp_ = 1;
    std::set<std::string> seen{root};
    try {
        for (std::size_t i = 0; i < r.agenda.size(); ++i) {
            Formula g = r.agenda[i].goal;
            std::string gk = key_of(g);
            if (proved_.count(gk)) continue;
            for (Strategy m : o_.order) {
                if (m == Strategy::modulo) {
                    if (effort() > o_.limits.effort) throw Stop{"effort"};
                    if (subst_ >= o_.limits.substitutions) throw Stop{"substitutions"};
                    if (auto j = modulo(g)) {
                        mark(gk, *j);
                        if (proved_.count(root)) return finish(true, "");
                        break;
                    }
                    continue;
                }
                for (Candidate& c : generate(g, m)) {
                    std::vector<std::string> keys;
                    bool self = true;
                    for (const Formula& x : c.goals) {
                        keys.push_back(key_of(x));
                        self = self && keys.back() == gk;
                    }
                    if (self) continue;
                    if (c.goals.size() > 1) ++subp_;
                    int ci = static_cast<int>(cands_.size());
                    cands_.push_back(c);
                    for (const std::string& k : keys) parents_[k].push_back(ci);
                    for (std::size_t n = 0; n < c.goals.size(); ++n) {
                        if (proved_.count(keys[n]) || seen.count(keys[n])) continue;
                        check_limits();
                        seen.insert(keys[n]);
                        if (auto j = test(c.goals[n])) {
                            mark(keys[n], *j);
                            if (proved_.count(root)) return finish(true, "");
                        } else {
                            r.agenda.push_back({c.goals[n], static_cast<int>(i), m, r.agenda[i].depth + 1});
                            if (c.goals.size() == 1) ++subp_;
                        }
                    }
                    bool all = true;
                    for (const std::string& k : keys) all = all && proved_.count(k);
                    if (all) mark(gk, Just{Just::candidate, g, nullptr, {}, {}, nullptr, ci});
                    if (proved_.count(root)) return finish(true, "");
                }
                if (proved_.count(gk)) break;
            }
            if (r.agenda.size() > o_.agenda_cap) break;
        }
    } catch (const Stop& s) {
        return finish(false, s.reason);
    }
    return finish(false, "exhausted");
}

int Search::add(ProofStep s) {
    steps_.push_back(std::move(s));
    return static_cast<int>(steps_.size()) - 1;
}

int Search::emit(const Formula& x) {
    std::string text = print(x);
    if (auto it = emitted_.find(text); it != emitted_.end()) return it->second;
    const Just& j = proved_.at(key_of(x));
    int at = -1;
    if (!equal(j.formula, x)) {
        int from = emit(j.formula);
        auto s = match(j.formula, x);
        at = add({Method::substitution, "", x, {from}, *s, {}, Direction::forward});
    } else if (j.kind != Just::candidate) {
        int given = add({Method::given, j.entry->label, j.entry->formula, {}, {}, {}, Direction::forward});
        Formula t = lt::apply(j.sigma, j.entry->formula);
        at = add({Method::substitution, "", t, {given}, j.sigma, {}, Direction::forward});
        for (auto it = j.rewrites.rbegin(); it != j.rewrites.rend(); ++it) {
            t = rewrite_subterm(t, *it->rule, it->path, flip(it->dir), it->sigma);
            Method m = it->path.empty() ? Method::replacement : Method::sublevel;
            at = add({m, it->rule->label, t, {at}, it->sigma, it->path, flip(it->dir)});
        }
    } else {
        const Candidate& c = cands_[j.cand];
        auto given_subst = [&]() {
            int given = add({Method::given, c.entry->label, c.entry->formula, {}, {}, {}, Direction::forward});
            return add({Method::substitution, "", lt::apply(c.sigma, c.entry->formula), {given}, c.sigma, {}, Direction::forward});
        };
        switch (c.method) {
        case Strategy::detachment: {
            int child = emit(c.goals[0]);
            int rule = given_subst();
            at = add({Method::detachment, "", x, {child, rule}, {}, {}, Direction::forward});
            break;
        }
        case Strategy::forward: {
            int rule = given_subst();
            std::vector<int> prem{rule};
            for (const Formula& g : c.goals) prem.push_back(emit(g));
            at = add({Method::forward, "", x, prem, {}, {}, Direction::forward});
            break;
        }
        case Strategy::backward: {
            int rule = given_subst();
            int child = emit(c.goals[0]);
            at = add({Method::backward, "", x, {child, rule}, {}, {}, Direction::forward});
            break;
        }
        case Strategy::sublevel: {
            int child = emit(c.goals[0]);
            at = add({Method::sublevel, c.rule, x, {child}, c.sigma, c.path, c.step_dir});
            break;
        }
        case Strategy::replacement: {
            std::vector<int> prem;
            for (const Formula& g : c.goals) prem.push_back(emit(g));
            at = add({Method::replacement, c.rule, x, prem, c.sigma, {}, c.step_dir});
            break;
        }
        case Strategy::modulo:
            throw std::logic_error("modulo match recorded as a candidate");
        }
    }
    if (!equal(steps_[at].formula, x)) throw std::logic_error("proof assembly produced " + print(steps_[at].formula));
    emitted_[text] = at;
    return at;
}

}  // namespace

Prover::Prover(ProverOptions options, ipl::MachineConfig config) : opts_(std::move(options)), sub_(config) {}

ProofResult Prover::prove(const TheoremStore& store, const std::string& label, const Formula& goal) {
    Search search(opts_, sub_, store);
    ProofResult r;
    try {
        r = search.run(label, goal);
    } catch (...) {
        sub_.release_temporaries();
        throw;
    }
    sub_.release_temporaries();
    if (r.proved) {
        std::string err = check_proof(store, r.steps, goal);
        if (!err.empty()) throw std::logic_error("proof of " + label + " does not check: " + err);
    }
    return r;
}

std::string check_proof(const TheoremStore& store, const std::vector<ProofStep>& steps, const Formula& goal) {
    if (steps.empty()) return "no steps";
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const ProofStep& s = steps[i];
        std::string at = "step " + std::to_string(i) + ": ";
        std::vector<Formula> p;
        for (int k : s.premises) {
            if (k < 0 || static_cast<std::size_t>(k) >= i) return at + "premise out of order";
            p.push_back(steps[k].formula);
        }
        switch (s.method) {
        case Method::given: {
            const Entry* e = store.find(s.cited);
            if (!e || e->kind == EntryKind::definition) return at + "no theorem " + s.cited;
            if (!equal(e->formula, s.formula)) return at + "given formula differs from " + s.cited;
            break;
        }
        case Method::substitution:
            if (p.size() != 1 || !equal(lt::apply(s.sigma, p[0]), s.formula)) return at + "bad substitution";
            break;
        case Method::replacement:
        case Method::sublevel: {
            if ((s.method == Method::replacement) != s.path.empty()) return at + "replacement position mismatch";
            if (p.empty() || p.size() > 2) return at + "bad premise count";
            auto rule = store.rule(s.cited);
            if (!rule) return at + "no rule " + s.cited;
            Formula src = p.size() == 2 ? conj(p[0], p[1]) : p[0];
            try {
                if (!equal(rewrite_subterm(src, *rule, s.path, s.dir, s.sigma), s.formula))
                    return at + "rewrite gives a different formula";
            } catch (const RewriteError& e) {
                return at + e.what();
            }
            break;
        }
        case Method::detachment:
            if (p.size() != 2 || !equal(p[1], imp(p[0], s.formula))) return at + "bad detachment";
            break;
        case Method::forward:
        case Method::backward:
            if (p.size() == 2) {
                if (p[0]->op != Op::imp || p[1]->op != Op::imp || !equal(p[0]->b, p[1]->a) ||
                    !equal(imp(p[0]->a, p[1]->b), s.formula))
                    return at + "bad chaining";
            } else if (p.size() == 3) {
                if (s.formula->op != Op::equiv || p[0]->op != Op::equiv || !equal(p[1], imp(p[0]->b, s.formula->b)) ||
                    !equal(p[2], imp(s.formula->b, p[0]->b)) || !equal(equiv(p[0]->a, s.formula->b), s.formula))
                    return at + "bad chaining";
            } else {
                return at + "bad premise count";
            }
            break;
        }
    }
    if (!equal(steps.back().formula, goal)) return "last step is not the goal";
    return "";
}

}  // namespace lt
