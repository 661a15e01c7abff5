// Acceptance run: one PASS/FAIL line per criterion, details indented below it.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "ipl/interp.hpp"
#include "ipl/jlib.hpp"
#include "ipl/loader.hpp"
#include "lists.hpp"
#include "lt/corpus.hpp"
#include "lt/trace.hpp"
#include "oracle.hpp"

namespace {

struct Outcome {
    bool ok = true;
    std::vector<std::string> notes;

    void check(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back("failed: " + what);
        }
    }
    void note(const std::string& s) { notes.push_back(s); }
};

int failures = 0;

void report(int n, const std::string& title, const Outcome& o) {
    std::cout << (o.ok ? "PASS " : "FAIL ") << n << " " << title << "\n";
    for (const std::string& s : o.notes) std::cout << "    " << s << "\n";
    failures += !o.ok;
}

bool within_order(double actual, double reference) {
    return actual >= reference / 10 && actual <= reference * 10;
}

struct BatchRun {
    lt::TheoremStore store = lt::TheoremStore::initial();
    lt::Prover prover;
    lt::BatchReport report;
    std::map<std::string, std::string> traces;
    double seconds = 0;

    BatchRun() {
        auto t0 = std::chrono::steady_clock::now();
        for (const lt::ReportRow& t : lt::builtin_corpus()) {
            lt::BatchReport one = lt::run_batch(prover, store, {t});
            traces[t.label] = lt::format_trace(one.results[0], store, prover.options().limits);
            report.results.push_back(std::move(one.results[0]));
        }
        seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

    const lt::ProofResult& get(const std::string& label) const {
        for (const auto& r : report.results)
            if (r.label == label) return r;
        throw std::out_of_range(label);
    }
};

Outcome table3(const BatchRun& b) {
    Outcome o;
    std::vector<std::string> wrong;
    for (const lt::ReportRow& t : lt::builtin_corpus()) {
        bool got = b.get(t.label).proved;
        if (got != (t.status == "proved"))
            wrong.push_back(t.label + " expected " + t.status + " got " + (got ? "proved" : "unproved"));
    }
    o.note(b.report.summary() + ", multiplier " + std::to_string(b.prover.options().multiplier) + ", " +
           std::to_string(b.seconds) + " s");
    for (const std::string& w : wrong) o.note(w);
    o.check(wrong.empty(), "proved set equals the table's Proved set");
    o.check(b.seconds < 10, "runtime under 10 s");
    return o;
}

Outcome theorem201() {
    Outcome o;
    lt::TheoremStore store = lt::TheoremStore::initial();
    lt::Prover p;
    lt::ProofResult r = p.prove(store, "2.01", lt::parse("(PI-P)I-P"));
    std::string t = lt::format_trace(r, store, p.options().limits);
    std::size_t at = 0;
    for (const char* want : {"GIVEN           *1.2", "SUBSTITUTION", "SUBLEVEL REPL", "Q.E.D."}) {
        std::size_t f = t.find(want, at);
        o.check(f != std::string::npos, std::string("trace has ") + want + " in order");
        if (f != std::string::npos) at = f;
    }
    o.check(r.stats.subproblems == 1, "subproblems = 1 (got " + std::to_string(r.stats.subproblems) + ")");
    o.check(r.stats.substitutions == 2, "substitutions = 2 (got " + std::to_string(r.stats.substitutions) + ")");
    o.check(within_order(double(r.stats.effort), 5579), "effort within 10x of 5579");
    o.note("effort " + std::to_string(r.stats.effort));
    return o;
}

Outcome learning(const BatchRun& b) {
    Outcome o;
    const lt::ProofResult& r = b.get("4.25");
    o.check(r.proved, "4.25 proved");
    bool c220 = false, c420 = false;
    for (const lt::ProofStep& s : r.steps) {
        c220 = c220 || (s.method == lt::Method::given && s.cited == "2.20");
        c420 = c420 || (s.method == lt::Method::given && s.cited == "4.20");
    }
    const lt::Entry* e = b.store.find("2.20");
    o.check(e && e->kind == lt::EntryKind::proved, "2.20 is a proved theorem, not an axiom");
    o.check(c220, "GIVEN 2.20");
    o.check(c420, "cites 4.20");
    o.check(r.stats.subproblems == 2, "subproblems = 2 (got " + std::to_string(r.stats.subproblems) + ")");
    o.check(r.stats.substitutions == 3, "substitutions = 3 (got " + std::to_string(r.stats.substitutions) + ")");
    o.check(within_order(double(r.stats.effort), 8727), "effort within 10x of 8727");
    o.note("effort " + std::to_string(r.stats.effort));
    return o;
}

Outcome soundness(const BatchRun& b) {
    Outcome o;
    lt::TheoremStore store = lt::TheoremStore::initial();
    std::size_t marked = 0, proofs = 0;
    for (const lt::ProofResult& r : b.report.results) {
        for (const lt::Formula& f : r.marked) {
            ++marked;
            o.check(oracle::valid(f), r.label + " marked non-tautology " + lt::print(f));
        }
        if (!r.proved) continue;
        ++proofs;
        std::string err = lt::check_proof(store, r.steps, r.goal);
        o.check(err.empty(), r.label + " replays: " + err);
        store.add_proved(r.label, r.goal);
    }
    lt::Prover prover;
    std::mt19937 rng(1956);
    int taut = 0, proved = 0;
    for (int i = 0; i < 100; ++i) {
        lt::Formula f = oracle::random_formula(rng, 3, "PQR");
        if (i % 2) {
            const lt::Entry& e = store.entries()[4 + rng() % (store.size() - 4)];
            lt::Substitution s;
            for (char v : lt::variables(e.formula)) s[v] = oracle::random_formula(rng, 1, "PQ");
            f = lt::apply(s, e.formula);
        }
        taut += oracle::valid(f);
        lt::ProofResult r = prover.prove(store, "R" + std::to_string(i), f);
        for (const lt::Formula& m : r.marked) o.check(oracle::valid(m), "random run marked " + lt::print(m));
        if (!r.proved) continue;
        ++proved;
        o.check(oracle::valid(f), "non-tautology proved: " + lt::print(f));
        std::string err = lt::check_proof(store, r.steps, f);
        o.check(err.empty(), "random proof replays: " + err);
    }
    o.note(std::to_string(proofs) + " batch proofs, " + std::to_string(marked) + " marked goals; random: " +
           std::to_string(taut) + " tautologies of 100, " + std::to_string(proved) + " proved");
    return o;
}

Outcome vm_properties() {
    Outcome o;
    std::mt19937 rng(1957);
    // (a) preserve/restore round trip
    for (int round = 0; round < 200; ++round) {
        ipl::Machine m;
        ipl::SymbolRef c = m.W(round % 10);
        std::vector<ipl::Snapshot> expect;
        int depth = 1 + rng() % 10;
        auto rand_snapshot = [&] {
            return ipl::Snapshot{std::uint8_t(rng() % 8), std::uint8_t(rng() % 3),
                                 m.intern("S" + std::to_string(rng() % 1000)), m.intern("L" + std::to_string(rng() % 1000))};
        };
        m.cell(c).set(rand_snapshot());
        for (int d = 0; d < depth; ++d) {
            expect.push_back(m.cell(c).contents());
            m.preserve(c);
            m.cell(c).set(rand_snapshot());
        }
        for (int d = depth - 1; d >= 0; --d) {
            m.restore(c);
            if (!(m.cell(c).contents() == expect[d])) {
                o.check(false, "(a) restore returns the preserved snapshot");
                break;
            }
        }
        o.check(m.depth(c) == 0, "(a) depth back to 0");
    }
    // (b) J74 copies
    for (int round = 0; round < 200; ++round) {
        ipl::Vm vm;
        ipl::Machine& m = vm.mem;
        ipl::SymbolRef src = lists::random_list(m, rng, 3);
        std::string before = lists::render(m, src);
        m.push(src);
        vm.eval(m.intern("J74"));
        ipl::SymbolRef copy = m.pop();
        o.check(lists::render(m, copy) == before, "(b) copy structurally equal");
        auto a = lists::cells(m, src);
        for (std::uint32_t id : lists::cells(m, copy)) o.check(!a.count(id), "(b) copy is cell-disjoint");
        lists::mutate(m, copy, rng);
        o.check(lists::render(m, src) == before, "(b) mutating the copy leaves the source");
    }
    // (c) generator / walk equivalence
    ipl::JTable jt = ipl::standard_jtable();
    std::vector<ipl::SymbolRef> seen;
    jt.add({"J905", "collect (0)", "(0)", "-", "plus", [&](ipl::Vm& vm) {
                seen.push_back(vm.mem.pop());
                vm.mem.set_h5(true);
            }});
    for (int round = 0; round < 200; ++round) {
        ipl::Vm vm({}, &jt);
        ipl::SymbolRef l = lists::random_list(vm.mem, rng, 3);
        seen.clear();
        vm.mem.push(l);
        vm.mem.push(vm.mem.intern("J905"));
        vm.eval(vm.mem.intern("J100"));
        o.check(seen == vm.mem.walk(l), "(c) generated sequence equals walk");
    }
    // (d) erase conservation
    for (int round = 0; round < 200; ++round) {
        ipl::Machine m;
        ipl::SymbolRef l = lists::random_list(m, rng, 3);
        bool deep = round % 2;
        std::size_t n = deep ? lists::cells(m, l).size() : m.walk(l).size() + 1;
        std::size_t before = m.free_count();
        ipl::erase_list(m, l, deep);
        o.check(m.free_count() - before == n, "(d) free-list growth equals erased cells");
    }
    // (e) re-entrancy three levels deep
    ipl::JTable nest = ipl::standard_jtable();
    std::vector<std::size_t> deltas;
    nest.add({"J906", "eval (0)", "(0)=routine", "-", "unchanged", [&](ipl::Vm& vm) {
                  ipl::SymbolRef r = vm.mem.pop();
                  std::size_t d = vm.mem.depth(vm.mem.H(1));
                  vm.eval(r);
                  deltas.push_back(vm.mem.depth(vm.mem.H(1)) - d);
              }});
    ipl::Vm vm({}, &nest);
    ipl::load_text(vm.mem, "(N1 10 N2)\n(00 J906 0)\n(N2 10 N3)\n(00 J906 0)\n(N3 10 N4)\n(00 J906 0)\n(N4 10 X 0)");
    std::size_t d0 = vm.mem.depth(vm.mem.H(1));
    vm.eval("N1");
    o.check(deltas == std::vector<std::size_t>{0, 0, 0}, "(e) each nested eval restores H1 depth");
    o.check(vm.mem.depth(vm.mem.H(1)) == d0, "(e) outer H1 depth restored");
    return o;
}

Outcome loader_round_trip() {
    Outcome o;
    int files = 0;
    for (const auto& e : std::filesystem::directory_iterator(LIPLV_PROGRAMS_DIR)) {
        if (e.path().extension() != ".liplv") continue;
        ++files;
        std::ifstream in(e.path());
        std::stringstream ss;
        ss << in.rdbuf();
        ipl::Machine a, b;
        ipl::load(a, ipl::parse_cards(ss.str()));
        std::string d = ipl::dump_region(a, "");
        ipl::CardFile again = ipl::parse_cards(d);
        o.check(again.ok(), e.path().filename().string() + " dump parses");
        ipl::load(b, again);
        bool same = ipl::dump_region(b, "") == d;
        std::stringstream lines(d);
        std::string line;
        while (std::getline(lines, line)) {
            std::string n = line.substr(1, line.find(' ') - 1);
            const ipl::Cell& x = a.cell(*a.lookup(n));
            const ipl::Cell& y = b.cell(*b.lookup(n));
            same = same && x.p == y.p && x.q == y.q && a.name(x.symb) == b.name(y.symb) && a.name(x.link) == b.name(y.link);
        }
        o.check(same, e.path().filename().string() + " cell-identical after reload");
    }
    o.note(std::to_string(files) + " program files");
    o.check(files > 0, "programs found");
    return o;
}

Outcome scale(const BatchRun& b) {
    Outcome o;
    std::uint64_t total = 0;
    for (const lt::ProofResult& r : b.report.results) total += r.cycles + r.tariffs;
    o.note("batch cycles + tariffs = " + std::to_string(total));
    o.check(total >= 100000 && total <= 1000000, "batch total in [1e5, 1e6]");
    ipl::Machine m(ipl::MachineConfig{16, true, 4096});
    std::set<std::uint32_t> ids;
    for (int i = 0; i < 576000; ++i) ids.insert(m.intern("SYM" + std::to_string(i)).id);
    o.check(ids.size() == 576000, "576,000 distinct symbols");
    return o;
}

}  // namespace

int main() {
    try {
        BatchRun b;
        report(1, "Table 3 reproduction", table3(b));
        report(2, "2.01 proof structure", theorem201());
        report(3, "learning: 4.25 cites proved 2.20", learning(b));
        report(4, "proof soundness", soundness(b));
        report(5, "VM properties", vm_properties());
        report(6, "loader round trip", loader_round_trip());
        report(7, "scale sanity", scale(b));
    } catch (const std::exception& e) {
        std::cout << "FAIL error: " << e.what() << "\n";
        return 1;
    }
    return failures ? 1 : 0;
}
