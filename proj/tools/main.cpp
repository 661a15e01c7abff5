// liplv: run IPL programs and the Logic Theorist batch.
//
// exit status: 0 success, 1 outcome mismatch, 2 input error, 3 machine error

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ipl/interp.hpp"
#include "ipl/loader.hpp"
#include "lt/corpus.hpp"
#include "lt/trace.hpp"

namespace {

enum Exit { ok = 0, mismatch = 1, input_error = 2, machine_error = 3 };

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

void print_load_errors(const ipl::LoadError& e, const std::string& file) {
    for (const ipl::CardError& c : e.errors()) std::cerr << file << ":" << c.line << ": " << c.message << "\n";
}

int vm_run(const std::string& file, const std::string& entry, const std::string& trace, std::uint64_t budget) {
    auto level = ipl::parse_trace_level(trace);
    if (!level) throw InputError("unknown trace level " + trace);
    ipl::Vm vm;
    std::string text = read_file(file);
    try {
        ipl::load_text(vm.mem, text);
    } catch (const ipl::LoadError& e) {
        print_load_errors(e, file);
        return input_error;
    }
    if (!vm.mem.lookup(entry) || !vm.mem.live(*vm.mem.lookup(entry)))
        throw InputError("no routine " + entry + " in " + file);
    vm.attach_trace(*level, &std::cout);
    vm.eval(vm.mem.intern(entry), std::nullopt, budget ? std::optional<std::uint64_t>(budget) : std::nullopt);
    if (vm.mem.h0_depth() == 0)
        std::cout << "H0 (empty)\n";
    else
        std::cout << "H0 " << vm.mem.name(vm.mem.arg(0)) << "\n";
    std::cout << "H5 " << (vm.mem.h5_plus() ? "+" : "-") << "\n";
    std::cout << "CYCLES " << vm.mem.cycles << "\n";
    return ok;
}

int dump(const std::string& file, const std::string& prefix) {
    ipl::Machine m;
    try {
        ipl::load_text(m, read_file(file));
    } catch (const ipl::LoadError& e) {
        print_load_errors(e, file);
        return input_error;
    }
    std::cout << ipl::dump_region(m, prefix);
    return ok;
}

lt::ProverOptions prover_options(const std::string& limits, double multiplier) {
    lt::ProverOptions o;
    try {
        o.limits = lt::parse_limits(limits);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    o.multiplier = multiplier;
    return o;
}

int lt_prove(const std::string& label, const std::string& text, const lt::ProverOptions& o) {
    lt::Formula f;
    try {
        f = lt::parse(text);
    } catch (const lt::ParseError& e) {
        std::cerr << text << "\n" << std::string(e.position(), ' ') << "^ " << e.what() << "\n";
        return input_error;
    }
    lt::TheoremStore store = lt::TheoremStore::initial();
    lt::Prover prover(o);
    lt::ProofResult r = prover.prove(store, label, f);
    std::cout << lt::format_trace(r, store, o.limits);
    return ok;
}

int lt_batch(const std::string& corpus, const std::string& report, const std::string& golden, bool quiet,
             const lt::ProverOptions& o) {
    std::vector<lt::ReportRow> theorems;
    std::vector<lt::ReportRow> expected;
    try {
        theorems = corpus.empty() ? lt::builtin_corpus() : lt::parse_report(read_file(corpus));
        if (!golden.empty())
            expected = lt::parse_report(read_file(golden));
        else if (corpus.empty())
            expected = lt::builtin_corpus();
    } catch (const lt::CorpusError& e) {
        std::cerr << e.what() << "\n";
        return input_error;
    }
    lt::TheoremStore store = lt::TheoremStore::initial();
    lt::Prover prover(o);
    lt::BatchReport b;
    for (const lt::ReportRow& t : theorems) {
        lt::BatchReport one = lt::run_batch(prover, store, {t});
        if (!quiet) std::cout << lt::format_trace(one.results[0], store, o.limits) << "\n";
        b.results.push_back(std::move(one.results[0]));
    }
    std::cout << b.summary() << "\n";
    if (!report.empty()) write_file(report, lt::format_report(b.rows()));
    if (expected.empty()) return ok;
    auto diff = lt::diff_reports(expected, b.rows());
    for (const std::string& d : diff) std::cerr << "mismatch: " << d << "\n";
    return diff.empty() ? ok : mismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"IPL-V machine and Logic Theorist"};
    app.require_subcommand(1);

    std::string file, entry = "START", trace = "off", prefix;
    std::uint64_t budget = 0;
    auto* run = app.add_subcommand("vm-run", "load a .liplv program and evaluate a routine");
    run->add_option("program", file, "card file")->required();
    run->add_option("-e,--entry", entry, "routine to evaluate")->capture_default_str();
    run->add_option("--trace", trace, "off|calls|cells|full")->capture_default_str();
    run->add_option("--budget", budget, "cycle budget, 0 for none");

    auto* dmp = app.add_subcommand("dump", "load a .liplv program and print its cells as cards");
    dmp->add_option("program", file, "card file")->required();
    dmp->add_option("--prefix", prefix, "only cells whose name starts with this");

    app.add_subcommand("j-list", "list the implemented J-functions");

    std::string limits = "20000,50,50", report, golden, corpus, label, formula;
    double multiplier = lt::ProverOptions{}.multiplier;
    bool quiet = false;
    auto* batch = app.add_subcommand("lt-batch", "prove a theorem list with a growing store");
    batch->add_option("corpus", corpus, "label|formula|status file (default: built-in table)");
    batch->add_option("--limits", limits, "effort,subproblems,substitutions")->capture_default_str();
    batch->add_option("--multiplier", multiplier, "effort calibration multiplier")->capture_default_str();
    batch->add_option("--report", report, "write the machine-readable report here");
    batch->add_option("--golden", golden, "expected outcomes to compare against");
    batch->add_flag("-q,--quiet", quiet, "summary only, no traces");

    auto* prove = app.add_subcommand("lt-prove", "prove one theorem from the initial store");
    prove->add_option("label", label)->required();
    prove->add_option("formula", formula)->required();
    prove->add_option("--limits", limits, "effort,subproblems,substitutions")->capture_default_str();
    prove->add_option("--multiplier", multiplier, "effort calibration multiplier")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return input_error;
    }

    try {
        if (*run) return vm_run(file, entry, trace, budget);
        if (*dmp) return dump(file, prefix);
        if (app.got_subcommand("j-list")) {
            std::cout << ipl::standard_jtable().listing();
            return ok;
        }
        if (*batch) return lt_batch(corpus, report, golden, quiet, prover_options(limits, multiplier));
        if (*prove) return lt_prove(label, formula, prover_options(limits, multiplier));
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return input_error;
    } catch (const ipl::MachineError& e) {
        std::cerr << "machine error: " << e.what() << "\n";
        return machine_error;
    }
    return ok;
}
