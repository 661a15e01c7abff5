#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lt/formula.hpp"
#include "lt/rewrite.hpp"
#include "lt/store.hpp"
#include "lt/substrate.hpp"

namespace lt {

struct EffortLimits {
    std::int64_t effort = 20000;
    int subproblems = 50;
    int substitutions = 50;
};

EffortLimits parse_limits(const std::string& text);  // "effort,subproblems,substitutions"

enum class Method { given, substitution, detachment, replacement, sublevel, forward, backward };

std::string method_name(Method m);

struct ProofStep {
    Method method;
    std::string cited;          // store label for GIVEN and rewrite rules
    Formula formula;
    std::vector<int> premises;  // indices of earlier steps
    Substitution sigma;
    Path path;
    Direction dir = Direction::forward;
};

struct Statistics {
    std::int64_t effort = 0;
    int subproblems = 0;
    int substitutions = 0;
};

// Search strategies, tried in this order on each subproblem after the direct test.
enum class Strategy { forward, modulo, detachment, backward, sublevel, replacement };

struct ProverOptions {
    EffortLimits limits;
    double multiplier = 1.0;
    std::vector<Strategy> order = {Strategy::forward,  Strategy::modulo,   Strategy::detachment,
                                   Strategy::backward, Strategy::sublevel, Strategy::replacement};
    int modulo_rewrites = 4;
    bool implication_sublevel = true;
    std::size_t agenda_cap = 400;
};

struct Subproblem {
    Formula goal;
    int parent = -1;  // index into the agenda, -1 for the theorem itself
    Strategy method = Strategy::forward;
    int depth = 0;
};

struct ProofResult {
    std::string label;
    Formula goal;
    bool proved = false;
    std::vector<ProofStep> steps;
    Statistics stats;
    std::string reason;  // for unproved: effort, subproblems, substitutions or exhausted
    std::vector<std::int64_t> effort_log;  // effort when each subproblem test started
    std::uint64_t cycles = 0;   // machine cycles spent, before the multiplier
    std::uint64_t tariffs = 0;  // match attempts and rewrites charged
    std::vector<Subproblem> agenda;
    std::vector<Formula> marked;  // every goal the search marked proved
};

class Prover {
public:
    explicit Prover(ProverOptions options = {}, ipl::MachineConfig config = {});

    const ProverOptions& options() const { return opts_; }
    ProverOptions& options() { return opts_; }
    Substrate& substrate() { return sub_; }

    // Does not modify the store.
    ProofResult prove(const TheoremStore& store, const std::string& label, const Formula& goal);

private:
    ProverOptions opts_;
    Substrate sub_;
};

// Replays every step against the store; the empty string means the proof checks.
std::string check_proof(const TheoremStore& store, const std::vector<ProofStep>& steps, const Formula& goal);

}  // namespace lt
