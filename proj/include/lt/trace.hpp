#pragma once

#include <string>

#include "lt/prover.hpp"
#include "lt/store.hpp"

namespace lt {

// Header line, PROOF FOUND. / NO PROOF FOUND., the step table, Q.E.D. and the
// three-line limits/actuals footer. Axiom citations carry a leading '*'.
std::string format_trace(const ProofResult& r, const TheoremStore& store, const EffortLimits& limits);

std::string format_footer(const Statistics& actual, const EffortLimits& limits);

}  // namespace lt
