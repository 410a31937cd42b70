#pragma once

#include <cstdint>
#include <vector>

#include "gumbelrates/report.hpp"

namespace gumbelrates {

enum class VerifyLevel { Fast, Full };

// Named verification checks: the -1/n identity, the Gumbel-weighted moment
// integrals, the named constants, the Pinsker chain, KL two-route agreement,
// the analytic score against finite differences, the mean-coefficient
// arbitration, and Monte Carlo brackets (small sample at Fast level,
// m = 1e6 at Full level). samples == 0 keeps the level default.
std::vector<VerificationOutcome> run_verification(VerifyLevel level, std::uint64_t seed,
                                                  int jobs, std::uint64_t samples = 0);

}  // namespace gumbelrates
