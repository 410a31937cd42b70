#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gumbelrates/exact_law.hpp"
#include "gumbelrates/norming.hpp"

namespace gumbelrates {

// Deterministic counter-based generator (SplitMix64 stream): draw i of a run
// depends only on (seed, i), so parallel generation is order-independent.
std::uint64_t counter_rng(std::uint64_t seed, std::uint64_t index);
double uniform_open01(std::uint64_t seed, std::uint64_t index);  // strictly in (0,1)

struct SimConfig {
    std::uint64_t n;     // sample-maximum size, >= 3
    std::uint64_t m;     // number of replicates, >= 100
    std::uint64_t seed = 0;

    void validate() const;
};

// Exact inverse-CDF draws of the maximum X_(n): one uniform per draw, upper
// tail entered through p = -expm1(log U / n) and the complementary quantile.
std::vector<double> sample_max_raw(const SimConfig& cfg, int jobs = 1);

// Same draws normalized to Y_n by the scheme.
std::vector<double> sample_max(const SimConfig& cfg, const NormingScheme& scheme,
                               int jobs = 1);

enum class ReferenceLaw { Gumbel, ExactMax };

// One-sample Kolmogorov-Smirnov statistic against the reference CDF.
// Requires ascending input.
double empirical_ks(std::span<const double> sorted_samples, ReferenceLaw ref,
                    const MaxLaw& law);

// Empirical W1 against the Gumbel law: the exact piecewise integral of
// |F_emp - Lambda| (the chosen estimator), using int Lambda = E1(e^{-x}).
double empirical_w1(std::span<const double> sorted_samples);

struct BootstrapResult {
    double estimate;  // W1 of the original sample
    double se;        // bootstrap standard error
    int resamples;
};

BootstrapResult empirical_w1_bootstrap(std::span<const double> sorted_samples,
                                       int resamples, std::uint64_t seed, int jobs = 1);

}  // namespace gumbelrates
