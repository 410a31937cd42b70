#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gumbelrates/exact_law.hpp"
#include "gumbelrates/quadrature.hpp"

namespace gumbelrates {

enum class Metric { BerryEsseen, W1, TV, KL, Fisher };

const char* metric_name(Metric m);  // be | w1 | tv | kl | fisher
std::optional<Metric> metric_from_name(const std::string& name);

struct MetricResult {
    Metric metric;
    double value = 0.0;
    double err_estimate = 0.0;
    std::optional<double> argmax;  // BerryEsseen: location of the supremum
    std::int64_t nodes = 0;        // work counter (integrand / cdf evaluations)
};

// sup_x |F_n(x) - Lambda(x)|: 2001-point grid over the truncation window,
// golden-section refinement of the best bracket, analytic tail bounds folded
// into err_estimate.
MetricResult berry_esseen(const MaxLaw& law, const QuadratureConfig& cfg);

// int |F_n - Lambda|, split at the sign changes of F_n - Lambda.
MetricResult w1(const MaxLaw& law, const QuadratureConfig& cfg);

// int |f_n - lambda| (L1 convention, range [0,2]; twice the sup-measure
// form). The integrand kinks are located by bisection and split.
MetricResult tv(const MaxLaw& law, const QuadratureConfig& cfg);

// Natural-log KL divergence. Direct: int f_n log(f_n/lambda).
// Decomposed: E[e^{-Y} + E(Y)] - (n-1)/n via E log Phi(X_(n)) = -1/n.
enum class KlRoute { Direct, Decomposed };

MetricResult kl(const MaxLaw& law, const QuadratureConfig& cfg, KlRoute route);

struct KlBoth {
    MetricResult direct;
    MetricResult decomposed;
    bool consistent;  // routes agree within combined error estimates
};

KlBoth kl_both(const MaxLaw& law, const QuadratureConfig& cfg);

// (1/4) int (d/dx log(f_n/lambda))^2 f_n, analytic score.
MetricResult fisher(const MaxLaw& law, const QuadratureConfig& cfg);

// Dispatcher used by sweeps. KL runs both routes; any route disagreement is
// folded into err_estimate.
MetricResult compute_metric(Metric m, const MaxLaw& law, const QuadratureConfig& cfg);

}  // namespace gumbelrates
