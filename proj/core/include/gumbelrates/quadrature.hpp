#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gumbelrates {

// Tolerances and truncation window shared by every metric integral.
struct QuadratureConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
    double trunc_lo = -5.0;
    double trunc_hi = 40.0;

    // Truncation wide enough that the tail mass of both the exact law and
    // the Gumbel law stays below abs_tol for effective sample size n
    // (defined with the law machinery in exact_law.cpp).
    static QuadratureConfig for_n(double n);

    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;      // estimated absolute error
    std::int64_t nodes = 0;  // integrand evaluations
};

// Thrown when the subdivision budget is exhausted before reaching tolerance.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double estimate, std::int64_t nodes)
        : std::runtime_error(what), estimate_(estimate), nodes_(nodes) {}
    double estimate() const noexcept { return estimate_; }
    std::int64_t nodes() const noexcept { return nodes_; }

private:
    double estimate_;
    std::int64_t nodes_;
};

using Integrand = std::function<double(double)>;

// Adaptive Gauss-Kronrod (G7,K15) over [a, b]. Worst panel is split first;
// stops once the summed error estimate is below max(abs_tol, rel_tol*|I|).
QuadratureResult integrate(const Integrand& f, double a, double b,
                           double abs_tol, double rel_tol, int max_subdivisions);

// Same, but the initial panels are split at the given interior breakpoints
// (integrand kinks, known concentration scales).
QuadratureResult integrate_segmented(const Integrand& f, double a, double b,
                                     const std::vector<double>& breakpoints,
                                     double abs_tol, double rel_tol, int max_subdivisions);

inline QuadratureResult integrate(const Integrand& f, double a, double b,
                                  const QuadratureConfig& cfg) {
    return integrate(f, a, b, cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions);
}

}  // namespace gumbelrates
