#pragma once

#include "gumbelrates/norming.hpp"
#include "gumbelrates/quadrature.hpp"

namespace gumbelrates {

// Standard Gumbel law: CDF exp(-e^{-x}).
struct GumbelLaw {
    static double cdf(double x);
    static double log_cdf(double x);
    static double pdf(double x);
    static double log_pdf(double x);
    static double quantile(double u);  // -log(-log u), u in (0,1)
    static double mean();              // Euler-Mascheroni constant
    static double variance();          // pi^2 / 6
};

// Exact (non-asymptotic) law of the normalized maximum Y_n under a norming
// scheme. Every evaluation goes through n * log Phi(z); nothing is powered
// directly, so the law is stable up to n = 1e300.
class MaxLaw {
public:
    explicit MaxLaw(NormingScheme scheme);

    const NormingScheme& scheme() const { return s_; }

    // Argument of Phi: a + t/a (Classical), b + x/b (HallRoot),
    // a + t/a - delta (SecondOrder).
    double z_of(double x) const;

    double log_cdf(double x) const;  // n log Phi(z)
    double cdf(double x) const;

    // F_n(x) - Lambda(x) evaluated as Lambda * expm1(log F_n + e^{-x}),
    // free of cancellation where the two laws are close.
    double cdf_minus_gumbel(double x) const;

    double log_pdf(double x) const;
    double pdf(double x) const;

    // log(f_n / lambda)
    double log_ratio(double x) const;

    // d/dx log(f_n / lambda), analytic: h_n(x) e^{-x} + E'(x) where
    // h_n = expm1(log((n-1)/n) + E(x) - log Phi(z)).
    double score_ratio(double x) const;

    // h_n via the expm1 route, and via direct subtraction (diagnostics only;
    // the naive form loses all digits once h_n is small).
    double h_term(double x) const;
    double h_term_naive(double x) const;
    double score_ratio_naive(double x) const;

    // Exponent E(x) in f_n(x) = e^{-x + E(x)} Phi^{n-1}(z) and its derivative.
    double exponent(double x) const;
    double exponent_deriv(double x) const;

private:
    NormingScheme s_;
    double delta_ = 0.0;  // SecondOrder centering shift (c^2-2c)/(2a^3)
};

// E log Phi(X_(n)) by quadrature in the substituted variable u = Phi(x):
// n int_0^1 u^{n-1} log u du. Equals -1/n exactly.
double expected_log_phi_identity(double n);

// E[Y_n] by quadrature of x f_n(x) over the truncation window.
double mean_of(const MaxLaw& law, const QuadratureConfig& cfg);

// E[g(Y_n)] by quadrature of g(x) f_n(x) over the truncation window.
double expectation_of(const MaxLaw& law, const Integrand& g, const QuadratureConfig& cfg);

}  // namespace gumbelrates
