#pragma once

#include <vector>

namespace gumbelrates {

// Scaled complementary error function exp(x^2) erfc(x). Accurate for all
// x >= 0; for x < 0 it grows like 2 exp(x^2) and overflows below x ~ -26.6.
double erfcx(double x);

double normal_pdf(double z);
double log_normal_pdf(double z);

// Phi(z), relative error <= 1e-15 for |z| <= 8; underflows gracefully in the
// deep lower tail (use log_normal_cdf there).
double normal_cdf(double z);

// Psi(z) = 1 - Phi(z) without cancellation for z > 0.
double normal_tail(double z);

// log Phi(z): log1p(-Psi(z)) for z >= 0, the log-tail route for z < 0.
// Finite down to z ~ -6e7 (no underflow; log Phi(-40) ~ -804.6).
double log_normal_cdf(double z);
double log_normal_tail(double z);

// Mills ratio Psi(z)/phi(z), evaluated without underflow for z >= 0.
double mills_ratio(double z);

// z with Phi(z) = p, p in (0,1). Round-trip |Phi(z) - p| <= 1e-12 max(p,1-p).
double normal_quantile(double p);

// z with Psi(z) = q, q in (0,1). Keeps full relative precision in the upper
// tail (q down to 1e-300); the entry point Monte Carlo sampling relies on.
double normal_quantile_complement(double q);

// Exponential integral E1(x) = int_x^inf e^-t / t dt, x > 0.
double expint_e1(double x);

// Ei(-1) = -E1(1), absolute error below 1e-13.
double exp_integral_at_minus_one();

// Euler-Mascheroni constant, computed from scratch as the Gumbel-weighted
// integral of x (no stored literal).
double euler_gamma();

// Integral over R of e^{-(k+1)x - e^{-x}} P(x) dx with P given by ascending
// polynomial coefficients. Evaluated in the u = e^{-x} variable as
// int_0^inf u^k e^{-u} P(-log u) du, split at u = 1.
struct GumbelWeightedIntegrand {
    int k = 0;                 // exponent of the e^{-kx} factor
    std::vector<double> poly;  // P coefficients, ascending degree (degree <= 8)
};

double gumbel_weighted_integral(const GumbelWeightedIntegrand& g, double abs_tol = 1e-13);

}  // namespace gumbelrates
