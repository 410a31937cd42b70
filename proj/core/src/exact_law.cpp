#include "gumbelrates/exact_law.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "gumbelrates/special_fn.hpp"

namespace gumbelrates {

namespace {

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw std::domain_error(std::string(what) + ": non-finite input");
}

}  // namespace

QuadratureConfig QuadratureConfig::for_n(double n) {
    QuadratureConfig cfg;
    const double L = std::log(n);
    cfg.trunc_lo = -std::max(5.0, 2.0 * std::log(std::max(L, 1.001)));
    cfg.trunc_hi = std::max(40.0, 3.0 * std::pow(L, 0.25));
    if (n <= 1000.0) {
        // Below n ~ 300 the exact-law left tail, not the Gumbel one, binds;
        // widen until it sits under tolerance for every scheme.
        const MaxLaw cl(make_scheme(Kind::Classical, n));
        const MaxLaw ha(make_scheme(Kind::HallRoot, n));
        const MaxLaw so(make_scheme(Kind::SecondOrder, n));
        const double target = std::log(1e-14);
        while (cfg.trunc_lo > -40.0 &&
               std::max({cl.log_cdf(cfg.trunc_lo), ha.log_cdf(cfg.trunc_lo),
                         so.log_cdf(cfg.trunc_lo)}) > target)
            cfg.trunc_lo -= 0.5;
    }
    return cfg;
}

double GumbelLaw::cdf(double x) { return std::exp(-std::exp(-x)); }
double GumbelLaw::log_cdf(double x) { return -std::exp(-x); }
double GumbelLaw::pdf(double x) { return std::exp(-x - std::exp(-x)); }
double GumbelLaw::log_pdf(double x) { return -x - std::exp(-x); }

double GumbelLaw::quantile(double u) {
    if (!(u > 0.0 && u < 1.0)) throw std::domain_error("GumbelLaw::quantile: u must lie in (0,1)");
    return -std::log(-std::log(u));
}

double GumbelLaw::mean() { return euler_gamma(); }
double GumbelLaw::variance() { return std::numbers::pi * std::numbers::pi / 6.0; }

MaxLaw::MaxLaw(NormingScheme scheme) : s_(std::move(scheme)) {
    if (s_.kind == Kind::SecondOrder) {
        const double c = *s_.c;
        delta_ = (c * c - 2.0 * c) / (2.0 * s_.a * s_.a * s_.a);
    }
}

double MaxLaw::z_of(double x) const {
    require_finite(x, "MaxLaw::z_of");
    switch (s_.kind) {
        case Kind::Classical: return s_.a + (x - *s_.c) / s_.a;
        case Kind::HallRoot: return s_.b + x / s_.b;
        case Kind::SecondOrder: return s_.a + (x - *s_.c) / s_.a - delta_;
    }
    return 0.0;
}

double MaxLaw::exponent(double x) const {
    const double L = s_.log_n;
    switch (s_.kind) {
        case Kind::Classical: {
            const double t = x - *s_.c;
            return -t * t / (4.0 * L);
        }
        case Kind::HallRoot:
            return -x * x / (2.0 * s_.b * s_.b);
        case Kind::SecondOrder: {
            const double t = x - *s_.c;
            return -t * t / (4.0 * L) + delta_ * (s_.a + t / s_.a) - 0.5 * delta_ * delta_;
        }
    }
    return 0.0;
}

double MaxLaw::exponent_deriv(double x) const {
    const double L = s_.log_n;
    switch (s_.kind) {
        case Kind::Classical: return -(x - *s_.c) / (2.0 * L);
        case Kind::HallRoot: return -x / (s_.b * s_.b);
        case Kind::SecondOrder: return -(x - *s_.c) / (2.0 * L) + delta_ / s_.a;
    }
    return 0.0;
}

double MaxLaw::log_cdf(double x) const {
    require_finite(x, "MaxLaw::log_cdf");
    return s_.n * log_normal_cdf(z_of(x));
}

double MaxLaw::cdf(double x) const { return std::exp(log_cdf(x)); }

double MaxLaw::cdf_minus_gumbel(double x) const {
    const double lf = log_cdf(x);
    const double lg = -std::exp(-x);
    const double d = lf - lg;
    if (!(std::fabs(d) <= 30.0))  // far apart (or both underflowed): no cancellation
        return std::exp(lf) - std::exp(lg);
    return std::exp(lg) * std::expm1(d);
}

double MaxLaw::log_pdf(double x) const {
    require_finite(x, "MaxLaw::log_pdf");
    return -x + exponent(x) + (s_.n - 1.0) * log_normal_cdf(z_of(x));
}

double MaxLaw::pdf(double x) const { return std::exp(log_pdf(x)); }

double MaxLaw::log_ratio(double x) const {
    require_finite(x, "MaxLaw::log_ratio");
    return std::exp(-x) + exponent(x) + (s_.n - 1.0) * log_normal_cdf(z_of(x));
}

double MaxLaw::h_term(double x) const {
    return std::expm1(std::log1p(-1.0 / s_.n) + exponent(x) - log_normal_cdf(z_of(x)));
}

double MaxLaw::h_term_naive(double x) const {
    return (1.0 - 1.0 / s_.n) * std::exp(exponent(x)) / normal_cdf(z_of(x)) - 1.0;
}

double MaxLaw::score_ratio(double x) const {
    require_finite(x, "MaxLaw::score_ratio");
    return h_term(x) * std::exp(-x) + exponent_deriv(x);
}

double MaxLaw::score_ratio_naive(double x) const {
    return h_term_naive(x) * std::exp(-x) + exponent_deriv(x);
}

double expected_log_phi_identity(double n) {
    if (!(n >= 3.0 && n <= 1e300))
        throw std::domain_error("expected_log_phi_identity: n must lie in [3, 1e300]");
    auto f = [n](double u) {
        const double w = std::exp((n - 1.0) * std::log(u));
        return n * w * std::log(u);
    };
    // The mass sits in a 1/n neighbourhood of u = 1; seed the panels there so
    // the first Kronrod pass cannot mistake the spike for zero.
    std::vector<double> splits;
    for (double k : {60.0, 20.0, 5.0, 1.0}) {
        const double u = 1.0 - k / n;
        if (u > 0.0 && u < 1.0) splits.push_back(u);
    }
    return integrate_segmented(f, 0.0, 1.0, splits, 5e-17, 1e-12, 4000).value;
}

double mean_of(const MaxLaw& law, const QuadratureConfig& cfg) {
    return expectation_of(law, [](double x) { return x; }, cfg);
}

double expectation_of(const MaxLaw& law, const Integrand& g, const QuadratureConfig& cfg) {
    cfg.validate();
    auto f = [&](double x) { return g(x) * std::exp(law.log_pdf(x)); };
    return integrate(f, cfg.trunc_lo, cfg.trunc_hi, cfg).value;
}

}  // namespace gumbelrates
