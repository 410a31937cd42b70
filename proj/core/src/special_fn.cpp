#include "gumbelrates/special_fn.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "gumbelrates/quadrature.hpp"

namespace gumbelrates {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;
// Low part of 1/sqrt(2): the true value minus the rounded double above.
constexpr double kInvSqrt2Lo = -4.8336466567264566e-17;
constexpr double kSqrt2Pi = 2.5066282746310005024;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;
constexpr double kTwoOverSqrtPi = 1.1283791670955125739;

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw std::domain_error(std::string(what) + ": non-finite input");
}

// Laplace continued fraction for sqrt(pi) e^{x^2} erfc(x),
//   1/(x + (1/2)/(x + (2/2)/(x + (3/2)/(x + ...)))),
// evaluated by modified Lentz. Rapidly convergent for x >= 4.
double erfcx_cf(double x) {
    const double tiny = 1e-300;
    double f = x, c = x, d = 0.0;
    for (int k = 1; k <= 300; ++k) {
        const double a = 0.5 * k;
        d = x + a * d;
        if (d == 0.0) d = tiny;
        c = x + a / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::fabs(delta - 1.0) < 1e-17) break;
    }
    return std::numbers::inv_sqrtpi / f;
}

// Polynomial evaluation, ascending coefficients.
double horner(const std::vector<double>& coeffs, double x) {
    double r = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) r = r * x + coeffs[i];
    return r;
}

// Initial guess for the normal quantile: Wichura's PPND16 rational
// approximation (ALGORITHM AS241), accurate to ~1e-16 on its own.
double ppnd16(double p) {
    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) * r +
                    4.5921953931549871457e+4) * r +
                   1.3731693765509461125e+4) * r +
                  1.9715909503065514427e+3) * r +
                 1.3314166789178437745e+2) * r +
                3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) * r +
                    2.1213794301586595867e+4) * r +
                   5.3941960214247511077e+3) * r +
                  6.8718700749205790830e+2) * r +
                 4.2313330701600911252e+1) * r +
                1.0);
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                    2.41780725177450611770e-1) * r +
                   1.27045825245236838258e+0) * r +
                  3.64784832476320460504e+0) * r +
                 5.76949722146069140550e+0) * r +
                4.63033784615654529590e+0) * r +
               1.42343711074968357734e+0) /
              (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                    1.51986665636164571966e-2) * r +
                   1.48103976427480074590e-1) * r +
                  6.89767334985100004550e-1) * r +
                 1.67638483018380384940e+0) * r +
                2.05319162663775882187e+0) * r +
               1.0);
    } else {
        r -= 5.0;
        val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                    1.24266094738807843860e-3) * r +
                   2.65321895265761230930e-2) * r +
                  2.96560571828504891230e-1) * r +
                 1.78482653991729133580e+0) * r +
                5.46378491116411436990e+0) * r +
               6.65790464350110377720e+0) /
              (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                    1.84631831751005468180e-5) * r +
                   7.86869131145613259100e-4) * r +
                  1.48753612908506148525e-2) * r +
                 1.36929880922735805310e-1) * r +
                5.99832206555887937690e-1) * r +
               1.0);
    }
    return (q < 0.0) ? -val : val;
}

}  // namespace

double erfcx(double x) {
    if (std::isnan(x)) throw std::domain_error("erfcx: non-finite input");
    if (x < 0.0) {
        // erfc(-x) = 2 - erfc(x); overflows for x below about -26.6.
        return 2.0 * std::exp(x * x) - erfcx(-x);
    }
    if (x < 4.0) return std::exp(x * x) * std::erfc(x);
    return erfcx_cf(x);
}

double normal_pdf(double z) {
    require_finite(z, "normal_pdf");
    return std::exp(-0.5 * z * z) / kSqrt2Pi;
}

double log_normal_pdf(double z) {
    require_finite(z, "log_normal_pdf");
    return -0.5 * z * z - kLogSqrt2Pi;
}

double normal_tail(double z) {
    require_finite(z, "normal_tail");
    if (z < 0.0) return 1.0 - normal_tail(-z);
    if (z <= 36.0) {
        // Compensated argument: erfc is steep (d log erfc ~ -2h), so the
        // rounding of z/sqrt(2) alone would cost ~2 h eps relative error.
        const double h = z * kInvSqrt2;
        const double l = std::fma(z, kInvSqrt2, -h) + z * kInvSqrt2Lo;
        return 0.5 * (std::erfc(h) - kTwoOverSqrtPi * std::exp(-h * h) * l);
    }
    // Scaled-erfcx route with a compensated z^2/2 so the exponential keeps
    // full relative precision down to the underflow threshold (~38.6).
    const double zz = z * z;
    const double zz_lo = std::fma(z, z, -zz);
    const double e = std::exp(-0.5 * zz) * (1.0 - 0.5 * zz_lo);
    return 0.5 * erfcx(z * kInvSqrt2) * e;
}

double normal_cdf(double z) {
    require_finite(z, "normal_cdf");
    return normal_tail(-z);
}

double log_normal_tail(double z) {
    require_finite(z, "log_normal_tail");
    if (z < 0.0) return std::log1p(-normal_tail(z));
    return std::log(0.5 * erfcx(z * kInvSqrt2)) - 0.5 * z * z;
}

double log_normal_cdf(double z) {
    require_finite(z, "log_normal_cdf");
    if (z >= 0.0) return std::log1p(-normal_tail(z));
    return log_normal_tail(-z);
}

double mills_ratio(double z) {
    require_finite(z, "mills_ratio");
    if (z >= 0.0) return 0.5 * erfcx(z * kInvSqrt2) * kSqrt2Pi;
    return normal_tail(z) / normal_pdf(z);
}

double normal_quantile_complement(double q) {
    if (!(q > 0.0 && q < 1.0)) throw std::domain_error("normal_quantile_complement: q must lie in (0,1)");
    if (q > 0.5) return -normal_quantile_complement(1.0 - q);  // 1-q is exact here
    double z = -ppnd16(q);
    const double lq = std::log(q);
    // Newton on log Psi(z) = log q; the derivative is -1/mills_ratio(z).
    for (int it = 0; it < 4; ++it) {
        const double step = (log_normal_tail(z) - lq) * mills_ratio(z);
        z += step;
        if (std::fabs(step) <= 1e-16 * (1.0 + std::fabs(z))) break;
    }
    return z;
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile: p must lie in (0,1)");
    return -normal_quantile_complement(p);
}

double euler_gamma() {
    static const double g = gumbel_weighted_integral({0, {0.0, 1.0}}, 1e-14);
    return g;
}

double expint_e1(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("expint_e1: x must be positive");
    if (x <= 1.0) {
        // E1(x) = -gamma - log x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
        double sum = 0.0, term = 1.0;
        for (int k = 1; k <= 40; ++k) {
            term *= x / k;
            const double add = term / k;
            sum += (k % 2 == 1) ? add : -add;
            if (add < 1e-18 * (1.0 + std::fabs(sum))) break;
        }
        return -euler_gamma() - std::log(x) + sum;
    }
    // Even continued fraction e^{-x}/(x+1 - 1/(x+3 - 4/(x+5 - 9/(...)))).
    const double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 300; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const double delta = c * d;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-17) break;
    }
    return h * std::exp(-x);
}

double exp_integral_at_minus_one() {
    static const double v = -expint_e1(1.0);
    return v;
}

double gumbel_weighted_integral(const GumbelWeightedIntegrand& g, double abs_tol) {
    if (g.k < 0 || g.k > 64)
        throw std::domain_error("gumbel_weighted_integral: k out of range");
    if (g.poly.empty() || g.poly.size() > 9)
        throw std::domain_error("gumbel_weighted_integral: polynomial degree must be <= 8");
    for (double c : g.poly) require_finite(c, "gumbel_weighted_integral");
    if (!(abs_tol > 0.0)) throw std::domain_error("gumbel_weighted_integral: abs_tol must be positive");

    const int k = g.k;
    const auto& poly = g.poly;
    auto f = [k, &poly](double u) {
        return std::pow(u, k) * std::exp(-u) * horner(poly, -std::log(u));
    };
    // u^k e^{-u} decays fast; the polynomial factor grows only like log^8 u.
    const double upper = 90.0 + 15.0 * k;
    const QuadratureResult left = integrate(f, 0.0, 1.0, abs_tol * 0.5, 1e-13, 4000);
    const QuadratureResult right = integrate(f, 1.0, upper, abs_tol * 0.5, 1e-13, 4000);
    return left.value + right.value;
}

}  // namespace gumbelrates
