#include "gumbelrates/expansions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "gumbelrates/exact_law.hpp"
#include "gumbelrates/special_fn.hpp"

namespace gumbelrates {

namespace {

void require_in_window(const NormingScheme& s, double x, const char* what) {
    if (!std::isfinite(x)) throw std::domain_error(std::string(what) + ": non-finite x");
    const ExpansionWindow w = window_of(s.n);
    if (!w.contains(x))
        throw std::domain_error(std::string(what) +
                                ": x outside the expansion window [-l1(n), l2(n)]");
}

}  // namespace

ExpansionTerm tail_expansion(const NormingScheme& s, double x) {
    require_in_window(s, x, "tail_expansion");
    const double L = s.log_n;
    const double base = std::exp(-x) / s.n;
    switch (s.kind) {
        case Kind::Classical: {
            const double t = x - *s.c;
            const double t2 = t * t;
            return {base * (1.0 - (t2 + 2.0 * t + 2.0) / (4.0 * L)),
                    base * t2 * t2 / (L * L)};
        }
        case Kind::HallRoot: {
            const double b2 = s.b * s.b;
            return {base * (1.0 - (x * x + 2.0 * x + 2.0) / (2.0 * b2)),
                    base * x * x * x * x / (b2 * b2)};
        }
        case Kind::SecondOrder: {
            const double c = *s.c;
            const double t = x - c;
            const double t2 = t * t;
            return {base * (1.0 + (2.0 * c * x - (x * x + 2.0 * x + 2.0)) / (4.0 * L)),
                    base * t2 * t2 * c * c / (L * L)};
        }
    }
    return {0.0, 0.0};
}

ExpansionTerm cdf_error_expansion(const NormingScheme& s, double x) {
    require_in_window(s, x, "cdf_error_expansion");
    const double L = s.log_n;
    const double base = GumbelLaw::cdf(x) * std::exp(-x);
    switch (s.kind) {
        case Kind::Classical: {
            const double t = x - *s.c;
            const double t2 = t * t;
            const double v = base * (t2 + 2.0 * t + 2.0) / (4.0 * L);
            return {v, std::fabs(v) * t2 * t2 / (L * L)};
        }
        case Kind::HallRoot: {
            const double b2 = s.b * s.b;
            const double v = base * (x * x + 2.0 * x + 2.0) / (2.0 * b2);
            return {v, std::fabs(v) * x * x * x * x / (b2 * b2)};
        }
        case Kind::SecondOrder: {
            const double c = *s.c;
            const double t = x - c;
            const double t2 = t * t;
            const double v = base * (-2.0 * c * x + x * x + 2.0 * x + 2.0) / (4.0 * L);
            return {v, std::fabs(v) * t2 * t2 / (L * L)};
        }
    }
    return {0.0, 0.0};
}

double refined_density_bracket(const NormingScheme& s, double x) {
    if (s.kind != Kind::Classical)
        throw std::invalid_argument("refined_density_bracket: Classical scheme only");
    const double t = x - *s.c;
    const double t2 = t * t, t3 = t2 * t, t4 = t2 * t2;
    const double ex = std::exp(-x);
    const double B = t2 + 2.0 * t + 2.0;
    return t4 - ex * (3.0 * t4 + 8.0 * t3 + 16.0 * t2 + 24.0 * t + 24.0) + ex * ex * B * B;
}

ExpansionTerm pdf_expansion(const NormingScheme& s, double x, PdfOrder order) {
    require_in_window(s, x, "pdf_expansion");
    const double L = s.log_n;
    const double lam = GumbelLaw::pdf(x);
    const double ex = std::exp(-x);

    if (s.kind == Kind::HallRoot) {
        if (order != PdfOrder::Second)
            throw std::invalid_argument("pdf_expansion: HallRoot has the Second order only");
        const double b2 = s.b * s.b;
        const double v = lam * (1.0 - x * x / (2.0 * b2) +
                                ex * (x * x + 2.0 * x + 2.0) / (2.0 * b2));
        return {v, lam * x * x * x * x / (b2 * b2)};
    }
    if (s.kind != Kind::Classical)
        throw std::invalid_argument("pdf_expansion: no density expansion for this scheme");

    const double t = x - *s.c;
    const double t2 = t * t, t4 = t2 * t2;
    const double B = t2 + 2.0 * t + 2.0;
    const double second = 1.0 + ex * B / (4.0 * L) - t2 / (4.0 * L);
    if (order == PdfOrder::Second)
        return {lam * second, lam * t4 / std::pow(L, 1.5)};

    const double refined = second + refined_density_bracket(s, x) / (32.0 * L * L);
    return {lam * refined, lam * t4 * t2 / std::pow(L, 2.25)};
}

MomentPredictions moment_predictions(double n, MeanCoefficient coeff) {
    if (!(n >= 16.0 && n <= 1e300))
        throw std::domain_error("moment_predictions: n must lie in [16, 1e300]");
    const double L = std::log(n);
    const double c = 0.5 * std::log(4.0 * std::numbers::pi * L);
    const double g = euler_gamma();
    const double k = (coeff == MeanCoefficient::GammaPlusOne) ? g + 1.0 : g;
    MomentPredictions mp;
    mp.mean = {g - c * c / (4.0 * L) + k * c / (2.0 * L), 1.0 / L};
    const double c4 = c * c * c * c;
    mp.exp_moment = {1.0 + c4 / (32.0 * L * L), c4 / (32.0 * L * L)};
    return mp;
}

}  // namespace gumbelrates
