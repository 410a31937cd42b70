#include "gumbelrates/rates.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "gumbelrates/exact_law.hpp"
#include "gumbelrates/optimize.hpp"
#include "gumbelrates/special_fn.hpp"

namespace gumbelrates {

namespace {

constexpr double kDefaultTol = 1e-11;
constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

double gumbel_weight(double x) { return std::exp(-x - std::exp(-x)); }

// sup over R located by a 4001-point grid on [-10, 15] plus golden section;
// the grid certifies unimodality around the maximizer via second differences.
double sup_by_grid(const std::function<double(double)>& f) {
    const double lo = -10.0, hi = 15.0;
    const int pts = 4001;
    const MaxSearchResult r = grid_golden_max(f, lo, hi, pts, 1e-10);
    const double h = (hi - lo) / (pts - 1);
    const double second_diff = f(r.argmax - h) - 2.0 * f(r.argmax) + f(r.argmax + h);
    if (!(second_diff < 0.0))
        throw std::runtime_error("compute_constant: maximizer bracket certification failed");
    return r.value;
}

double integral_d3(double abs_tol) {
    auto inner = [](double x) {
        return -x * x + std::exp(-x) * (x * x + 2.0 * x + 2.0);
    };
    const std::vector<double> kinks = find_sign_changes(inner, -8.0, 30.0, 2001);
    auto f = [&inner](double x) { return gumbel_weight(x) * std::fabs(inner(x)); };
    return integrate_segmented(f, -8.0, 60.0, kinks, abs_tol, 1e-12, 4000).value;
}

double integral_d5(double abs_tol) {
    auto f = [](double x) {
        const double q = std::exp(-x) * x * x - 2.0 * x;
        return gumbel_weight(x) * q * q;
    };
    return integrate(f, -6.0, 80.0, abs_tol, 1e-12, 4000).value;
}

}  // namespace

const char* rate_constant_name(RateConstant c) {
    switch (c) {
        case RateConstant::d1: return "d1";
        case RateConstant::d2: return "d2";
        case RateConstant::d3: return "d3";
        case RateConstant::d4: return "d4";
        case RateConstant::d5: return "d5";
    }
    return "?";
}

double d4_reduced_route(double abs_tol) {
    return gumbel_weighted_integral({0, {8.0, 0.0, -4.0, -16.0, 5.0}}, abs_tol);
}

double d4_four_term_route(double abs_tol) {
    double v = gumbel_weighted_integral({0, {0.0, 0.0, 0.0, 0.0, 2.0}}, abs_tol);
    v += gumbel_weighted_integral({1, {0.0, 0.0, -4.0, -4.0, -1.0}}, abs_tol);
    v += gumbel_weighted_integral({2, {-24.0, -24.0, -12.0, -4.0, -1.0}}, abs_tol);
    v += gumbel_weighted_integral({3, {4.0, 8.0, 8.0, 4.0, 1.0}}, abs_tol);
    return v;
}

double compute_constant(RateConstant c, double abs_tol) {
    auto eval = [&](RateConstant which, double tol) -> double {
        switch (which) {
            case RateConstant::d1:
                return sup_by_grid([](double x) {
                    return (x * x + 2.0 * x + 2.0) * gumbel_weight(x);
                });
            case RateConstant::d2:
                return sup_by_grid([](double x) { return std::fabs(x) * gumbel_weight(x); });
            case RateConstant::d3: return integral_d3(tol);
            case RateConstant::d4: return d4_reduced_route(tol);
            case RateConstant::d5: return integral_d5(tol);
        }
        throw std::invalid_argument("compute_constant: unknown constant");
    };
    if (abs_tol == kDefaultTol) {
        static std::map<RateConstant, double> cache;
        static std::mutex mu;
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(c);
        if (it == cache.end()) it = cache.emplace(c, eval(c, kDefaultTol)).first;
        return it->second;
    }
    return eval(c, abs_tol);
}

double w1_hall_constant() {
    const double g = euler_gamma();
    return (6.0 * (g * g + 2.0 * g + 2.0) + kPi2) / 24.0;
}

double w1_second_constant() { return euler_gamma() - 2.0 * exp_integral_at_minus_one(); }

RatePrediction predict(Metric m, Kind k, double n) {
    if (!(n >= 16.0 && n <= 1e300))
        throw std::domain_error("predict: n must lie in [16, 1e300]");
    const double L = std::log(n);
    const double ll = std::log(L);
    RatePrediction p{m, k, n, 0.0, true, ""};
    switch (k) {
        case Kind::Classical:
            switch (m) {
                case Metric::BerryEsseen:
                    p.value = ll * ll / (16.0 * std::numbers::e * L);
                    break;
                case Metric::W1: p.value = ll * ll / (16.0 * L); break;
                case Metric::TV: p.value = ll * ll / (8.0 * std::numbers::e * L); break;
                case Metric::KL: p.value = std::pow(ll, 4) / (512.0 * L * L); break;
                case Metric::Fisher: p.value = std::pow(ll, 4) / (1024.0 * L * L); break;
            }
            break;
        case Kind::HallRoot:
            switch (m) {
                case Metric::BerryEsseen:
                    p.value = compute_constant(RateConstant::d1) / (4.0 * L);
                    p.constant_name = "d1";
                    break;
                case Metric::W1:
                    p.value = w1_hall_constant() / L;
                    p.constant_name = "w1-hall";
                    break;
                case Metric::TV:
                    p.value = compute_constant(RateConstant::d3) / (4.0 * L);
                    p.constant_name = "d3";
                    break;
                case Metric::KL:
                    p.value = compute_constant(RateConstant::d4) / (32.0 * L * L);
                    p.constant_name = "d4";
                    break;
                case Metric::Fisher:
                    p.value = compute_constant(RateConstant::d5) / (64.0 * L * L);
                    p.constant_name = "d5";
                    break;
            }
            break;
        case Kind::SecondOrder:
            switch (m) {
                case Metric::BerryEsseen:
                    p.value = compute_constant(RateConstant::d2) * ll / (4.0 * L);
                    p.constant_name = "d2";
                    break;
                case Metric::W1:
                    p.value = w1_second_constant() * ll / (4.0 * L);
                    p.constant_name = "w1-second";
                    break;
                case Metric::TV:
                    p.value = ll / L;  // d7 (llog n)/(log n): constant not given
                    p.closed_form = false;
                    p.constant_name = "d7";
                    break;
                case Metric::KL:
                    p.value = ll * ll / (L * L);
                    p.closed_form = false;
                    p.constant_name = "d8";
                    break;
                case Metric::Fisher:
                    p.value = ll * ll / (L * L);
                    p.closed_form = false;
                    p.constant_name = "d9";
                    break;
            }
            break;
    }
    return p;
}

namespace {

// int lambda |e^{-x}(t^2+2t+2) - t^2| dx (Classical TV bracket).
double classical_tv_bracket_integral(double c, double abs_tol) {
    auto inner = [c](double x) {
        const double t = x - c;
        return std::exp(-x) * (t * t + 2.0 * t + 2.0) - t * t;
    };
    const std::vector<double> kinks = find_sign_changes(inner, -8.0, 40.0, 2001);
    auto f = [&inner](double x) { return gumbel_weight(x) * std::fabs(inner(x)); };
    return integrate_segmented(f, -8.0, 80.0, kinks, abs_tol, 1e-12, 4000).value;
}

// int lambda |x^2+2x+2-2cx| dx (SecondOrder W1 bracket).
double second_w1_bracket_integral(double c, double abs_tol) {
    auto inner = [c](double x) { return x * x + 2.0 * x + 2.0 - 2.0 * c * x; };
    const std::vector<double> kinks = find_sign_changes(inner, -8.0, 60.0, 2001);
    auto f = [&inner](double x) { return gumbel_weight(x) * std::fabs(inner(x)); };
    return integrate_segmented(f, -8.0, 80.0, kinks, abs_tol, 1e-12, 4000).value;
}

// KL divergence of the Refined density expansion from the Gumbel law:
// int lambda * bracket * log(bracket). No exact quantities enter; only the
// expansion bracket itself.
double classical_kl_second_order(const NormingScheme& s, double abs_tol) {
    const double L = s.log_n;
    const double c = *s.c;
    auto f = [&](double x) {
        const double t = x - c;
        const double t2 = t * t;
        const double ex = std::exp(-x);
        const double B = t2 + 2.0 * t + 2.0;
        const double bracket = 1.0 + ex * B / (4.0 * L) - t2 / (4.0 * L) +
                               refined_density_bracket(s, x) / (32.0 * L * L);
        if (bracket <= 0.0) return 0.0;  // expansion left its domain; x log x -> 0
        return gumbel_weight(x) * bracket * std::log(bracket);
    };
    return integrate(f, -8.0, 60.0, abs_tol, 1e-12, 4000).value;
}

// (1/(64 L^2)) int (t^2 e^{-x} + 2t)^2 lambda (1 + second-order bracket) dx.
double classical_fisher_second_order(const NormingScheme& s, double abs_tol) {
    const double L = s.log_n;
    const double c = *s.c;
    auto f = [&](double x) {
        const double t = x - c;
        const double t2 = t * t;
        const double ex = std::exp(-x);
        const double B = t2 + 2.0 * t + 2.0;
        const double score = t2 * ex + 2.0 * t;
        const double density = gumbel_weight(x) * (1.0 + ex * B / (4.0 * L) - t2 / (4.0 * L));
        return score * score * density;
    };
    return integrate(f, -6.0, 80.0, abs_tol, 1e-12, 4000).value / (64.0 * L * L);
}

}  // namespace

std::optional<double> second_order_prediction(Metric m, Kind k, double n) {
    if (!(n >= 16.0 && n <= 1e300))
        throw std::domain_error("second_order_prediction: n must lie in [16, 1e300]");
    const NormingScheme s = make_scheme(k, n);
    const double L = s.log_n;
    const double tol = 1e-12;
    switch (k) {
        case Kind::Classical: {
            const double c = *s.c;
            switch (m) {
                case Metric::BerryEsseen: {
                    auto f = [c, L](double x) {
                        const double t = x - c;
                        return GumbelLaw::cdf(x) * std::exp(-x) *
                               (t * t + 2.0 * t + 2.0) / (4.0 * L);
                    };
                    return grid_golden_max(f, -10.0, 20.0, 2001, 1e-10).value;
                }
                case Metric::W1: {
                    const double g = euler_gamma();
                    return (c * c - 2.0 * c * (g + 1.0) +
                            (g * g + kPi2 / 6.0 + 2.0 * g + 2.0)) /
                           (4.0 * L);
                }
                case Metric::TV:
                    return classical_tv_bracket_integral(c, tol) / (4.0 * L);
                case Metric::KL: return classical_kl_second_order(s, tol);
                case Metric::Fisher: return classical_fisher_second_order(s, tol);
            }
            break;
        }
        case Kind::HallRoot: {
            const double b2 = s.b * s.b;
            const double g = euler_gamma();
            switch (m) {
                case Metric::BerryEsseen:
                    return compute_constant(RateConstant::d1) / (2.0 * b2);
                case Metric::W1:
                    return (g * g + 2.0 * g + 2.0 + kPi2 / 6.0) / (2.0 * b2);
                case Metric::TV:
                    return compute_constant(RateConstant::d3) / (2.0 * b2);
                case Metric::KL:
                    return compute_constant(RateConstant::d4) / (8.0 * b2 * b2) + 1.0 / n;
                case Metric::Fisher:
                    return compute_constant(RateConstant::d5) / (16.0 * b2 * b2);
            }
            break;
        }
        case Kind::SecondOrder: {
            const double c = *s.c;
            switch (m) {
                case Metric::BerryEsseen: {
                    auto f = [c, L](double x) {
                        return GumbelLaw::cdf(x) * std::exp(-x) *
                               std::fabs(x * x + 2.0 * x + 2.0 - 2.0 * c * x) / (4.0 * L);
                    };
                    return grid_golden_max(f, -10.0, 20.0, 2001, 1e-10).value;
                }
                case Metric::W1:
                    return second_w1_bracket_integral(c, tol) / (4.0 * L);
                default: return std::nullopt;  // d7-d9 closed forms not available
            }
        }
    }
    return std::nullopt;
}

std::vector<RatioRow> ratio_table(Metric m, Kind k, const std::vector<double>& n_grid,
                                  const QuadratureConfig& cfg) {
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        if (!(n_grid[i] >= 16.0))
            throw std::domain_error("ratio_table: grid entries must be >= 16");
        if (i > 0 && !(n_grid[i] > n_grid[i - 1]))
            throw std::domain_error("ratio_table: grid must be sorted ascending");
    }
    std::vector<RatioRow> rows;
    rows.reserve(n_grid.size());
    for (double n : n_grid) {
        QuadratureConfig c = QuadratureConfig::for_n(n);
        c.abs_tol = cfg.abs_tol;
        c.rel_tol = cfg.rel_tol;
        c.max_subdivisions = cfg.max_subdivisions;
        const MaxLaw law(make_scheme(k, n));
        const MetricResult exact = compute_metric(m, law, c);
        const RatePrediction lead = predict(m, k, n);
        RatioRow row;
        row.n = n;
        row.exact = exact.value;
        row.err_estimate = exact.err_estimate;
        row.nodes = exact.nodes;
        row.argmax = exact.argmax;
        row.leading = lead.value;
        row.leading_closed_form = lead.closed_form;
        row.ratio_leading = exact.value / lead.value;
        row.second = second_order_prediction(m, k, n);
        if (row.second)
            row.ratio_second = exact.value / *row.second;
        rows.push_back(row);
    }
    return rows;
}

MeanArbitration arbitrate_mean_coefficient(const std::vector<double>& n_grid) {
    const double g = euler_gamma();
    double sxx = 0.0, sxy = 0.0;
    std::vector<double> xs, ys, zs;
    for (double n : n_grid) {
        const double L = std::log(n);
        const double c = 0.5 * std::log(4.0 * std::numbers::pi * L);
        const MaxLaw law(make_scheme(Kind::Classical, n));
        QuadratureConfig cfg = QuadratureConfig::for_n(n);
        cfg.abs_tol = 1e-13;
        const double mean = mean_of(law, cfg);
        const double y = mean - (g - c * c / (4.0 * L));
        const double x = c / (2.0 * L);
        xs.push_back(x);
        ys.push_back(y);
        zs.push_back(1.0 / (4.0 * L));
        sxx += x * x;
        sxy += x * y;
    }
    MeanArbitration a;
    a.fitted_coefficient = sxy / sxx;
    {
        // Two-parameter least squares y = beta x + K z.
        double xx = 0, xz = 0, zz = 0, xy = 0, zy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            xx += xs[i] * xs[i];
            xz += xs[i] * zs[i];
            zz += zs[i] * zs[i];
            xy += xs[i] * ys[i];
            zy += zs[i] * ys[i];
        }
        const double det = xx * zz - xz * xz;
        a.two_param_coefficient = (xy * zz - zy * xz) / det;
        a.two_param_constant = (xx * zy - xz * xy) / det;
    }
    auto residual = [&](double beta) {
        double s = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double r = ys[i] - beta * xs[i];
            s += r * r;
        }
        return std::sqrt(s);
    };
    a.residual_gamma_plus_one = residual(g + 1.0);
    a.residual_gamma = residual(g);
    if (a.residual_gamma_plus_one <= a.residual_gamma) {
        a.winner = MeanCoefficient::GammaPlusOne;
        a.separation = a.residual_gamma / a.residual_gamma_plus_one;
    } else {
        a.winner = MeanCoefficient::Gamma;
        a.separation = a.residual_gamma_plus_one / a.residual_gamma;
    }
    return a;
}

MeanArbitration arbitrate_mean_coefficient() {
    std::vector<double> grid;
    for (int k = 0; k <= 8; ++k) grid.push_back(std::pow(10.0, 8.0 + 2.0 * k));
    return arbitrate_mean_coefficient(grid);
}

}  // namespace gumbelrates
