#include "gumbelrates/optimize.hpp"

#include <cmath>
#include <stdexcept>

namespace gumbelrates {

namespace {
constexpr double kInvPhi = 0.6180339887498948482;  // 1/phi
}

MaxSearchResult golden_section_max(const std::function<double(double)>& f,
                                   double a, double b, double xtol) {
    if (!(a < b)) throw std::domain_error("golden_section_max: need a < b");
    std::int64_t evals = 0;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    evals += 2;
    while (b - a > xtol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        }
        ++evals;
        if (evals > 500) break;  // xtol below representable spacing
    }
    const double xm = 0.5 * (a + b);
    return MaxSearchResult{xm, f(xm), evals + 1};
}

MaxSearchResult grid_golden_max(const std::function<double(double)>& f,
                                double lo, double hi, int grid_points, double xtol) {
    if (!(lo < hi)) throw std::domain_error("grid_golden_max: need lo < hi");
    if (grid_points < 3) throw std::domain_error("grid_golden_max: need >= 3 grid points");
    const double h = (hi - lo) / (grid_points - 1);
    double best_x = lo, best_f = f(lo);
    int best_i = 0;
    for (int i = 1; i < grid_points; ++i) {
        const double x = lo + i * h;
        const double fx = f(x);
        if (fx > best_f) {
            best_f = fx;
            best_x = x;
            best_i = i;
        }
    }
    const double a = (best_i == 0) ? lo : lo + (best_i - 1) * h;
    const double b = (best_i == grid_points - 1) ? hi : lo + (best_i + 1) * h;
    MaxSearchResult r = golden_section_max(f, a, b, xtol);
    r.evals += grid_points;
    if (best_f > r.value) {
        r.value = best_f;
        r.argmax = best_x;
    }
    return r;
}

std::vector<double> find_sign_changes(const std::function<double(double)>& f,
                                      double lo, double hi, int grid_points,
                                      int max_roots) {
    if (!(lo < hi)) throw std::domain_error("find_sign_changes: need lo < hi");
    std::vector<double> roots;
    const double h = (hi - lo) / (grid_points - 1);
    double xp = lo, fp = f(xp);
    for (int i = 1; i < grid_points && static_cast<int>(roots.size()) < max_roots; ++i) {
        double x = lo + i * h;
        double fx = f(x);
        if (fp == 0.0) {
            roots.push_back(xp);
        } else if (std::signbit(fp) != std::signbit(fx) && std::isfinite(fp) && std::isfinite(fx)) {
            double a = xp, b = x, fa = fp;
            for (int it = 0; it < 200 && b - a > 1e-14 * (1.0 + std::fabs(a)); ++it) {
                const double m = 0.5 * (a + b);
                const double fm = f(m);
                if (fm == 0.0) {
                    a = b = m;
                    break;
                }
                if (std::signbit(fa) != std::signbit(fm)) {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        xp = x;
        fp = fx;
    }
    return roots;
}

}  // namespace gumbelrates
