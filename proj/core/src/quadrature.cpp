#include "gumbelrates/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace gumbelrates {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
    double a, b;
    double value;
    double error;
    std::uint64_t id;  // deterministic tie-break
};

struct PanelLess {
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.error != y.error) return x.error < y.error;
        return x.id > y.id;
    }
};

// One G7/K15 evaluation; error estimate follows the QUADPACK heuristic.
Panel eval_panel(const Integrand& f, double a, double b, std::uint64_t id) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fc = f(center);
    double result_gauss = kWg[3] * fc;
    double result_kronrod = kWgk[7] * fc;
    double resabs = kWgk[7] * std::fabs(fc);

    double fv[7][2];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        fv[j][0] = f(center - dx);
        fv[j][1] = f(center + dx);
        const double sum = fv[j][0] + fv[j][1];
        result_kronrod += kWgk[j] * sum;
        resabs += kWgk[j] * (std::fabs(fv[j][0]) + std::fabs(fv[j][1]));
        if (j % 2 == 1) result_gauss += kWg[j / 2] * sum;
    }

    const double mean = 0.5 * result_kronrod;
    double resasc = kWgk[7] * std::fabs(fc - mean);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::fabs(fv[j][0] - mean) + std::fabs(fv[j][1] - mean));

    const double value = result_kronrod * half;
    resabs *= std::fabs(half);
    resasc *= std::fabs(half);

    double err = std::fabs((result_kronrod - result_gauss) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / eps50)
        err = std::max(err, eps50 * resabs);

    if (!std::isfinite(value))
        throw QuadratureError("integrand produced a non-finite value", err, 15);
    return Panel{a, b, value, err, id};
}

QuadratureResult run_adaptive(const Integrand& f, std::vector<Panel> initial,
                              double abs_tol, double rel_tol, int max_subdivisions) {
    std::priority_queue<Panel, std::vector<Panel>, PanelLess> heap;
    std::vector<Panel> frozen;  // panels too narrow to split further
    double total = 0.0, total_err = 0.0;
    std::int64_t nodes = 15 * static_cast<std::int64_t>(initial.size());
    std::uint64_t next_id = initial.size();

    for (const Panel& p : initial) {
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }

    int splits = 0;
    while (total_err > std::max(abs_tol, rel_tol * std::fabs(total))) {
        if (splits >= max_subdivisions)
            throw QuadratureError("quadrature did not converge within the subdivision budget",
                                  total_err, nodes);
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            // Not splittable in double precision; accept its estimate as is.
            frozen.push_back(worst);
            if (heap.empty()) break;
            continue;
        }
        Panel left = eval_panel(f, worst.a, mid, next_id++);
        Panel right = eval_panel(f, mid, worst.b, next_id++);
        nodes += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++splits;
    }

    // Recompute the sums in interval order for a deterministic, drift-free
    // result.
    std::vector<Panel> panels = std::move(frozen);
    panels.reserve(panels.size() + heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    double value = 0.0, err = 0.0;
    for (const Panel& p : panels) {
        value += p.value;
        err += p.error;
    }
    return QuadratureResult{value, err, nodes};
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw std::domain_error("quadrature tolerances must be positive");
    if (max_subdivisions < 1)
        throw std::domain_error("max_subdivisions must be at least 1");
    if (!(trunc_lo < trunc_hi))
        throw std::domain_error("truncation window must satisfy trunc_lo < trunc_hi");
}

QuadratureResult integrate(const Integrand& f, double a, double b,
                           double abs_tol, double rel_tol, int max_subdivisions) {
    return integrate_segmented(f, a, b, {}, abs_tol, rel_tol, max_subdivisions);
}

QuadratureResult integrate_segmented(const Integrand& f, double a, double b,
                                     const std::vector<double>& breakpoints,
                                     double abs_tol, double rel_tol, int max_subdivisions) {
    if (!(a < b)) throw std::domain_error("integration bounds must satisfy a < b");
    std::vector<double> pts;
    pts.push_back(a);
    for (double x : breakpoints)
        if (x > a && x < b) pts.push_back(x);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    std::vector<Panel> initial;
    initial.reserve(pts.size() - 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        initial.push_back(eval_panel(f, pts[i], pts[i + 1], i));
    return run_adaptive(f, std::move(initial), abs_tol, rel_tol, max_subdivisions);
}

}  // namespace gumbelrates
