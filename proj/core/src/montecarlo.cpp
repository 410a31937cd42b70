#include "gumbelrates/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>

#include "gumbelrates/special_fn.hpp"

namespace gumbelrates {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void require_sorted(std::span<const double> v, const char* what) {
    if (v.empty()) throw std::invalid_argument(std::string(what) + ": empty sample");
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (!(v[i] <= v[i + 1]))
            throw std::invalid_argument(std::string(what) + ": samples must be sorted ascending");
}

void parallel_chunks(std::uint64_t count, int jobs,
                     const std::function<void(std::uint64_t, std::uint64_t)>& body) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || count < 1024) {
        body(0, count);
        return;
    }
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (count + jobs - 1) / jobs;
    for (int t = 0; t < jobs; ++t) {
        const std::uint64_t lo = t * chunk;
        const std::uint64_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

// Primitive of the Gumbel CDF: d/dx E1(e^{-x}) = Lambda(x).
double gumbel_cdf_primitive(double x) {
    const double u = std::exp(-x);
    if (!std::isfinite(u) || u > 700.0) return 0.0;  // Lambda is flat zero out here
    return expint_e1(u);
}

}  // namespace

std::uint64_t counter_rng(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

double uniform_open01(std::uint64_t seed, std::uint64_t index) {
    return (static_cast<double>(counter_rng(seed, index) >> 11) + 0.5) * 0x1.0p-53;
}

void SimConfig::validate() const {
    if (n < 3) throw std::domain_error("SimConfig: n must be at least 3");
    if (m < 100) throw std::domain_error("SimConfig: m must be at least 100");
}

std::vector<double> sample_max_raw(const SimConfig& cfg, int jobs) {
    cfg.validate();
    std::vector<double> out(cfg.m);
    const double n = static_cast<double>(cfg.n);
    parallel_chunks(cfg.m, jobs, [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) {
            const double u = uniform_open01(cfg.seed, i);
            // P(X_(n) <= x) = u  <=>  Psi(x) = -expm1(log u / n)
            double p = -std::expm1(std::log(u) / n);
            p = std::clamp(p, 1e-315, 1.0 - 1e-16);
            out[i] = normal_quantile_complement(p);
        }
    });
    return out;
}

std::vector<double> sample_max(const SimConfig& cfg, const NormingScheme& scheme,
                               int jobs) {
    std::vector<double> out = sample_max_raw(cfg, jobs);
    const double a = scheme.a, b = scheme.b;
    for (double& x : out) x = a * (x - b);
    return out;
}

double empirical_ks(std::span<const double> sorted_samples, ReferenceLaw ref,
                    const MaxLaw& law) {
    require_sorted(sorted_samples, "empirical_ks");
    const double m = static_cast<double>(sorted_samples.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < sorted_samples.size(); ++i) {
        const double F = (ref == ReferenceLaw::Gumbel) ? GumbelLaw::cdf(sorted_samples[i])
                                                       : law.cdf(sorted_samples[i]);
        ks = std::max(ks, (i + 1) / m - F);
        ks = std::max(ks, F - i / m);
    }
    return ks;
}

namespace {

// int over [a, b] of |u - Lambda(x)| dx given the primitives A = E1(e^{-.}).
double segment_abs_gap(double a, double b, double Aa, double Ab, double u,
                       double xi, double Axi) {
    if (b <= a) return 0.0;
    auto piece = [u](double p, double q, double Ap, double Aq, bool emp_above) {
        const double v = u * (q - p) - (Aq - Ap);
        return emp_above ? v : -v;
    };
    if (xi <= a) return piece(a, b, Aa, Ab, false);  // Lambda >= u on [a,b]
    if (xi >= b) return piece(a, b, Aa, Ab, true);   // Lambda <= u on [a,b]
    return piece(a, xi, Aa, Axi, true) + piece(xi, b, Axi, Ab, false);
}

struct W1Tables {
    std::vector<double> A;         // E1(e^{-x_i}) per sample point
    std::vector<double> xi_level;  // Lambda^{-1}(j/m), j = 1..m-1
    std::vector<double> A_level;   // E1(-log(j/m))
};

W1Tables build_tables(std::span<const double> x, int jobs) {
    const std::size_t m = x.size();
    W1Tables t;
    t.A.resize(m);
    t.xi_level.resize(m);
    t.A_level.resize(m);
    parallel_chunks(m, jobs, [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) {
            t.A[i] = gumbel_cdf_primitive(x[i]);
            if (i >= 1) {
                const double u = static_cast<double>(i) / static_cast<double>(m);
                const double w = -std::log(u);
                t.xi_level[i] = -std::log(w);
                t.A_level[i] = expint_e1(w);
            }
        }
    });
    return t;
}

// W1 of a (possibly weighted) empirical CDF stepping by counts[i]/m at x[i].
double w1_from_counts(std::span<const double> x, const W1Tables& t,
                      const std::vector<std::uint32_t>& counts, std::uint64_t m) {
    const std::size_t sz = x.size();
    std::size_t first = 0;
    while (first < sz && counts[first] == 0) ++first;
    std::size_t last = sz;
    while (last > first && counts[last - 1] == 0) --last;
    if (first == last) return 0.0;

    double total = t.A[first];  // left tail: int_{-inf}^{x_first} Lambda
    std::uint64_t cum = 0;
    for (std::size_t i = first; i + 1 < last; ++i) {
        cum += counts[i];
        if (x[i + 1] <= x[i]) continue;
        if (cum == m) {
            // level 1: int (1 - Lambda) over [x_i, x_{i+1}]
            total += (x[i + 1] - x[i]) - (t.A[i + 1] - t.A[i]);
            continue;
        }
        const std::size_t j = static_cast<std::size_t>(cum);
        total += segment_abs_gap(x[i], x[i + 1], t.A[i], t.A[i + 1],
                                 static_cast<double>(cum) / static_cast<double>(m),
                                 t.xi_level[j], t.A_level[j]);
    }
    // right tail: int_{x_last}^{inf} (1 - Lambda) = gamma - x + E1(e^{-x})
    total += euler_gamma() - x[last - 1] + t.A[last - 1];
    return total;
}

}  // namespace

double empirical_w1(std::span<const double> sorted_samples) {
    require_sorted(sorted_samples, "empirical_w1");
    const std::size_t m = sorted_samples.size();
    const W1Tables t = build_tables(sorted_samples, 1);
    std::vector<std::uint32_t> counts(m, 1);
    return w1_from_counts(sorted_samples, t, counts, m);
}

BootstrapResult empirical_w1_bootstrap(std::span<const double> sorted_samples,
                                       int resamples, std::uint64_t seed, int jobs) {
    require_sorted(sorted_samples, "empirical_w1_bootstrap");
    if (resamples < 2) throw std::domain_error("empirical_w1_bootstrap: need >= 2 resamples");
    const std::size_t m = sorted_samples.size();
    const W1Tables t = build_tables(sorted_samples, jobs);

    std::vector<std::uint32_t> base_counts(m, 1);
    const double estimate = w1_from_counts(sorted_samples, t, base_counts, m);

    std::vector<double> values(resamples);
    const std::uint64_t boot_seed = mix64(seed ^ 0xa02bdbf7bb3c0a7ULL);
    parallel_chunks(resamples, std::max(1, jobs), [&](std::uint64_t lo, std::uint64_t hi) {
        std::vector<std::uint32_t> counts(m);
        for (std::uint64_t r = lo; r < hi; ++r) {
            std::fill(counts.begin(), counts.end(), 0);
            const std::uint64_t rs = counter_rng(boot_seed, r);
            for (std::uint64_t j = 0; j < m; ++j) {
                const std::uint64_t raw = counter_rng(rs, j);
                const std::size_t idx = static_cast<std::size_t>(
                    (static_cast<unsigned __int128>(raw) * m) >> 64);
                ++counts[idx];
            }
            values[r] = w1_from_counts(sorted_samples, t, counts, m);
        }
    });

    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= resamples;
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= (resamples - 1);
    return BootstrapResult{estimate, std::sqrt(var), resamples};
}

}  // namespace gumbelrates
