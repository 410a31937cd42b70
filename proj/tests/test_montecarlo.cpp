#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "gumbelrates/exact_law.hpp"
#include "gumbelrates/metrics.hpp"
#include "gumbelrates/montecarlo.hpp"
#include "gumbelrates/special_fn.hpp"
#include "oracles/reference.hpp"

using namespace gumbelrates;

TEST_CASE("same seed gives bit-identical streams, any thread count") {
    const SimConfig cfg{1000, 5000, 12345};
    const std::vector<double> a = sample_max_raw(cfg, 1);
    const std::vector<double> b = sample_max_raw(cfg, 1);
    const std::vector<double> c = sample_max_raw(cfg, 2);
    CHECK(a == b);
    CHECK(a == c);
    const SimConfig cfg2{1000, 5000, 12346};
    CHECK(sample_max_raw(cfg2, 1) != a);
}

TEST_CASE("empirical cdf of X_(3) matches Phi^3 at zero") {
    const SimConfig cfg{3, 1000000, 42};
    const std::vector<double> xs = sample_max_raw(cfg, 2);
    std::size_t count = 0;
    for (double x : xs)
        if (x <= 0.0) ++count;
    const double p_hat = static_cast<double>(count) / xs.size();
    const double p = 0.125;  // Phi(0)^3
    const double se = std::sqrt(p * (1.0 - p) / xs.size());
    CHECK(std::fabs(p_hat - p) <= 3.0 * se);
}

TEST_CASE("inverse-cdf sampler matches Phi^n at the deciles") {
    for (std::uint64_t n : {std::uint64_t{10}, std::uint64_t{1000}, std::uint64_t{1000000}}) {
        const SimConfig cfg{n, 1000000, 7};
        std::vector<double> xs = sample_max_raw(cfg, 2);
        std::sort(xs.begin(), xs.end());
        const MaxLaw law(make_scheme(Kind::Classical, static_cast<double>(n)));
        for (int d = 1; d <= 9; ++d) {
            const double q = d / 10.0;
            // Decile of X_(n): z with Phi(z)^n = q.
            const double z =
                normal_quantile_complement(-std::expm1(std::log(q) / static_cast<double>(n)));
            const std::size_t cnt =
                std::upper_bound(xs.begin(), xs.end(), z) - xs.begin();
            const double p_hat = static_cast<double>(cnt) / xs.size();
            const double se = std::sqrt(q * (1.0 - q) / xs.size());
            CHECK(std::fabs(p_hat - q) <= 3.0 * se);
        }
    }
}

TEST_CASE("normalized sample mean brackets the quadrature mean") {
    const std::uint64_t n = 1000000;
    const NormingScheme s = make_scheme(Kind::Classical, static_cast<double>(n));
    const SimConfig cfg{n, 100000, 99};
    const std::vector<double> ys = sample_max(cfg, s, 2);
    double mean = 0.0;
    for (double y : ys) mean += y;
    mean /= ys.size();
    double var = 0.0;
    for (double y : ys) var += (y - mean) * (y - mean);
    var /= (ys.size() - 1);
    const double se = std::sqrt(var / ys.size());
    const MaxLaw law(s);
    const double exact = mean_of(law, QuadratureConfig::for_n(static_cast<double>(n)));
    CHECK(std::fabs(mean - exact) <= 3.0 * se);
}

TEST_CASE("ks null calibration and domination") {
    const std::uint64_t n = 1000000;
    const NormingScheme s = make_scheme(Kind::Classical, static_cast<double>(n));
    const MaxLaw law(s);
    const SimConfig cfg{n, 200000, 4242};
    std::vector<double> ys = sample_max(cfg, s, 2);
    std::sort(ys.begin(), ys.end());

    // Against its own law: sqrt(m) KS has the Kolmogorov null distribution;
    // 1.81 is the ~3-sigma-equivalent (p ~ 0.003) quantile.
    const double ks_self = empirical_ks(ys, ReferenceLaw::ExactMax, law);
    CHECK(std::sqrt(static_cast<double>(ys.size())) * ks_self <= 1.81);

    // Against Gumbel: KS dominates the analytic sup distance up to noise.
    const double ks_gumbel = empirical_ks(ys, ReferenceLaw::Gumbel, law);
    const MetricResult be =
        berry_esseen(law, QuadratureConfig::for_n(static_cast<double>(n)));
    CHECK(ks_gumbel >= be.value - 3.0 / std::sqrt(static_cast<double>(ys.size())));
}

TEST_CASE("ks edge cases") {
    const MaxLaw law(make_scheme(Kind::Classical, 1e6));
    const std::vector<double> one{0.7};
    const double F = GumbelLaw::cdf(0.7);
    CHECK(empirical_ks(one, ReferenceLaw::Gumbel, law) ==
          doctest::Approx(std::max(F, 1.0 - F)).epsilon(1e-15));
    const std::vector<double> unsorted{1.0, 0.0};
    CHECK_THROWS_AS(empirical_ks(unsorted, ReferenceLaw::Gumbel, law),
                    std::invalid_argument);
    CHECK_THROWS_AS(empirical_w1(unsorted), std::invalid_argument);
}

TEST_CASE("empirical w1 at exact Gumbel quantiles shrinks like 1/m") {
    // The C in the C/m trend picks up the quantile spread, which grows like
    // log m for the Gumbel right tail.
    double prev = 1e9;
    for (int m : {1000, 10000, 100000}) {
        std::vector<double> q(m);
        for (int i = 0; i < m; ++i) q[i] = GumbelLaw::quantile((i + 0.5) / m);
        const double w = empirical_w1(q);
        CHECK(w <= std::log(static_cast<double>(m)) / m);
        CHECK(w < prev);
        prev = w;
    }
}

TEST_CASE("empirical w1 single-sample closed form") {
    for (double x1 : {-1.0, 0.0, 2.5}) {
        const std::vector<double> one{x1};
        const double expected =
            2.0 * expint_e1(std::exp(-x1)) + euler_gamma() - x1;
        CHECK(empirical_w1(one) == doctest::Approx(expected).epsilon(1e-12));
        // Independent Simpson check of int |1{x >= x1} - Lambda|.
        const double left = oracle::simpson(
            [](double x) { return GumbelLaw::cdf(x); }, -8.0, x1, 1e-12);
        const double right = oracle::simpson(
            [](double x) { return 1.0 - GumbelLaw::cdf(x); }, x1, 60.0, 1e-12);
        CHECK(empirical_w1(one) == doctest::Approx(left + right).epsilon(1e-8));
    }
}

TEST_CASE("empirical w1 against a Simpson oracle on a small sample") {
    const SimConfig cfg{1000, 500, 2024};
    const NormingScheme s = make_scheme(Kind::Classical, 1000.0);
    std::vector<double> ys = sample_max(cfg, s, 1);
    std::sort(ys.begin(), ys.end());
    const double w = empirical_w1(ys);
    auto femp = [&](double x) {
        const std::size_t cnt = std::upper_bound(ys.begin(), ys.end(), x) - ys.begin();
        return static_cast<double>(cnt) / ys.size();
    };
    const double ref = oracle::simpson(
        [&](double x) { return std::fabs(femp(x) - GumbelLaw::cdf(x)); }, -6.0, 50.0,
        1e-10, 28);
    CHECK(w == doctest::Approx(ref).epsilon(1e-3));
}

TEST_CASE("w1 bracket against the analytic value") {
    const std::uint64_t n = 10000;
    const NormingScheme s = make_scheme(Kind::Classical, static_cast<double>(n));
    const MaxLaw law(s);
    const SimConfig cfg{n, 200000, 11};
    std::vector<double> ys = sample_max(cfg, s, 2);
    std::sort(ys.begin(), ys.end());
    const BootstrapResult b = empirical_w1_bootstrap(ys, 200, 11, 2);
    CHECK(b.se > 0.0);
    CHECK(b.estimate == doctest::Approx(empirical_w1(ys)).epsilon(1e-12));
    const MetricResult w = w1(law, QuadratureConfig::for_n(static_cast<double>(n)));
    CHECK(std::fabs(b.estimate - w.value) <= 3.0 * b.se + w.err_estimate);
}

TEST_CASE("bootstrap is deterministic and thread-count independent") {
    const SimConfig cfg{1000, 2000, 5};
    const NormingScheme s = make_scheme(Kind::Classical, 1000.0);
    std::vector<double> ys = sample_max(cfg, s, 1);
    std::sort(ys.begin(), ys.end());
    const BootstrapResult a = empirical_w1_bootstrap(ys, 50, 5, 1);
    const BootstrapResult b = empirical_w1_bootstrap(ys, 50, 5, 2);
    CHECK(a.se == b.se);
    CHECK(a.estimate == b.estimate);
}

TEST_CASE("sim config validation") {
    CHECK_THROWS_AS(SimConfig({2, 1000, 0}).validate(), std::domain_error);
    CHECK_THROWS_AS(SimConfig({10, 99, 0}).validate(), std::domain_error);
    CHECK_NOTHROW(SimConfig({3, 100, 0}).validate());
}
