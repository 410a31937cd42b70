#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "gumbelrates/exact_law.hpp"
#include "gumbelrates/quadrature.hpp"
#include "gumbelrates/special_fn.hpp"
#include "oracles/highprec.hpp"

using namespace gumbelrates;

namespace {

// Independent log-density route: eq-densi algebra at 200 bits,
// log f = log n - log(scale) - log sqrt(2 pi) - z^2/2 + (n-1) log Phi(z).
double mp_log_pdf(const MaxLaw& law, double x) {
    const NormingScheme& s = law.scheme();
    const oracle::mp z(law.z_of(x));
    const oracle::mp log_phi_density = -z * z / 2 - log(sqrt(2 * boost::math::constants::pi<oracle::mp>()));
    const oracle::mp v = log(oracle::mp(s.n)) - log(oracle::mp(s.a)) + log_phi_density +
                         (oracle::mp(s.n) - 1) * oracle::mp_log_normal_cdf(z);
    return oracle::to_d(v);
}

}  // namespace

TEST_CASE("gumbel law basics") {
    CHECK(GumbelLaw::cdf(0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(GumbelLaw::log_pdf(0.0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(GumbelLaw::quantile(GumbelLaw::cdf(1.3)) == doctest::Approx(1.3).epsilon(1e-12));
    CHECK(GumbelLaw::mean() == doctest::Approx(0.57721566490153286).epsilon(1e-12));
    // Quadrature check of mean and variance.
    const double m = integrate([](double x) { return x * GumbelLaw::pdf(x); }, -8.0, 60.0,
                               1e-12, 1e-11, 4000)
                         .value;
    const double m2 = integrate([](double x) { return x * x * GumbelLaw::pdf(x); }, -8.0,
                                60.0, 1e-12, 1e-11, 4000)
                          .value;
    CHECK(m == doctest::Approx(GumbelLaw::mean()).epsilon(1e-10));
    CHECK(m2 - m * m == doctest::Approx(GumbelLaw::variance()).epsilon(1e-9));
}

TEST_CASE("cdf against the extended-precision power oracle") {
    for (Kind kind : {Kind::Classical, Kind::HallRoot, Kind::SecondOrder}) {
        for (double n : {1e4, 1e8, 1e12}) {
            const MaxLaw law(make_scheme(kind, n));
            for (double x : {-3.0, -1.0, -0.25, 0.0, 0.5, 1.0, 2.5, 6.0, 10.0}) {
                const double ref = oracle::to_d(oracle::mp_power_cdf(n, law.z_of(x)));
                const double got = law.cdf(x);
                CHECK(std::fabs(got - ref) <= 1e-12 * ref + 1e-280);
            }
        }
    }
    // Spec point: (Classical, n = 1e8, x = 0) against the oracle.
    const MaxLaw law(make_scheme(Kind::Classical, 1e8));
    const double ref = oracle::to_d(oracle::mp_power_cdf(1e8, law.z_of(0.0)));
    CHECK(law.cdf(0.0) == doctest::Approx(ref).epsilon(1e-13));
}

TEST_CASE("log pdf against the independent density route") {
    for (Kind kind : {Kind::Classical, Kind::HallRoot, Kind::SecondOrder}) {
        for (double n : {1e4, 1e8, 1e12}) {
            const MaxLaw law(make_scheme(kind, n));
            for (double x : {-2.0, -0.5, 0.0, 0.75, 1.5, 3.0, 8.0}) {
                const double ref = mp_log_pdf(law, x);
                CHECK(std::fabs(law.log_pdf(x) - ref) <=
                      1e-11 * (1.0 + std::fabs(ref)));
            }
        }
    }
}

TEST_CASE("cdf is monotone and has the right limits") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ux(-6.0, 12.0);
    for (Kind kind : {Kind::Classical, Kind::HallRoot, Kind::SecondOrder}) {
        const MaxLaw law(make_scheme(kind, 1e6));
        for (int i = 0; i < 200; ++i) {
            double x1 = ux(rng), x2 = ux(rng);
            if (x1 > x2) std::swap(x1, x2);
            CHECK(law.cdf(x1) <= law.cdf(x2));
        }
    }
    const MaxLaw law(make_scheme(Kind::Classical, 1e6));
    CHECK(law.cdf(-20.0) < 1e-15);
    CHECK(law.cdf(50.0) > 1.0 - 1e-15);
}

TEST_CASE("density integrates to one") {
    for (Kind kind : {Kind::Classical, Kind::HallRoot, Kind::SecondOrder}) {
        for (double n : {1e4, 1e6, 1e8, 1e12, 1e16}) {
            const MaxLaw law(make_scheme(kind, n));
            const QuadratureConfig cfg = QuadratureConfig::for_n(n);
            const double mass = integrate([&](double x) { return law.pdf(x); },
                                          cfg.trunc_lo, cfg.trunc_hi, 1e-12, 1e-11, 4000)
                                    .value;
            CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
            // pdf nonnegative on a grid
            for (int i = 0; i <= 100; ++i) {
                const double x = cfg.trunc_lo + (cfg.trunc_hi - cfg.trunc_lo) * i / 100.0;
                CHECK(law.pdf(x) >= 0.0);
            }
        }
    }
}

TEST_CASE("pdf is the derivative of cdf") {
    const MaxLaw law(make_scheme(Kind::Classical, 1e6));
    const double h = 1e-5;
    for (double x : {-0.5, 0.0, 1.0, 2.0}) {
        const double fd = (law.cdf(x + h) - law.cdf(x - h)) / (2.0 * h);
        CHECK(fd == doctest::Approx(law.pdf(x)).epsilon(1e-6));
    }
}

TEST_CASE("score matches finite differences of the log ratio") {
    for (Kind kind : {Kind::Classical, Kind::HallRoot, Kind::SecondOrder}) {
        const double n = 1e6;
        const MaxLaw law(make_scheme(kind, n));
        const ExpansionWindow w = window_of(n);
        const double h = 1e-5;
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double x = w.lo + (w.hi - w.lo) * (i + 0.5) / 50.0;
            const double fd = (law.log_ratio(x + h) - law.log_ratio(x - h)) / (2.0 * h);
            const double an = law.score_ratio(x);
            worst = std::max(worst, std::fabs(fd - an) / std::max(1e-12, std::fabs(an)));
        }
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("score tends to zero in n at the origin") {
    // (1e4 omitted: c(1e4) sits next to the root of c^2 - 2c, which makes
    // |score(0)| non-monotone at the small end; see the expansion algebra.)
    const double s8 = std::fabs(MaxLaw(make_scheme(Kind::Classical, 1e8)).score_ratio(0.0));
    const double s12 = std::fabs(MaxLaw(make_scheme(Kind::Classical, 1e12)).score_ratio(0.0));
    const double s16 = std::fabs(MaxLaw(make_scheme(Kind::Classical, 1e16)).score_ratio(0.0));
    CHECK(s8 > s12);
    CHECK(s12 > s16);
    CHECK(s16 < 0.03);
}

TEST_CASE("h term: expm1 route vs naive subtraction") {
    for (double n : {1e4, 1e6, 1e12}) {
        const MaxLaw law(make_scheme(Kind::Classical, n));
        const ExpansionWindow w = window_of(n);
        for (int i = 0; i <= 40; ++i) {
            const double x = w.lo + (w.hi - w.lo) * i / 40.0;
            const double h = law.h_term(x);
            const double hn = law.h_term_naive(x);
            // Wherever the naive route keeps >= 6 significant digits, agree.
            if (std::fabs(hn) >= 2.2e-10)
                CHECK(std::fabs(h - hn) <= 1e-6 * std::fabs(hn));
            // Score forms agree to 1e-12 on the scale of the score terms.
            const double sa = law.score_ratio(x);
            const double sn = law.score_ratio_naive(x);
            CHECK(std::fabs(sa - sn) <= 1e-12 * (1.0 + std::fabs(sa)));
        }
    }
}

TEST_CASE("weak convergence: sup distance decreases along the n grid") {
    double prev = 1e9;
    for (double n : {1e4, 1e6, 1e8, 1e10, 1e12, 1e14, 1e16}) {
        const MaxLaw law(make_scheme(Kind::Classical, n));
        double sup = 0.0;
        for (int i = 0; i <= 1000; ++i) {
            const double x = -5.0 + 45.0 * i / 1000.0;
            sup = std::max(sup, std::fabs(law.cdf_minus_gumbel(x)));
        }
        CHECK(sup < prev);
        prev = sup;
    }
}

TEST_CASE("expected log Phi identity equals -1/n") {
    CHECK(std::fabs(expected_log_phi_identity(3.0) + 1.0 / 3.0) <= 1e-12);
    CHECK(std::fabs(expected_log_phi_identity(10.0) + 0.1) <= 1e-12);
    CHECK(std::fabs(expected_log_phi_identity(1e6) + 1e-6) <= 1e-16);
    CHECK_THROWS_AS(expected_log_phi_identity(2.0), std::domain_error);
}

TEST_CASE("degenerate tails stay finite") {
    const MaxLaw law(make_scheme(Kind::Classical, 1e8));
    CHECK(std::isfinite(law.log_cdf(-1000.0)));
    CHECK(law.log_cdf(-1000.0) < -1e6);
    CHECK(law.pdf(-1000.0) == 0.0);  // graceful underflow
    CHECK(law.pdf(1000.0) == 0.0);
    CHECK(!std::isnan(law.cdf_minus_gumbel(-300.0)));
    CHECK(!std::isnan(law.cdf_minus_gumbel(300.0)));
    CHECK_THROWS_AS(law.cdf(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
}

TEST_CASE("law consistency under random (scheme, n, x) tuples") {
    std::mt19937 rng(2026);
    std::uniform_real_distribution<double> ulogn(std::log(3.0), std::log(1e300));
    std::uniform_real_distribution<double> ux(-12.0, 45.0);
    std::uniform_int_distribution<int> uk(0, 2);
    for (int i = 0; i < 500; ++i) {
        const Kind k = static_cast<Kind>(uk(rng));
        const double n = std::exp(ulogn(rng));
        const double x = ux(rng);
        const MaxLaw law(make_scheme(k, n));
        const double F = law.cdf(x);
        CHECK(F >= 0.0);
        CHECK(F <= 1.0);
        CHECK(std::fabs(std::exp(law.log_cdf(x)) - F) <= 1e-15 + 1e-13 * F);
        CHECK(law.pdf(x) >= 0.0);
        CHECK(std::isfinite(law.score_ratio(x)));
        CHECK(!std::isnan(law.cdf_minus_gumbel(x)));
    }
}

TEST_CASE("mean by quadrature is near gamma for large n") {
    const double n = 1e12;
    const MaxLaw law(make_scheme(Kind::Classical, n));
    const double mean = mean_of(law, QuadratureConfig::for_n(n));
    CHECK(std::fabs(mean - GumbelLaw::mean()) < 0.1);
}
