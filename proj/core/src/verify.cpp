#include "gumbelrates/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gumbelrates/exact_law.hpp"
#include "gumbelrates/montecarlo.hpp"
#include "gumbelrates/special_fn.hpp"

namespace gumbelrates {

namespace {

void check(std::vector<VerificationOutcome>& out, const std::string& name, double observed,
           double required, bool pass, std::string note = "") {
    out.push_back({name, pass, observed, required, std::move(note)});
}

// |observed| <= bound
void check_abs(std::vector<VerificationOutcome>& out, const std::string& name,
               double observed, double bound, std::string note = "") {
    check(out, name, observed, bound, std::fabs(observed) <= bound, std::move(note));
}

}  // namespace

std::vector<VerificationOutcome> run_verification(VerifyLevel level, std::uint64_t seed,
                                                  int jobs, std::uint64_t samples) {
    std::vector<VerificationOutcome> out;
    const double g = euler_gamma();
    const double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;

    // E log Phi(X_(n)) = -1/n
    for (double n : {3.0, 10.0, 1e6})
        check_abs(out, "identity_log_phi_n" + format_double(n),
                  expected_log_phi_identity(n) + 1.0 / n, 1e-10);

    // Gumbel-weighted moment integrals against their closed forms.
    check_abs(out, "gumbel_integral_x",
              gumbel_weighted_integral({0, {0.0, 1.0}}) - 0.57721566490153286, 1e-10);
    check_abs(out, "gumbel_integral_x2",
              gumbel_weighted_integral({0, {0.0, 0.0, 1.0}}) - (g * g + pi2_6), 1e-10);
    check_abs(out, "gumbel_integral_x_k1",
              gumbel_weighted_integral({1, {0.0, 1.0}}) - (g - 1.0), 1e-10);
    check_abs(out, "gumbel_integral_x2_k1",
              gumbel_weighted_integral({1, {0.0, 0.0, 1.0}}) - (g * g - 2.0 * g + pi2_6),
              1e-10);
    check_abs(out, "gumbel_normalization",
              gumbel_weighted_integral({0, {1.0}}) - 1.0, 1e-12);

    // Named constants against the cited approximations.
    check_abs(out, "constant_d1", compute_constant(RateConstant::d1) - 1.305, 0.005);
    check_abs(out, "constant_d2", compute_constant(RateConstant::d2) - 0.2704, 0.0005);
    check_abs(out, "constant_d3", compute_constant(RateConstant::d3) - 2.6, 0.05);
    check_abs(out, "constant_d4", compute_constant(RateConstant::d4) - 30.777, 0.01);
    check_abs(out, "constant_d5", compute_constant(RateConstant::d5) - 15.4, 0.1);
    check_abs(out, "constant_w1_second", w1_second_constant() - 1.016, 0.001);
    check_abs(out, "d4_two_route", d4_reduced_route() - d4_four_term_route(), 1e-9);

    // Pinsker chain and KL route agreement.
    for (Kind k : {Kind::Classical, Kind::HallRoot, Kind::SecondOrder}) {
        const double n = 1e6;
        const MaxLaw law(make_scheme(k, n));
        const QuadratureConfig cfg = QuadratureConfig::for_n(n);
        const MetricResult be = berry_esseen(law, cfg);
        const MetricResult tvr = tv(law, cfg);
        const KlBoth klb = kl_both(law, cfg);
        const MetricResult fi = fisher(law, cfg);
        const std::string tag = std::string("_") + kind_name(k);
        const double slack = be.err_estimate + 0.5 * tvr.err_estimate + 1e-12;
        check(out, "chain_be_le_half_tv" + tag, be.value, 0.5 * tvr.value + slack,
              be.value <= 0.5 * tvr.value + slack);
        const double pinsker_slack =
            klb.direct.err_estimate + 0.25 * tvr.value * tvr.err_estimate + 1e-12;
        check(out, "chain_pinsker" + tag, klb.direct.value,
              tvr.value * tvr.value / 8.0 - pinsker_slack,
              klb.direct.value >= tvr.value * tvr.value / 8.0 - pinsker_slack);
        check(out, "nonneg" + tag, std::min({be.value, tvr.value, klb.direct.value, fi.value}),
              0.0,
              be.value >= 0.0 && tvr.value >= 0.0 && klb.direct.value >= 0.0 &&
                  fi.value >= 0.0);
        const double rel =
            std::fabs(klb.direct.value - klb.decomposed.value) / std::fabs(klb.direct.value);
        check_abs(out, "kl_two_route" + tag, rel, 1e-6);
    }

    // Analytic score vs central finite differences, n = 1e6.
    {
        const double n = 1e6;
        const MaxLaw law(make_scheme(Kind::Classical, n));
        const ExpansionWindow w = window_of(n);
        double worst = 0.0;
        const double h = 1e-5;
        for (int i = 0; i < 50; ++i) {
            const double x = w.lo + (w.hi - w.lo) * (i + 0.5) / 50.0;
            const double fd = (law.log_ratio(x + h) - law.log_ratio(x - h)) / (2.0 * h);
            const double an = law.score_ratio(x);
            worst = std::max(worst, std::fabs(fd - an) / std::max(1e-12, std::fabs(an)));
        }
        check_abs(out, "score_finite_difference", worst, 1e-6);
    }

    // Mean-coefficient arbitration (gamma vs gamma+1 in the mean expansion).
    {
        const MeanArbitration a = arbitrate_mean_coefficient();
        const char* winner =
            (a.winner == MeanCoefficient::GammaPlusOne) ? "gamma_plus_one" : "gamma";
        check(out, "mean_coefficient_arbitration", a.separation, 5.0, a.separation >= 5.0,
              std::string("winner=") + winner +
                  " fitted=" + format_double(a.fitted_coefficient));
    }

    // Monte Carlo brackets.
    {
        const std::uint64_t m =
            samples > 0 ? samples : (level == VerifyLevel::Full ? 1000000u : 100000u);
        const std::uint64_t n = 1000000;
        const NormingScheme scheme = make_scheme(Kind::Classical, static_cast<double>(n));
        const MaxLaw law(scheme);
        const QuadratureConfig cfg = QuadratureConfig::for_n(static_cast<double>(n));
        SimConfig sim{n, m, seed};
        std::vector<double> ys = sample_max(sim, scheme, jobs);
        std::sort(ys.begin(), ys.end());

        double mean = 0.0;
        for (double y : ys) mean += y;
        mean /= static_cast<double>(m);
        double var = 0.0;
        for (double y : ys) var += (y - mean) * (y - mean);
        var /= static_cast<double>(m - 1);
        const double se = std::sqrt(var / static_cast<double>(m));
        const double mean_exact = mean_of(law, cfg);
        check_abs(out, "mc_mean_bracket", (mean - mean_exact) / se, 3.0,
                  "mean=" + format_double(mean) + " exact=" + format_double(mean_exact));

        // KS against the sample's own law: sqrt(m) KS has the Kolmogorov null
        // distribution; 1.81 is the two-sided 3-sigma-equivalent quantile.
        const double ks_null = empirical_ks(ys, ReferenceLaw::ExactMax, law);
        check(out, "mc_ks_null_calibration", std::sqrt(static_cast<double>(m)) * ks_null,
              1.81, std::sqrt(static_cast<double>(m)) * ks_null <= 1.81);

        // KS against Gumbel brackets the analytic Berry-Esseen distance.
        const MetricResult be = berry_esseen(law, cfg);
        const double ks_gumbel = empirical_ks(ys, ReferenceLaw::Gumbel, law);
        const double ks_tol = (0.8687 + 3.0 * 0.2603) / std::sqrt(static_cast<double>(m));
        check_abs(out, "mc_ks_vs_berry_esseen", ks_gumbel - be.value, ks_tol);

        if (level == VerifyLevel::Full) {
            const BootstrapResult bw = empirical_w1_bootstrap(ys, 200, seed, jobs);
            const MetricResult w = w1(law, cfg);
            check_abs(out, "mc_w1_bracket", bw.estimate - w.value,
                      3.0 * bw.se + w.err_estimate,
                      "empirical=" + format_double(bw.estimate) +
                          " analytic=" + format_double(w.value) +
                          " se=" + format_double(bw.se));
        }
    }

    return out;
}

}  // namespace gumbelrates
