// Command-line surface: constants | metric | sweep | verify | rate-table.
// Exit status: 0 success, 1 verification/computation failure, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "gumbelrates/exact_law.hpp"
#include "gumbelrates/metrics.hpp"
#include "gumbelrates/montecarlo.hpp"
#include "gumbelrates/norming.hpp"
#include "gumbelrates/rates.hpp"
#include "gumbelrates/report.hpp"
#include "gumbelrates/special_fn.hpp"
#include "gumbelrates/verify.hpp"
#include "gumbelrates/version.hpp"

namespace {

using namespace gumbelrates;

int write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output path: " << out_path << "\n";
        return 1;
    }
    f << text;
    return f.good() ? 0 : 1;
}

std::vector<Metric> parse_metrics(const std::vector<std::string>& names) {
    std::vector<Metric> out;
    for (const std::string& s : names) {
        if (s == "all") {
            return {Metric::BerryEsseen, Metric::W1, Metric::TV, Metric::KL, Metric::Fisher};
        }
        out.push_back(*metric_from_name(s));
    }
    return out;
}

std::vector<Kind> parse_schemes(const std::vector<std::string>& names) {
    std::vector<Kind> out;
    for (const std::string& s : names) {
        if (s == "all") return {Kind::Classical, Kind::HallRoot, Kind::SecondOrder};
        out.push_back(*kind_from_name(s));
    }
    return out;
}

std::string constants_text(const std::vector<ConstantRow>& rows) {
    std::string out = "name                 computed                reference\n";
    for (const ConstantRow& c : rows) {
        char buf[120];
        std::snprintf(buf, sizeof(buf), "%-20s %-23s %s\n", c.name.c_str(),
                      format_double(c.computed).c_str(),
                      c.reference ? format_double(*c.reference).c_str() : "-");
        out += buf;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gumbelrates: exact distances between normalized Gaussian maxima and the Gumbel law"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    const std::vector<std::string> metric_names{"be", "w1", "tv", "kl", "fisher", "all"};
    const std::vector<std::string> scheme_names{"classical", "hall", "second", "all"};

    // Shared options.
    double abs_tol = 1e-12, rel_tol = 1e-10;
    int max_subdivisions = 2000;
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
    std::string out_path, format;

    auto add_tol = [&](CLI::App* cmd) {
        cmd->add_option("--abs-tol", abs_tol, "Quadrature absolute tolerance")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--rel-tol", rel_tol, "Quadrature relative tolerance")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--max-subdivisions", max_subdivisions,
                        "Adaptive quadrature subdivision budget")
            ->check(CLI::PositiveNumber);
    };
    auto add_out = [&](CLI::App* cmd, const std::string& default_format,
                       const std::vector<std::string>& formats) {
        format = default_format;
        cmd->add_option("--format", format, "Output format")->check(CLI::IsMember(formats));
        cmd->add_option("--out", out_path, "Output path (default: stdout)");
    };
    auto add_jobs = [&](CLI::App* cmd) {
        cmd->add_option("--jobs", jobs, "Worker threads")
            ->envname("GUMBELRATES_JOBS")
            ->check(CLI::PositiveNumber);
    };

    // constants
    CLI::App* cmd_constants = app.add_subcommand(
        "constants", "Compute d1..d5, gamma, Ei(-1) and the W1 constants from scratch");
    add_out(cmd_constants, "text", {"text", "csv", "json"});

    // metric
    CLI::App* cmd_metric =
        app.add_subcommand("metric", "One probability metric for a (scheme, n) pair");
    std::string metric_one, scheme_one = "classical", route = "both";
    double n_value = 0.0;
    cmd_metric->add_option("--name", metric_one, "Metric")
        ->required()
        ->check(CLI::IsMember({"be", "w1", "tv", "kl", "fisher"}));
    cmd_metric->add_option("--scheme", scheme_one, "Norming scheme")
        ->check(CLI::IsMember({"classical", "hall", "second"}));
    cmd_metric->add_option("--n", n_value, "Effective sample size (real, >= 16)")->required();
    cmd_metric->add_option("--route", route, "KL evaluation route")
        ->check(CLI::IsMember({"direct", "decomposed", "both"}));
    add_tol(cmd_metric);
    add_out(cmd_metric, "text", {"text", "json"});

    // sweep
    CLI::App* cmd_sweep =
        app.add_subcommand("sweep", "Metrics x schemes x n-grid cross product");
    std::vector<std::string> sweep_metrics{"all"}, sweep_schemes{"classical"};
    std::string grid_spec = "geometric(1e4,1e16,13)";
    cmd_sweep->add_option("--metric", sweep_metrics, "Metrics (repeatable, or 'all')")
        ->check(CLI::IsMember(metric_names));
    cmd_sweep->add_option("--scheme", sweep_schemes, "Schemes (repeatable, or 'all')")
        ->check(CLI::IsMember(scheme_names));
    cmd_sweep->add_option("--n-grid", grid_spec, "Grid spec, e.g. geometric(1e4,1e16,13)");
    add_tol(cmd_sweep);
    add_jobs(cmd_sweep);
    add_out(cmd_sweep, "csv", {"csv", "json"});

    // verify
    CLI::App* cmd_verify = app.add_subcommand("verify", "Run the named verification suites");
    std::string level = "fast";
    cmd_verify->add_option("--level", level, "Suite level")
        ->check(CLI::IsMember({"fast", "full"}));
    cmd_verify->add_option("--seed", seed, "Monte Carlo seed")->envname("GUMBELRATES_SEED");
    cmd_verify->add_option("--samples", samples, "Monte Carlo sample override");
    add_jobs(cmd_verify);
    add_out(cmd_verify, "text", {"text", "json"});

    // rate-table
    CLI::App* cmd_rate =
        app.add_subcommand("rate-table", "Exact metric vs predictions over an n-grid");
    std::string rt_metric, rt_scheme = "classical", rt_grid = "geometric(1e4,1e16,13)";
    cmd_rate->add_option("--metric", rt_metric, "Metric")
        ->required()
        ->check(CLI::IsMember({"be", "w1", "tv", "kl", "fisher"}));
    cmd_rate->add_option("--scheme", rt_scheme, "Norming scheme")
        ->check(CLI::IsMember({"classical", "hall", "second"}));
    cmd_rate->add_option("--n-grid", rt_grid, "Grid spec, e.g. geometric(1e4,1e16,13)");
    add_tol(cmd_rate);
    add_jobs(cmd_rate);
    add_out(cmd_rate, "text", {"text", "csv", "json"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*cmd_constants) {
            SweepReport rep = make_report();
            rep.constants = constants_table();
            rep.config.emplace_back("command", "constants");
            if (format == "text") return write_output(constants_text(rep.constants), out_path);
            return write_output(format == "json" ? to_json_string(rep) : to_csv(rep), out_path);
        }

        if (*cmd_metric) {
            if (!(n_value >= 16.0)) {
                std::cerr << "error: --n must be at least 16\n";
                return 2;
            }
            QuadratureConfig cfg = QuadratureConfig::for_n(n_value);
            cfg.abs_tol = abs_tol;
            cfg.rel_tol = rel_tol;
            cfg.max_subdivisions = max_subdivisions;
            const Kind kind = *kind_from_name(scheme_one);
            const Metric metric = *metric_from_name(metric_one);
            const MaxLaw law(make_scheme(kind, n_value));

            SweepReport rep = make_report();
            rep.config.emplace_back("command", "metric");
            rep.config.emplace_back("scheme", scheme_one);
            rep.config.emplace_back("n", format_double(n_value));

            std::string text;
            if (metric == Metric::KL && route == "both") {
                const KlBoth b = kl_both(law, cfg);
                text += "kl_direct     = " + format_double(b.direct.value) +
                        "  (err " + format_double(b.direct.err_estimate) + ")\n";
                text += "kl_decomposed = " + format_double(b.decomposed.value) +
                        "  (err " + format_double(b.decomposed.err_estimate) + ")\n";
                text += std::string("routes_agree  = ") + (b.consistent ? "yes" : "no") + "\n";
                rep.checks.push_back({"kl_two_route", b.consistent,
                                      std::fabs(b.direct.value - b.decomposed.value),
                                      b.direct.err_estimate + b.decomposed.err_estimate, ""});
                SweepRow row;
                row.scheme = kind;
                row.metric = metric;
                row.n = n_value;
                row.value = b.direct.value;
                row.err_estimate = b.direct.err_estimate;
                row.nodes = b.direct.nodes + b.decomposed.nodes;
                const RatePrediction lead = predict(metric, kind, n_value);
                row.leading = lead.value;
                row.leading_closed_form = lead.closed_form;
                row.ratio_leading = row.value / lead.value;
                row.second = second_order_prediction(metric, kind, n_value);
                if (row.second) row.ratio_second = row.value / *row.second;
                rep.rows.push_back(row);
            } else {
                MetricResult res;
                if (metric == Metric::KL)
                    res = kl(law, cfg,
                             route == "direct" ? KlRoute::Direct : KlRoute::Decomposed);
                else
                    res = compute_metric(metric, law, cfg);
                text += std::string(metric_name(metric)) + " = " + format_double(res.value) +
                        "  (err " + format_double(res.err_estimate) + ", nodes " +
                        std::to_string(res.nodes) + ")\n";
                if (res.argmax) text += "argmax = " + format_double(*res.argmax) + "\n";
                SweepRow row;
                row.scheme = kind;
                row.metric = metric;
                row.n = n_value;
                row.value = res.value;
                row.err_estimate = res.err_estimate;
                row.nodes = res.nodes;
                row.argmax = res.argmax;
                const RatePrediction lead = predict(metric, kind, n_value);
                row.leading = lead.value;
                row.leading_closed_form = lead.closed_form;
                row.ratio_leading = res.value / lead.value;
                row.second = second_order_prediction(metric, kind, n_value);
                if (row.second) row.ratio_second = res.value / *row.second;
                rep.rows.push_back(row);
            }
            if (format == "json") return write_output(to_json_string(rep), out_path);
            return write_output(text, out_path);
        }

        if (*cmd_sweep || *cmd_rate) {
            SweepRequest req;
            if (*cmd_sweep) {
                req.metrics = parse_metrics(sweep_metrics);
                req.schemes = parse_schemes(sweep_schemes);
            } else {
                req.metrics = {*metric_from_name(rt_metric)};
                req.schemes = {*kind_from_name(rt_scheme)};
                grid_spec = rt_grid;
            }
            auto grid = parse_grid_spec(grid_spec);
            if (!grid) {
                std::cerr << "error: bad --n-grid spec '" << grid_spec
                          << "'; expected geometric(a,b,k)\n";
                return 2;
            }
            for (double n : *grid)
                if (!(n >= 16.0)) {
                    std::cerr << "error: grid entries must be >= 16\n";
                    return 2;
                }
            req.n_grid = *grid;
            req.cfg.abs_tol = abs_tol;
            req.cfg.rel_tol = rel_tol;
            req.cfg.max_subdivisions = max_subdivisions;
            req.jobs = jobs;
            SweepReport rep = build_sweep(req);
            rep.config.emplace_back("command", *cmd_sweep ? "sweep" : "rate-table");

            if (format == "text") {
                std::string text =
                    "scheme     metric  n            value          err           "
                    "ratio_leading  ratio_second\n";
                for (const SweepRow& r : rep.rows) {
                    char buf[200];
                    std::snprintf(buf, sizeof(buf),
                                  "%-10s %-7s %-12.6g %-14.8g %-13.3g %-14.6g %s\n",
                                  kind_name(r.scheme), metric_name(r.metric), r.n, r.value,
                                  r.err_estimate, r.ratio_leading,
                                  r.ratio_second ? format_double(*r.ratio_second).c_str()
                                                 : "-");
                    text += r.error.empty() ? buf
                                            : (std::string(kind_name(r.scheme)) + " " +
                                               metric_name(r.metric) + " " +
                                               format_double(r.n) + " ERROR: " + r.error + "\n");
                }
                return write_output(text, out_path);
            }
            return write_output(format == "json" ? to_json_string(rep) : to_csv(rep), out_path);
        }

        if (*cmd_verify) {
            const VerifyLevel lvl = (level == "full") ? VerifyLevel::Full : VerifyLevel::Fast;
            const std::vector<VerificationOutcome> checks =
                run_verification(lvl, seed, jobs, samples);
            SweepReport rep = make_report();
            rep.checks = checks;
            rep.config.emplace_back("command", "verify");
            rep.config.emplace_back("level", level);
            rep.config.emplace_back("seed", std::to_string(seed));
            bool all_pass = true;
            std::string text;
            for (const VerificationOutcome& c : checks) {
                all_pass = all_pass && c.pass;
                text += std::string(c.pass ? "[PASS] " : "[FAIL] ") + c.name +
                        "  observed=" + format_double(c.observed) +
                        "  required=" + format_double(c.required);
                if (!c.note.empty()) text += "  (" + c.note + ")";
                text += "\n";
            }
            text += all_pass ? "verify: all checks passed\n" : "verify: FAILURES present\n";
            int rc = write_output(format == "json" ? to_json_string(rep) : text, out_path);
            if (rc != 0) return rc;
            return all_pass ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
