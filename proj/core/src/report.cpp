#include "gumbelrates/report.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "gumbelrates/special_fn.hpp"
#include "gumbelrates/version.hpp"

namespace gumbelrates {

namespace {

using nlohmann::json;

json row_to_json(const SweepRow& r) {
    json j;
    j["scheme"] = kind_name(r.scheme);
    j["metric"] = metric_name(r.metric);
    j["n"] = r.n;
    if (!r.error.empty()) {
        j["error"] = r.error;
        return j;
    }
    j["value"] = r.value;
    j["err_estimate"] = r.err_estimate;
    j["nodes"] = r.nodes;
    if (r.argmax) j["argmax"] = *r.argmax;
    j["leading_prediction"] = r.leading;
    j["leading_closed_form"] = r.leading_closed_form;
    j["ratio_leading"] = r.ratio_leading;
    if (r.second) {
        j["second_prediction"] = *r.second;
        j["ratio_second"] = *r.ratio_second;
    }
    return j;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string current_timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

SweepReport make_report(std::string timestamp) {
    SweepReport rep;
    rep.tool_version = kVersion;
    rep.schema_version = kReportSchemaVersion;
    rep.timestamp = timestamp.empty() ? current_timestamp_utc() : std::move(timestamp);
    return rep;
}

std::vector<double> geometric_grid(double a, double b, int k) {
    if (!(a > 0.0 && b > a) || k < 2)
        throw std::domain_error("geometric_grid: need 0 < a < b and k >= 2");
    std::vector<double> g(k);
    const double la = std::log(a), lb = std::log(b);
    for (int i = 0; i < k; ++i)
        g[i] = std::exp(la + (lb - la) * i / (k - 1));
    g.front() = a;
    g.back() = b;
    return g;
}

std::optional<std::vector<double>> parse_grid_spec(const std::string& spec) {
    double a = 0.0, b = 0.0;
    int k = 0;
    char tail = 0;
    if (std::sscanf(spec.c_str(), "geometric(%lf,%lf,%d%c", &a, &b, &k, &tail) == 4 &&
        tail == ')') {
        if (a > 0.0 && b > a && k >= 2) return geometric_grid(a, b, k);
    }
    return std::nullopt;
}

SweepReport build_sweep(const SweepRequest& req, std::string timestamp) {
    req.cfg.validate();
    SweepReport rep = make_report(std::move(timestamp));
    rep.config.emplace_back("abs_tol", format_double(req.cfg.abs_tol));
    rep.config.emplace_back("rel_tol", format_double(req.cfg.rel_tol));
    rep.config.emplace_back("max_subdivisions", std::to_string(req.cfg.max_subdivisions));
    rep.config.emplace_back("jobs", std::to_string(req.jobs));
    {
        std::string grid;
        for (double n : req.n_grid) {
            if (!grid.empty()) grid += " ";
            grid += format_double(n);
        }
        rep.config.emplace_back("n_grid", grid);
    }

    // Deterministic row order (scheme, metric, n); the pool fills by index.
    rep.rows.resize(req.schemes.size() * req.metrics.size() * req.n_grid.size());
    std::size_t idx = 0;
    for (Kind k : req.schemes)
        for (Metric m : req.metrics)
            for (double n : req.n_grid) {
                rep.rows[idx].scheme = k;
                rep.rows[idx].metric = m;
                rep.rows[idx].n = n;
                ++idx;
            }

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= rep.rows.size()) return;
            SweepRow& row = rep.rows[i];
            try {
                QuadratureConfig cfg = QuadratureConfig::for_n(row.n);
                cfg.abs_tol = req.cfg.abs_tol;
                cfg.rel_tol = req.cfg.rel_tol;
                cfg.max_subdivisions = req.cfg.max_subdivisions;
                const MaxLaw law(make_scheme(row.scheme, row.n));
                const MetricResult res = compute_metric(row.metric, law, cfg);
                const RatePrediction lead = predict(row.metric, row.scheme, row.n);
                row.value = res.value;
                row.err_estimate = res.err_estimate;
                row.nodes = res.nodes;
                row.argmax = res.argmax;
                row.leading = lead.value;
                row.leading_closed_form = lead.closed_form;
                row.ratio_leading = res.value / lead.value;
                row.second = second_order_prediction(row.metric, row.scheme, row.n);
                if (row.second) row.ratio_second = res.value / *row.second;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
    };
    const int jobs = std::max(1, req.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return rep;
}

std::vector<ConstantRow> constants_table() {
    std::vector<ConstantRow> rows;
    rows.push_back({"d1", compute_constant(RateConstant::d1), 1.305});
    rows.push_back({"d2", compute_constant(RateConstant::d2), 0.2704});
    rows.push_back({"d3", compute_constant(RateConstant::d3), 2.6});
    rows.push_back({"d4", compute_constant(RateConstant::d4), 30.777});
    rows.push_back({"d4_four_term", d4_four_term_route(), 30.777});
    rows.push_back({"d5", compute_constant(RateConstant::d5), 15.4});
    rows.push_back({"gamma", euler_gamma(), 0.5772156649});
    rows.push_back({"ei_minus_one", exp_integral_at_minus_one(), -0.2193839344});
    rows.push_back({"gamma_minus_2ei", w1_second_constant(), 1.016});
    rows.push_back({"w1_hall_constant", w1_hall_constant(), std::nullopt});
    // The four Gumbel-weighted moment integrals next to their closed forms
    // gamma, gamma^2 + pi^2/6, gamma - 1, gamma^2 - 2 gamma + pi^2/6.
    rows.push_back({"int_x_gumbel", gumbel_weighted_integral({0, {0.0, 1.0}}),
                    0.5772156649});
    rows.push_back({"int_x2_gumbel", gumbel_weighted_integral({0, {0.0, 0.0, 1.0}}),
                    1.9781119907});
    rows.push_back({"int_x_exp_gumbel", gumbel_weighted_integral({1, {0.0, 1.0}}),
                    -0.4227843351});
    rows.push_back({"int_x2_exp_gumbel", gumbel_weighted_integral({1, {0.0, 0.0, 1.0}}),
                    0.8236806608});
    return rows;
}

std::string to_csv(const SweepReport& rep) {
    std::ostringstream os;
    os << "# gumbelrates report\n";
    os << "# schema_version=" << rep.schema_version << "\n";
    os << "# tool_version=" << rep.tool_version << "\n";
    os << "# timestamp=" << rep.timestamp << "\n";
    for (const auto& [k, v] : rep.config) os << "# config " << k << "=" << v << "\n";

    if (!rep.constants.empty()) {
        os << "name,computed,reference\n";
        for (const ConstantRow& c : rep.constants) {
            os << c.name << "," << format_double(c.computed) << ",";
            if (c.reference) os << format_double(*c.reference);
            os << "\n";
        }
    }
    if (!rep.checks.empty()) {
        os << "check,pass,observed,required,note\n";
        for (const VerificationOutcome& c : rep.checks)
            os << c.name << "," << (c.pass ? "1" : "0") << "," << format_double(c.observed)
               << "," << format_double(c.required) << "," << c.note << "\n";
    }
    if (!rep.rows.empty() || (rep.constants.empty() && rep.checks.empty())) {
        os << "scheme,metric,n,value,err_estimate,nodes,argmax,leading_prediction,"
              "leading_closed_form,second_prediction,ratio_leading,ratio_second,error\n";
        for (const SweepRow& r : rep.rows) {
            os << kind_name(r.scheme) << "," << metric_name(r.metric) << ","
               << format_double(r.n) << ",";
            if (r.error.empty()) {
                os << format_double(r.value) << "," << format_double(r.err_estimate) << ","
                   << r.nodes << ",";
                if (r.argmax) os << format_double(*r.argmax);
                os << "," << format_double(r.leading) << ","
                   << (r.leading_closed_form ? "1" : "0") << ",";
                if (r.second) os << format_double(*r.second);
                os << "," << format_double(r.ratio_leading) << ",";
                if (r.ratio_second) os << format_double(*r.ratio_second);
                os << ",";
            } else {
                std::string msg = r.error;
                for (auto& ch : msg)
                    if (ch == '"' || ch == ',') ch = ';';
                os << ",,,,,,,,,\"" << msg << "\"";
            }
            os << "\n";
        }
    }
    return os.str();
}

std::string to_json_string(const SweepReport& rep, int indent) {
    json j;
    j["schema_version"] = rep.schema_version;
    j["tool_version"] = rep.tool_version;
    j["timestamp"] = rep.timestamp;
    json cfg = json::object();
    for (const auto& [k, v] : rep.config) cfg[k] = v;
    j["config"] = cfg;
    if (!rep.rows.empty()) {
        json rows = json::array();
        for (const SweepRow& r : rep.rows) rows.push_back(row_to_json(r));
        j["rows"] = rows;
    }
    if (!rep.constants.empty()) {
        json cons = json::array();
        for (const ConstantRow& c : rep.constants) {
            json jc;
            jc["name"] = c.name;
            jc["computed"] = c.computed;
            if (c.reference) jc["reference"] = *c.reference;
            cons.push_back(jc);
        }
        j["constants"] = cons;
    }
    if (!rep.checks.empty()) {
        json checks = json::array();
        for (const VerificationOutcome& c : rep.checks) {
            json jc;
            jc["name"] = c.name;
            jc["pass"] = c.pass;
            jc["observed"] = c.observed;
            jc["required"] = c.required;
            if (!c.note.empty()) jc["note"] = c.note;
            checks.push_back(jc);
        }
        j["checks"] = checks;
    }
    return j.dump(indent) + "\n";
}

}  // namespace gumbelrates
