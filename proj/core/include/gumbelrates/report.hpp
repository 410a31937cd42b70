#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gumbelrates/metrics.hpp"
#include "gumbelrates/norming.hpp"
#include "gumbelrates/rates.hpp"

namespace gumbelrates {

struct SweepRow {
    Kind scheme;
    Metric metric;
    double n;
    double value = 0.0;
    double err_estimate = 0.0;
    std::int64_t nodes = 0;
    std::optional<double> argmax;
    double leading = 0.0;
    bool leading_closed_form = true;
    std::optional<double> second;
    double ratio_leading = 0.0;
    std::optional<double> ratio_second;
    std::string error;  // non-empty when this row failed (run continues)
};

struct ConstantRow {
    std::string name;
    double computed;
    std::optional<double> reference;  // published approximation, when one exists
};

struct VerificationOutcome {
    std::string name;
    bool pass;
    double observed;
    double required;
    std::string note;
};

struct SweepReport {
    std::string tool_version;
    std::string timestamp;  // ISO-8601 UTC; the only field allowed to vary
    int schema_version;
    std::vector<std::pair<std::string, std::string>> config;  // echoed, ordered
    std::vector<SweepRow> rows;
    std::vector<ConstantRow> constants;
    std::vector<VerificationOutcome> checks;
};

SweepReport make_report(std::string timestamp = "");

struct SweepRequest {
    std::vector<Metric> metrics;
    std::vector<Kind> schemes;
    std::vector<double> n_grid;
    QuadratureConfig cfg;  // tolerances; truncation is recomputed per n
    int jobs = 1;
};

// Full cross product, rows ordered by (scheme, metric, n), computed by a work
// pool. Row-level failures are recorded in SweepRow::error, not thrown.
SweepReport build_sweep(const SweepRequest& req, std::string timestamp = "");

// d1..d5, gamma, Ei(-1), gamma-2Ei(-1), the W1 constants and the four
// Gumbel-weighted moment integrals, next to the cited approximations.
std::vector<ConstantRow> constants_table();

// geometric(a,b,k): k points log-spaced from a to b inclusive.
std::vector<double> geometric_grid(double a, double b, int k);
std::optional<std::vector<double>> parse_grid_spec(const std::string& spec);

// Serialization. Full double precision (17 significant digits), C locale,
// LF line endings; CSV columns are fixed (see README).
std::string format_double(double v);
std::string to_csv(const SweepReport& rep);
std::string to_json_string(const SweepReport& rep, int indent = 2);
std::string current_timestamp_utc();

}  // namespace gumbelrates
