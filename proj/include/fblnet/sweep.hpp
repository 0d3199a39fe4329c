#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fblnet/fbl.hpp"
#include "fblnet/interference.hpp"
#include "fblnet/montecarlo.hpp"

namespace fblnet {

enum class SweepAxis { gamma0_db, r0_m, lambda_per_km2, n, epsilon, T_db };

const char* to_string(SweepAxis axis);

/// One row group of a parameter study: a primary axis plus fixed values for
/// everything else. Axis values and fixed fields are kept in the user-facing
/// units of the config file (BS/km^2, dB); materialize() converts to the SI
/// quantities the library computes with.
struct SweepSpec {
    std::string name;
    SweepAxis axis = SweepAxis::gamma0_db;
    std::vector<double> axis_values;

    double lambda_per_km2 = 1.0;
    double r0_m = 250.0;
    double eta = 4.0;
    double noise_power_w = 1.0;
    std::int64_t n = 128;
    double epsilon = 1e-2;
    double T_linear = 1.0;
    SymbolMomentModel::Kind symbols = SymbolMomentModel::Kind::gaussian_codebook;

    /// How the transmit power is pinned down across the sweep.
    enum class PowerRule {
        from_axis,     // axis == gamma0_db: P = gamma0 * N0 * r0^eta per point
        fixed_tx,      // tx_power_w given directly
        fixed_gamma0,  // gamma0_db held constant (P tracks r0 if r0 sweeps)
        gamma0_at_ref  // P chosen so gamma0 equals gamma0_db_ref at r0_ref_m
    };
    PowerRule power_rule = PowerRule::from_axis;
    double tx_power_w = 1.0;
    double gamma0_db = 0.0;
    double gamma0_db_ref = 0.0;
    double r0_ref_m = 250.0;

    struct Point {
        NetworkParams params;
        FblParams fbl;
        SinrThreshold thr;
        SymbolMomentModel moments;
        double axis_value;
    };

    /// Builds and validates the fully resolved parameter set for one axis
    /// value. Throws (std::invalid_argument and friends) on any invariant
    /// violation.
    Point materialize(double axis_value) const;

    /// Validates the spec by materializing every grid point.
    void validate() const;
};

struct McSettings {
    std::int64_t samples = 100000;
    double r_max_factor = MonteCarloConfig::kDefaultRmaxFactor;
    bool tail_correction = true;
};

struct LoadedConfig {
    std::vector<SweepSpec> sweeps;
    McSettings mc;
};

/// Parses and fully validates a sweep config file. Throws config_error with
/// file/line/key context on parse failures, and surfaces invariant
/// violations with the offending field named.
LoadedConfig load_config(const std::string& path);
LoadedConfig parse_config(std::istream& in, const std::string& origin);

/// One output row per grid point; self-describing (all inputs flattened).
struct ResultRow {
    std::string sweep_name;
    std::string axis;
    double axis_value = 0.0;
    double lambda_per_km2 = 0.0;
    double r0_m = 0.0;
    double eta = 0.0;
    double tx_power_w = 0.0;
    double noise_power_w = 0.0;
    double gamma0_db = 0.0;
    std::int64_t n = 0;
    double epsilon = 0.0;
    double T_linear = 0.0;
    std::string symbols;

    std::optional<double> avg_capacity;
    std::optional<double> avg_dispersion;
    std::optional<double> avg_coding_rate;
    std::optional<double> outage_lower;
    std::optional<double> outage_upper;
    std::optional<double> mc_rate;
    std::optional<double> mc_rate_stderr;
    std::optional<double> mc_outage;
    std::optional<double> mc_outage_stderr;
    std::optional<std::int64_t> mc_samples;
    std::optional<std::int64_t> runtime_ms;
    std::string error;  // empty when the point evaluated cleanly
};

struct RunOptions {
    bool mc_enabled = false;
    std::int64_t mc_samples = 100000;
    std::uint64_t seed = 1;
    int workers = 0;
    double r_max_factor = MonteCarloConfig::kDefaultRmaxFactor;
    bool tail_correction = true;
    /// Wall-clock timing is off by default so identical runs produce
    /// identical bytes.
    bool timing = false;
};

/// Evaluates every grid point of every sweep in deterministic order
/// (spec order x axis order). A failing point records its error in the row
/// and the run continues.
std::vector<ResultRow> run_sweep(const std::vector<SweepSpec>& specs, const RunOptions& opts);

enum class OutputFormat { csv, json };

/// Fixed CSV column order, RFC 4180 quoting, floats at 12 significant digits.
std::string emit_csv(const std::vector<ResultRow>& rows);
std::string emit_json(const std::vector<ResultRow>& rows);

/// Writes rows to path (or stdout when path is "-").
void emit(const std::vector<ResultRow>& rows, OutputFormat format, const std::string& path);

/// Parses rows back from CSV text (used by round-trip checks and plotting
/// fixtures). Optional fields left empty come back unset.
std::vector<ResultRow> parse_result_csv(const std::string& csv);

} // namespace fblnet
