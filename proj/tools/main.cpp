#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fblnet/fbl.hpp"
#include "fblnet/interference.hpp"
#include "fblnet/montecarlo.hpp"
#include "fblnet/sweep.hpp"

namespace {

std::vector<double> parse_grid(const std::string& text) {
    auto bad = [&](const std::string& why) {
        throw CLI::ValidationError("--z", why + " in '" + text + "'");
    };
    std::vector<double> out;
    if (text.rfind("lin:", 0) == 0 || text.rfind("log:", 0) == 0) {
        const bool log = text[1] == 'o';
        double start = 0, stop = 0;
        long count = 0;
        if (std::sscanf(text.c_str() + 4, "%lf:%lf:%ld", &start, &stop, &count) != 3 || count < 1)
            bad("expected start:stop:count");
        if (log && (start <= 0 || stop <= 0)) bad("log grid endpoints must be > 0");
        for (long i = 0; i < count; ++i) {
            const double f = count == 1 ? 0.0 : double(i) / double(count - 1);
            out.push_back(log ? std::exp(std::log(start) + f * (std::log(stop) - std::log(start)))
                              : start + f * (stop - start));
        }
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            bad("cannot parse '" + item + "'");
        }
    }
    if (out.empty()) bad("empty grid");
    return out;
}

int run_analyze(const std::string& config_path, bool mc, std::uint64_t seed, int workers,
                const std::string& format, const std::string& out_path, long long mc_samples,
                bool timing) {
    fblnet::LoadedConfig cfg;
    try {
        cfg = fblnet::load_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }

    fblnet::RunOptions opts;
    opts.mc_enabled = mc;
    opts.mc_samples = mc_samples > 0 ? mc_samples : cfg.mc.samples;
    opts.seed = seed;
    opts.workers = workers;
    opts.r_max_factor = cfg.mc.r_max_factor;
    opts.tail_correction = cfg.mc.tail_correction;
    opts.timing = timing;

    const auto rows = fblnet::run_sweep(cfg.sweeps, opts);
    const auto fmt = format == "json" ? fblnet::OutputFormat::json : fblnet::OutputFormat::csv;
    try {
        fblnet::emit(rows, fmt, out_path);
    } catch (const std::exception& e) {
        std::cerr << "output error: " << e.what() << "\n";
        return 1;
    }

    int failures = 0;
    for (const auto& r : rows) {
        if (!r.error.empty()) {
            ++failures;
            std::cerr << "point failed: sweep=" << r.sweep_name << " " << r.axis << "="
                      << r.axis_value << ": " << r.error << "\n";
        }
    }
    return failures == 0 ? 0 : 2;
}

int run_validate(const std::string& config_path) {
    try {
        const auto cfg = fblnet::load_config(config_path);
        std::size_t points = 0;
        for (const auto& s : cfg.sweeps) points += s.axis_values.size();
        std::cout << "ok: " << cfg.sweeps.size() << " sweep group(s), " << points
                  << " grid point(s)\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
}

int run_oracle_lt(const std::string& z_text, double lambda_per_km2, double r0, double eta,
                  double tx_power, const std::string& symbols, bool mc, long long mc_samples,
                  std::uint64_t seed, int truncation_k) {
    fblnet::NetworkParams params;
    params.lambda_density = lambda_per_km2 * 1e-6;
    params.r0 = r0;
    params.eta = eta;
    params.tx_power = tx_power;
    params.noise_power = 1.0;
    params.validate();

    fblnet::SymbolMomentModel moments = symbols == "constant"
                                            ? fblnet::SymbolMomentModel::constant_modulus()
                                            : fblnet::SymbolMomentModel::gaussian_codebook();

    const std::vector<double> zs = parse_grid(z_text);

    std::vector<fblnet::Estimate> mc_vals;
    if (mc) {
        fblnet::MonteCarloConfig cfg;
        cfg.num_samples = mc_samples;
        cfg.seed = seed;
        mc_vals = fblnet::mc_laplace_B_grid(zs, params, moments, cfg);
    }

    std::printf("%14s %16s %16s %16s", "z", "series", "closed_eta4", "quadrature");
    if (mc) std::printf(" %16s %12s", "mc", "mc_stderr");
    std::printf("\n");

    for (std::size_t i = 0; i < zs.size(); ++i) {
        const double z = zs[i];
        std::string series;
        try {
            const auto s = fblnet::lt_B_series(z, params, moments, truncation_k);
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.10g", s.value);
            series = buf;
            if (s.last_term_magnitude > 1e-7) series += "?";  // poorly truncated
        } catch (const fblnet::series_divergence_error&) {
            series = "divergent";
        }
        std::string closed = "n/a";
        if (params.eta == 4.0) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.10g", fblnet::lt_B_eta4(z, params));
            closed = buf;
        }
        const double quad = fblnet::lt_B_quadrature(z, params, moments);
        std::printf("%14.6g %16s %16s %16.10g", z, series.c_str(), closed.c_str(), quad);
        if (mc) std::printf(" %16.10g %12.4g", mc_vals[i].value, mc_vals[i].std_error);
        std::printf("\n");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Large-scale network performance in the finite-blocklength regime"};
    app.require_subcommand(1);

    // analyze
    std::string config_path;
    bool mc = false;
    std::uint64_t seed = 1;
    int workers = 0;
    std::string format = "csv";
    std::string out_path = "-";
    long long mc_samples = 0;
    bool timing = false;

    auto* analyze = app.add_subcommand("analyze", "Run the sweeps of a config file");
    analyze->add_option("--config", config_path, "Sweep config file")->required();
    analyze->add_flag("--mc", mc, "Also compute Monte Carlo columns");
    analyze->add_option("--seed", seed, "Monte Carlo seed");
    analyze->add_option("--workers", workers, "Worker threads (0 = auto)");
    analyze->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    analyze->add_option("--out", out_path, "Output path ('-' = stdout)");
    analyze->add_option("--mc-samples", mc_samples, "Override [mc] samples from the config");
    analyze->add_flag("--timing", timing,
                      "Populate runtime_ms (off by default to keep output bytes reproducible)");

    // validate
    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Dry-run invariant check of a config file");
    validate->add_option("--config", validate_path, "Sweep config file")->required();

    // oracle lt
    std::string z_text;
    double o_lambda = 1.0, o_r0 = 250.0, o_eta = 4.0, o_power = 1.0;
    std::string o_symbols = "gaussian";
    bool o_mc = false;
    long long o_mc_samples = 100000;
    std::uint64_t o_seed = 1;
    int o_k = 30;

    auto* oracle = app.add_subcommand("oracle", "Cross-checks of low-level primitives");
    auto* lt = oracle->add_subcommand("lt", "Interference Laplace transform, all routes side by side");
    lt->add_option("--z", z_text, "z grid: comma list, lin:a:b:k or log:a:b:k")->required();
    lt->add_option("--lambda-per-km2", o_lambda, "BS density");
    lt->add_option("--r0-m", o_r0, "Exclusion radius, m");
    lt->add_option("--eta", o_eta, "Path-loss exponent");
    lt->add_option("--tx-power-w", o_power, "Transmit power, W");
    lt->add_option("--symbols", o_symbols, "Symbol model")
        ->check(CLI::IsMember({"gaussian", "constant"}));
    lt->add_flag("--mc", o_mc, "Also run the shot-noise Monte Carlo");
    lt->add_option("--mc-samples", o_mc_samples, "Monte Carlo samples");
    lt->add_option("--seed", o_seed, "Monte Carlo seed");
    lt->add_option("--truncation-k", o_k, "Series truncation");
    oracle->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze)
            return run_analyze(config_path, mc, seed, workers, format, out_path, mc_samples, timing);
        if (*validate) return run_validate(validate_path);
        if (*oracle)
            return run_oracle_lt(z_text, o_lambda, o_r0, o_eta, o_power, o_symbols, o_mc,
                                 o_mc_samples, o_seed, o_k);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
