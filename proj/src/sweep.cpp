#include "fblnet/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace fblnet {

const char* to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::gamma0_db: return "gamma0_db";
        case SweepAxis::r0_m: return "r0_m";
        case SweepAxis::lambda_per_km2: return "lambda_per_km2";
        case SweepAxis::n: return "n";
        case SweepAxis::epsilon: return "epsilon";
        case SweepAxis::T_db: return "T_db";
    }
    return "?";
}

namespace {

std::optional<SweepAxis> axis_from_string(const std::string& s) {
    if (s == "gamma0_db") return SweepAxis::gamma0_db;
    if (s == "r0_m") return SweepAxis::r0_m;
    if (s == "lambda_per_km2") return SweepAxis::lambda_per_km2;
    if (s == "n") return SweepAxis::n;
    if (s == "epsilon") return SweepAxis::epsilon;
    if (s == "T_db") return SweepAxis::T_db;
    return std::nullopt;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

} // namespace

SweepSpec::Point SweepSpec::materialize(double axis_value) const {
    double lambda_km2 = lambda_per_km2;
    double r0 = r0_m;
    std::int64_t point_n = n;
    double point_eps = epsilon;
    double point_T = T_linear;

    switch (axis) {
        case SweepAxis::gamma0_db: break;
        case SweepAxis::r0_m: r0 = axis_value; break;
        case SweepAxis::lambda_per_km2: lambda_km2 = axis_value; break;
        case SweepAxis::n: {
            const double rounded = std::round(axis_value);
            if (std::abs(axis_value - rounded) > 1e-9)
                throw std::invalid_argument("sweep '" + name + "': blocklength n must be an integer");
            point_n = static_cast<std::int64_t>(rounded);
            break;
        }
        case SweepAxis::epsilon: point_eps = axis_value; break;
        case SweepAxis::T_db: point_T = db_to_linear(axis_value); break;
    }

    NetworkParams params;
    params.lambda_density = lambda_km2 * 1e-6;  // BS/km^2 -> BS/m^2
    params.r0 = r0;
    params.eta = eta;
    params.noise_power = noise_power_w;

    switch (power_rule) {
        case PowerRule::from_axis:
            if (axis != SweepAxis::gamma0_db)
                throw std::invalid_argument("sweep '" + name + "': power rule requires gamma0_db axis");
            params.tx_power = db_to_linear(axis_value) * noise_power_w * std::pow(r0, eta);
            break;
        case PowerRule::fixed_tx:
            params.tx_power = tx_power_w;
            break;
        case PowerRule::fixed_gamma0:
            params.tx_power = db_to_linear(gamma0_db) * noise_power_w * std::pow(r0, eta);
            break;
        case PowerRule::gamma0_at_ref:
            params.tx_power = db_to_linear(gamma0_db_ref) * noise_power_w * std::pow(r0_ref_m, eta);
            break;
    }
    params.validate();

    FblParams fbl{point_n, point_eps};
    fbl.validate();
    SinrThreshold thr = SinrThreshold::from_linear(point_T);

    SymbolMomentModel moments;
    moments.kind = symbols;

    return {params, fbl, thr, moments, axis_value};
}

void SweepSpec::validate() const {
    if (name.empty()) throw std::invalid_argument("sweep name must not be empty");
    if (axis_values.empty())
        throw std::invalid_argument("sweep '" + name + "': values list is empty");
    for (double v : axis_values) (void)materialize(v);
}

namespace {

class ConfigParser {
public:
    ConfigParser(std::istream& in, std::string origin) : in_(in), origin_(std::move(origin)) {}

    LoadedConfig parse() {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            strip_comment(line);
            const std::string t = trim(line);
            if (t.empty()) continue;
            if (t.front() == '[') {
                open_section(t);
            } else {
                key_value(t);
            }
        }
        finish_sweep();
        for (const auto& s : cfg_.sweeps) s.validate();
        return std::move(cfg_);
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        std::ostringstream out;
        out << origin_ << ":" << line_no_ << ": " << msg;
        throw config_error(out.str());
    }

    static void strip_comment(std::string& line) {
        const auto pos = line.find('#');
        if (pos != std::string::npos) line.erase(pos);
    }

    static std::string trim(const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) return {};
        const auto e = s.find_last_not_of(" \t\r\n");
        return s.substr(b, e - b + 1);
    }

    void open_section(const std::string& t) {
        if (t.back() != ']') fail("malformed section header");
        const std::string section = trim(t.substr(1, t.size() - 2));
        if (section == "sweep") {
            finish_sweep();
            in_sweep_ = true;
            keys_.clear();
            current_ = SweepSpec{};
        } else if (section == "mc") {
            finish_sweep();
            in_sweep_ = false;
        } else {
            fail("unknown section [" + section + "] (expected [sweep] or [mc])");
        }
        seen_section_ = true;
    }

    void key_value(const std::string& t) {
        if (!seen_section_) fail("key outside of any section");
        const auto eq = t.find('=');
        if (eq == std::string::npos) fail("expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty()) fail("empty key");
        if (value.empty()) fail("empty value for key '" + key + "'");
        if (in_sweep_) {
            if (!keys_.insert(key).second) fail("duplicate key '" + key + "' in sweep");
            sweep_key(key, value);
        } else {
            mc_key(key, value);
        }
    }

    double parse_double(const std::string& key, const std::string& value) const {
        try {
            std::size_t used = 0;
            const double v = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument("trailing characters");
            return v;
        } catch (const std::exception&) {
            fail("key '" + key + "': cannot parse '" + value + "' as a number");
        }
    }

    std::int64_t parse_int(const std::string& key, const std::string& value) const {
        try {
            std::size_t used = 0;
            const std::int64_t v = std::stoll(value, &used);
            if (used != value.size()) throw std::invalid_argument("trailing characters");
            return v;
        } catch (const std::exception&) {
            fail("key '" + key + "': cannot parse '" + value + "' as an integer");
        }
    }

    bool parse_bool(const std::string& key, const std::string& value) const {
        if (value == "true" || value == "1" || value == "on") return true;
        if (value == "false" || value == "0" || value == "off") return false;
        fail("key '" + key + "': expected true/false");
    }

    std::vector<double> parse_values(const std::string& value) const {
        std::vector<double> out;
        if (value.rfind("lin:", 0) == 0 || value.rfind("log:", 0) == 0) {
            const bool log = value[1] == 'o';
            std::vector<std::string> parts;
            std::stringstream ss(value.substr(4));
            std::string item;
            while (std::getline(ss, item, ':')) parts.push_back(item);
            if (parts.size() != 3) fail("values: expected lin:start:stop:count");
            const double start = parse_double("values", parts[0]);
            const double stop = parse_double("values", parts[1]);
            const std::int64_t count = parse_int("values", parts[2]);
            if (count < 1) fail("values: count must be >= 1");
            if (log && (start <= 0.0 || stop <= 0.0)) fail("values: log grid endpoints must be > 0");
            for (std::int64_t i = 0; i < count; ++i) {
                const double f = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
                out.push_back(log ? std::exp(std::log(start) + f * (std::log(stop) - std::log(start)))
                                  : start + f * (stop - start));
            }
            return out;
        }
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const std::string v = trim(item);
            if (v.empty()) fail("values: empty list entry");
            out.push_back(parse_double("values", v));
        }
        if (out.empty()) fail("values: empty list");
        return out;
    }

    void sweep_key(const std::string& key, const std::string& value) {
        if (key == "name") {
            current_.name = value;
        } else if (key == "axis") {
            const auto a = axis_from_string(value);
            if (!a) fail("unknown axis '" + value +
                         "' (one of gamma0_db, r0_m, lambda_per_km2, n, epsilon, T_db)");
            current_.axis = *a;
        } else if (key == "values") {
            current_.axis_values = parse_values(value);
        } else if (key == "lambda_per_km2") {
            current_.lambda_per_km2 = parse_double(key, value);
        } else if (key == "r0_m") {
            current_.r0_m = parse_double(key, value);
        } else if (key == "eta") {
            current_.eta = parse_double(key, value);
        } else if (key == "noise_power_w") {
            current_.noise_power_w = parse_double(key, value);
        } else if (key == "n") {
            current_.n = parse_int(key, value);
        } else if (key == "epsilon") {
            const double e = parse_double(key, value);
            if (!(e > 0.0 && e < 0.5))
                fail("key 'epsilon': value " + value + " violates the (0, 0.5) bound");
            current_.epsilon = e;
        } else if (key == "T_linear") {
            current_.T_linear = parse_double(key, value);
            note_threshold(key);
        } else if (key == "T_db") {
            current_.T_linear = db_to_linear(parse_double(key, value));
            note_threshold(key);
        } else if (key == "rate_bits") {
            const double r = parse_double(key, value);
            if (!(r >= 0.0)) fail("key 'rate_bits': must be >= 0");
            current_.T_linear = std::exp2(r) - 1.0;
            note_threshold(key);
        } else if (key == "symbols") {
            if (value == "gaussian") current_.symbols = SymbolMomentModel::Kind::gaussian_codebook;
            else if (value == "constant") current_.symbols = SymbolMomentModel::Kind::constant_modulus;
            else fail("key 'symbols': expected gaussian or constant");
        } else if (key == "tx_power_w") {
            current_.tx_power_w = parse_double(key, value);
            note_power(SweepSpec::PowerRule::fixed_tx);
        } else if (key == "gamma0_db") {
            current_.gamma0_db = parse_double(key, value);
            note_power(SweepSpec::PowerRule::fixed_gamma0);
        } else if (key == "gamma0_db_ref") {
            current_.gamma0_db_ref = parse_double(key, value);
            saw_gamma_ref_ = true;
        } else if (key == "r0_ref_m") {
            current_.r0_ref_m = parse_double(key, value);
            saw_r0_ref_ = true;
        } else {
            fail("unknown key '" + key + "' in [sweep]");
        }
    }

    void note_threshold(const std::string& key) {
        if (saw_threshold_) fail("key '" + key + "': threshold already given (use exactly one of T_linear, T_db, rate_bits)");
        saw_threshold_ = true;
    }

    void note_power(SweepSpec::PowerRule rule) {
        if (saw_power_) fail("transmit power already pinned (use exactly one of tx_power_w, gamma0_db, gamma0_db_ref+r0_ref_m)");
        saw_power_ = true;
        current_.power_rule = rule;
    }

    void mc_key(const std::string& key, const std::string& value) {
        if (key == "samples") {
            cfg_.mc.samples = parse_int(key, value);
            if (cfg_.mc.samples < 1) fail("key 'samples': must be >= 1");
        } else if (key == "r_max_factor") {
            cfg_.mc.r_max_factor = parse_double(key, value);
            if (!(cfg_.mc.r_max_factor > 1.0)) fail("key 'r_max_factor': must be > 1");
        } else if (key == "tail_correction") {
            cfg_.mc.tail_correction = parse_bool(key, value);
        } else {
            fail("unknown key '" + key + "' in [mc]");
        }
    }

    void finish_sweep() {
        if (!in_sweep_) return;
        in_sweep_ = false;

        if (saw_gamma_ref_ || saw_r0_ref_) {
            if (!(saw_gamma_ref_ && saw_r0_ref_))
                fail("gamma0_db_ref and r0_ref_m must be given together");
            note_power(SweepSpec::PowerRule::gamma0_at_ref);
        }
        if (current_.axis == SweepAxis::gamma0_db) {
            if (saw_power_)
                fail("sweep '" + current_.name +
                     "': gamma0_db axis derives the transmit power; remove tx_power_w/gamma0_db keys");
            current_.power_rule = SweepSpec::PowerRule::from_axis;
        } else if (!saw_power_) {
            fail("sweep '" + current_.name +
                 "': transmit power unpinned (one of tx_power_w, gamma0_db, gamma0_db_ref+r0_ref_m)");
        }
        if (axis_fixed_key_given()) {
            fail("sweep '" + current_.name + "': the swept field '" +
                 std::string(to_string(current_.axis)) + "' must not also be fixed");
        }
        if (current_.axis == SweepAxis::T_db && saw_threshold_)
            fail("sweep '" + current_.name + "': T_db axis conflicts with a fixed threshold key");

        cfg_.sweeps.push_back(current_);
        saw_threshold_ = saw_power_ = saw_gamma_ref_ = saw_r0_ref_ = false;
    }

    bool axis_fixed_key_given() const {
        switch (current_.axis) {
            case SweepAxis::r0_m: return keys_.count("r0_m") > 0;
            case SweepAxis::lambda_per_km2: return keys_.count("lambda_per_km2") > 0;
            case SweepAxis::n: return keys_.count("n") > 0;
            case SweepAxis::epsilon: return keys_.count("epsilon") > 0;
            default: return false;
        }
    }

    std::istream& in_;
    std::string origin_;
    int line_no_ = 0;
    bool seen_section_ = false;
    bool in_sweep_ = false;
    bool saw_threshold_ = false;
    bool saw_power_ = false;
    bool saw_gamma_ref_ = false;
    bool saw_r0_ref_ = false;
    std::set<std::string> keys_;
    SweepSpec current_;
    LoadedConfig cfg_;
};

} // namespace

LoadedConfig parse_config(std::istream& in, const std::string& origin) {
    return ConfigParser(in, origin).parse();
}

LoadedConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error(path + ": cannot open config file");
    return parse_config(in, path);
}

namespace {

std::string format_g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

const char* kColumns[] = {
    "sweep",        "axis",          "axis_value",   "lambda_per_km2", "r0_m",
    "eta",          "tx_power_w",    "noise_power_w", "gamma0_db",     "n",
    "epsilon",      "T_linear",      "symbols",      "avg_capacity",   "avg_dispersion",
    "avg_coding_rate", "outage_lower", "outage_upper", "mc_rate",      "mc_rate_stderr",
    "mc_outage",    "mc_outage_stderr", "mc_samples", "runtime_ms",    "error"};

} // namespace

std::vector<ResultRow> run_sweep(const std::vector<SweepSpec>& specs, const RunOptions& opts) {
    std::vector<ResultRow> rows;
    for (const auto& spec : specs) {
        for (double av : spec.axis_values) {
            ResultRow row;
            row.sweep_name = spec.name;
            row.axis = to_string(spec.axis);
            row.axis_value = av;
            const auto start = std::chrono::steady_clock::now();
            try {
                const SweepSpec::Point pt = spec.materialize(av);
                row.lambda_per_km2 = pt.params.lambda_density * 1e6;
                row.r0_m = pt.params.r0;
                row.eta = pt.params.eta;
                row.tx_power_w = pt.params.tx_power;
                row.noise_power_w = pt.params.noise_power;
                row.gamma0_db = linear_to_db(pt.params.gamma0());
                row.n = pt.fbl.blocklength_n;
                row.epsilon = pt.fbl.epsilon;
                row.T_linear = pt.thr.T;
                row.symbols = pt.moments.kind == SymbolMomentModel::Kind::constant_modulus
                                  ? "constant"
                                  : "gaussian";

                const QuadratureSpec qspec;
                row.avg_capacity = avg_capacity(pt.params, pt.moments, qspec);
                row.avg_dispersion = avg_dispersion(pt.params, pt.moments, qspec);
                const RateResult rate = avg_coding_rate(pt.params, pt.fbl, pt.moments, qspec);
                row.avg_coding_rate = rate.rate;
                row.outage_lower = outage_lower(pt.params, pt.thr, pt.fbl, pt.moments, qspec);
                row.outage_upper = outage_upper(pt.params, pt.thr, pt.fbl, pt.moments, qspec);

                if (opts.mc_enabled) {
                    MonteCarloConfig mc;
                    mc.num_samples = opts.mc_samples;
                    mc.seed = opts.seed;
                    mc.workers = opts.workers;
                    mc.r_max = opts.r_max_factor * pt.params.r0;
                    mc.tail_correction = opts.tail_correction;
                    const Estimate mrate = mc_avg_coding_rate(pt.params, pt.fbl, pt.moments, mc);
                    const Estimate moutage = mc_outage(pt.params, pt.thr, pt.fbl, pt.moments, mc);
                    row.mc_rate = mrate.value;
                    row.mc_rate_stderr = mrate.std_error;
                    row.mc_outage = moutage.value;
                    row.mc_outage_stderr = moutage.std_error;
                    row.mc_samples = mrate.num_samples;
                }
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            if (opts.timing) {
                row.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                     std::chrono::steady_clock::now() - start)
                                     .count();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

namespace {

std::string opt_str(const std::optional<double>& v) { return v ? format_g12(*v) : std::string(); }
std::string opt_str(const std::optional<std::int64_t>& v) {
    return v ? std::to_string(*v) : std::string();
}

} // namespace

std::string emit_csv(const std::vector<ResultRow>& rows) {
    std::ostringstream out;
    for (std::size_t i = 0; i < std::size(kColumns); ++i) {
        if (i) out << ',';
        out << kColumns[i];
    }
    out << '\n';
    for (const auto& r : rows) {
        out << csv_quote(r.sweep_name) << ',' << r.axis << ',' << format_g12(r.axis_value) << ','
            << format_g12(r.lambda_per_km2) << ',' << format_g12(r.r0_m) << ',' << format_g12(r.eta)
            << ',' << format_g12(r.tx_power_w) << ',' << format_g12(r.noise_power_w) << ','
            << format_g12(r.gamma0_db) << ',' << r.n << ',' << format_g12(r.epsilon) << ','
            << format_g12(r.T_linear) << ',' << r.symbols << ',' << opt_str(r.avg_capacity) << ','
            << opt_str(r.avg_dispersion) << ',' << opt_str(r.avg_coding_rate) << ','
            << opt_str(r.outage_lower) << ',' << opt_str(r.outage_upper) << ','
            << opt_str(r.mc_rate) << ',' << opt_str(r.mc_rate_stderr) << ','
            << opt_str(r.mc_outage) << ',' << opt_str(r.mc_outage_stderr) << ','
            << opt_str(r.mc_samples) << ',' << opt_str(r.runtime_ms) << ','
            << csv_quote(r.error) << '\n';
    }
    return out.str();
}

namespace {

using ordered_json = nlohmann::ordered_json;

void put_opt(ordered_json& j, const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v; else j[key] = nullptr;
}
void put_opt(ordered_json& j, const char* key, const std::optional<std::int64_t>& v) {
    if (v) j[key] = *v; else j[key] = nullptr;
}

} // namespace

std::string emit_json(const std::vector<ResultRow>& rows) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json j;
        j["sweep"] = r.sweep_name;
        j["axis"] = r.axis;
        j["axis_value"] = r.axis_value;
        j["lambda_per_km2"] = r.lambda_per_km2;
        j["r0_m"] = r.r0_m;
        j["eta"] = r.eta;
        j["tx_power_w"] = r.tx_power_w;
        j["noise_power_w"] = r.noise_power_w;
        j["gamma0_db"] = r.gamma0_db;
        j["n"] = r.n;
        j["epsilon"] = r.epsilon;
        j["T_linear"] = r.T_linear;
        j["symbols"] = r.symbols;
        put_opt(j, "avg_capacity", r.avg_capacity);
        put_opt(j, "avg_dispersion", r.avg_dispersion);
        put_opt(j, "avg_coding_rate", r.avg_coding_rate);
        put_opt(j, "outage_lower", r.outage_lower);
        put_opt(j, "outage_upper", r.outage_upper);
        put_opt(j, "mc_rate", r.mc_rate);
        put_opt(j, "mc_rate_stderr", r.mc_rate_stderr);
        put_opt(j, "mc_outage", r.mc_outage);
        put_opt(j, "mc_outage_stderr", r.mc_outage_stderr);
        put_opt(j, "mc_samples", r.mc_samples);
        put_opt(j, "runtime_ms", r.runtime_ms);
        j["error"] = r.error;
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

void emit(const std::vector<ResultRow>& rows, OutputFormat format, const std::string& path) {
    const std::string payload = format == OutputFormat::csv ? emit_csv(rows) : emit_json(rows);
    if (path == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << payload;
    if (!out) throw std::runtime_error(path + ": write failed");
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::optional<double> opt_double(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return std::stod(s);
}
std::optional<std::int64_t> opt_int(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return std::stoll(s);
}

} // namespace

std::vector<ResultRow> parse_result_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("CSV: missing header");
    const auto header = split_csv_line(line);
    const std::vector<std::string> expected(std::begin(kColumns), std::end(kColumns));
    if (std::vector<std::string>(header.begin(), header.end()) != expected)
        throw std::runtime_error("CSV: unexpected header");

    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != expected.size()) throw std::runtime_error("CSV: bad field count");
        ResultRow r;
        r.sweep_name = f[0];
        r.axis = f[1];
        r.axis_value = std::stod(f[2]);
        r.lambda_per_km2 = std::stod(f[3]);
        r.r0_m = std::stod(f[4]);
        r.eta = std::stod(f[5]);
        r.tx_power_w = std::stod(f[6]);
        r.noise_power_w = std::stod(f[7]);
        r.gamma0_db = std::stod(f[8]);
        r.n = std::stoll(f[9]);
        r.epsilon = std::stod(f[10]);
        r.T_linear = std::stod(f[11]);
        r.symbols = f[12];
        r.avg_capacity = opt_double(f[13]);
        r.avg_dispersion = opt_double(f[14]);
        r.avg_coding_rate = opt_double(f[15]);
        r.outage_lower = opt_double(f[16]);
        r.outage_upper = opt_double(f[17]);
        r.mc_rate = opt_double(f[18]);
        r.mc_rate_stderr = opt_double(f[19]);
        r.mc_outage = opt_double(f[20]);
        r.mc_outage_stderr = opt_double(f[21]);
        r.mc_samples = opt_int(f[22]);
        r.runtime_ms = opt_int(f[23]);
        r.error = f[24];
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace fblnet
