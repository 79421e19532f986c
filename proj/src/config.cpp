#include "combforge/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "combforge/errors.hpp"

namespace combforge {

namespace {

using nlohmann::json;

const std::vector<std::string> known_outputs = {"waveform", "spectrum", "pulses"};

double as_double(const json& value, const std::string& key) {
    if (!value.is_number())
        throw ValidationError("config key '" + key + "' must be a number");
    return value.get<double>();
}

long long as_integer(const json& value, const std::string& key) {
    if (value.is_number_integer()) return value.get<long long>();
    if (value.is_number()) {
        const double v = value.get<double>();
        if (std::floor(v) == v && std::abs(v) < 9.0e18) return static_cast<long long>(v);
    }
    throw ValidationError("config key '" + key + "' must be an integer");
}

std::uint64_t as_seed(const json& value, const std::string& key) {
    if (value.is_number_unsigned()) return value.get<std::uint64_t>();
    const long long v = as_integer(value, key);
    if (v < 0) throw ValidationError("config key '" + key + "' must be non-negative");
    return static_cast<std::uint64_t>(v);
}

void assign(RunConfig& cfg, const std::string& key, const json& value) {
    if (key == "shunt_resistance_ohm") cfg.squid.shunt_resistance_ohm = as_double(value, key);
    else if (key == "junction_capacitance_F") cfg.squid.junction_capacitance_F = as_double(value, key);
    else if (key == "critical_current_sum_A") cfg.squid.critical_current_sum_A = as_double(value, key);
    else if (key == "asymmetry_r") cfg.squid.asymmetry = as_double(value, key);
    else if (key == "loop_inductance_H") cfg.squid.loop_inductance_H = as_double(value, key);
    else if (key == "area_perturbation") cfg.squid.area_perturbation = as_double(value, key);
    else if (key == "drive_frequency_Hz") cfg.drive.frequency_Hz = as_double(value, key);
    else if (key == "drive_amplitude") cfg.drive.amplitude = as_double(value, key);
    else if (key == "bias_delta") cfg.drive.bias = as_double(value, key);
    else if (key == "samples_per_period") cfg.samples_per_period = static_cast<int>(as_integer(value, key));
    else if (key == "periods_total") cfg.periods_total = static_cast<int>(as_integer(value, key));
    else if (key == "periods_transient") cfg.periods_transient = static_cast<int>(as_integer(value, key));
    else if (key == "n_squids") cfg.n_squids = static_cast<int>(as_integer(value, key));
    else if (key == "load_resistance_ohm") cfg.load_resistance_ohm = as_double(value, key);
    else if (key == "sigma_area") cfg.disorder.sigma_area = as_double(value, key);
    else if (key == "sigma_asymmetry") cfg.disorder.sigma_asymmetry = as_double(value, key);
    else if (key == "preferential_asymmetry_r0") cfg.disorder.preferential_asymmetry = as_double(value, key);
    else if (key == "n_bins") cfg.disorder.n_bins = static_cast<int>(as_integer(value, key));
    else if (key == "n_realizations") cfg.disorder.n_realizations = as_integer(value, key);
    else if (key == "seed") cfg.disorder.seed = as_seed(value, key);
    else if (key == "max_combined_bins") cfg.disorder.max_combined_bins = static_cast<int>(as_integer(value, key));
    else if (key == "k_max") cfg.k_max = static_cast<int>(as_integer(value, key));
    else if (key == "output_dir") {
        if (!value.is_string()) throw ValidationError("config key 'output_dir' must be a string");
        cfg.output_dir = value.get<std::string>();
    } else if (key == "outputs") {
        if (!value.is_array()) throw ValidationError("config key 'outputs' must be an array");
        cfg.outputs.clear();
        for (const auto& item : value) {
            if (!item.is_string()) throw ValidationError("'outputs' entries must be strings");
            cfg.outputs.push_back(item.get<std::string>());
        }
    } else if (key == "dtau") {
        // Accepted as an alternative to samples_per_period; must divide 2*pi.
        try {
            const SimGrid probe(as_double(value, key), 2, 1);
            cfg.samples_per_period = probe.samples_per_period();
        } catch (const InvalidGrid& e) {
            throw ValidationError(std::string("dtau: ") + e.what());
        }
    } else {
        throw ValidationError("unknown config key '" + key + "'");
    }
}

} // namespace

void RunConfig::validate() const {
    squid.validate();
    drive.validate();
    disorder.validate();
    make_grid(); // grid invariants
    if (n_squids < 1) throw ValidationError("n_squids must be at least 1");
    if (!(load_resistance_ohm > 0.0))
        throw ValidationError("load_resistance_ohm: R_L > 0 violated");
    if (k_max < 1) throw ValidationError("k_max must be at least 1");
    if (output_dir.empty()) throw ValidationError("output_dir must not be empty");
    for (const auto& out : outputs) {
        if (std::find(known_outputs.begin(), known_outputs.end(), out) == known_outputs.end())
            throw ValidationError("unknown output '" + out +
                                  "' (expected waveform, spectrum, or pulses)");
    }
}

SimGrid RunConfig::make_grid() const {
    return SimGrid::with_samples_per_period(samples_per_period, periods_total, periods_transient);
}

ArrayConfig RunConfig::make_array() const {
    return ArrayConfig(n_squids, load_resistance_ohm, squid, drive, make_grid());
}

bool RunConfig::wants(std::string_view output) const {
    return std::find(outputs.begin(), outputs.end(), output) != outputs.end();
}

void apply_override(RunConfig& config, const std::string& key_equals_value) {
    const auto pos = key_equals_value.find('=');
    if (pos == std::string::npos || pos == 0)
        throw ValidationError("override '" + key_equals_value + "' is not of the form key=value");
    const std::string key = key_equals_value.substr(0, pos);
    const std::string raw = key_equals_value.substr(pos + 1);
    json value;
    if (key == "output_dir") {
        value = raw;
    } else {
        try {
            value = json::parse(raw);
        } catch (const json::parse_error&) {
            throw ValidationError("override value '" + raw + "' for key '" + key +
                                  "' is not a JSON literal");
        }
    }
    assign(config, key, value);
}

LoadedConfig load_config(const std::optional<std::filesystem::path>& path,
                         const std::vector<std::string>& overrides) {
    LoadedConfig loaded;
    if (path) {
        loaded.source_path = path->string();
        std::ifstream in(*path, std::ios::binary);
        if (!in) throw IoError("cannot open config file " + path->string());
        std::stringstream buffer;
        buffer << in.rdbuf();
        std::string text = buffer.str();
        const bool blank = std::all_of(text.begin(), text.end(), [](unsigned char c) {
            return std::isspace(c) != 0;
        });
        if (blank) text = "{}";
        try {
            loaded.file_values = json::parse(text);
        } catch (const json::parse_error& e) {
            throw ParseError("config file " + path->string() + ": " + e.what());
        }
        if (!loaded.file_values.is_object())
            throw ParseError("config file " + path->string() + " must hold a JSON object");
        for (const auto& [key, value] : loaded.file_values.items())
            assign(loaded.config, key, value);
    }
    for (const auto& entry : overrides) apply_override(loaded.config, entry);
    loaded.overrides = overrides;
    loaded.config.validate();
    return loaded;
}

nlohmann::json resolved_json(const RunConfig& config) {
    json j;
    j["shunt_resistance_ohm"] = config.squid.shunt_resistance_ohm;
    j["junction_capacitance_F"] = config.squid.junction_capacitance_F;
    j["critical_current_sum_A"] = config.squid.critical_current_sum_A;
    j["asymmetry_r"] = config.squid.asymmetry;
    j["loop_inductance_H"] = config.squid.loop_inductance_H;
    j["area_perturbation"] = config.squid.area_perturbation;
    j["drive_frequency_Hz"] = config.drive.frequency_Hz;
    j["drive_amplitude"] = config.drive.amplitude;
    j["bias_delta"] = config.drive.bias;
    j["samples_per_period"] = config.samples_per_period;
    j["periods_total"] = config.periods_total;
    j["periods_transient"] = config.periods_transient;
    j["n_squids"] = config.n_squids;
    j["load_resistance_ohm"] = config.load_resistance_ohm;
    j["sigma_area"] = config.disorder.sigma_area;
    j["sigma_asymmetry"] = config.disorder.sigma_asymmetry;
    j["preferential_asymmetry_r0"] = config.disorder.preferential_asymmetry;
    j["n_bins"] = config.disorder.n_bins;
    j["n_realizations"] = config.disorder.n_realizations;
    j["seed"] = config.disorder.seed;
    j["max_combined_bins"] = config.disorder.max_combined_bins;
    j["k_max"] = config.k_max;
    j["output_dir"] = config.output_dir;
    j["outputs"] = config.outputs;
    return j;
}

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

std::string config_sha256(const RunConfig& config) {
    return sha256_hex(resolved_json(config).dump());
}

void write_resolved_config(const LoadedConfig& loaded, const std::filesystem::path& out_dir) {
    json echo;
    echo["resolved"] = resolved_json(loaded.config);
    echo["resolved_sha256"] = config_sha256(loaded.config);
    echo["source_file"] = loaded.source_path ? json(*loaded.source_path) : json(nullptr);
    echo["file_values"] = loaded.file_values;
    echo["overrides"] = loaded.overrides;

    const auto path = out_dir / "resolved_config.json";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << echo.dump(2) << '\n';
    if (!out) throw IoError("write failed for " + path.string());
}

} // namespace combforge
