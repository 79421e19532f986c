#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "combforge/ensemble.hpp"
#include "combforge/types.hpp"

namespace combforge {

// Declarative run description mirroring the domain types plus analysis
// options. Defaults are the Nb/AlOx/Nb array values: R = 20 ohm,
// I_+ = 100 uA, delta = 1e-3, eps = 0.9, nu = 1 GHz, R_L = 50 ohm, N = 50.
struct RunConfig {
    SquidParams squid;
    DriveConfig drive;
    int samples_per_period = 65536;
    int periods_total = 4;
    int periods_transient = 2;
    int n_squids = 50;
    double load_resistance_ohm = 50.0;
    DisorderSpec disorder;
    int k_max = 120;
    std::string output_dir = "combforge-out";
    std::vector<std::string> outputs = {"waveform", "spectrum", "pulses"};

    void validate() const;
    SimGrid make_grid() const;
    ArrayConfig make_array() const;
    bool wants(std::string_view output) const;
};

struct LoadedConfig {
    RunConfig config;
    nlohmann::json file_values = nlohmann::json::object();
    std::vector<std::string> overrides;
    std::optional<std::string> source_path;
};

// Parses a JSON config file (empty or whitespace-only files mean "all
// defaults"), applies key=value overrides after the file values, validates
// every invariant. Unknown keys are errors.
LoadedConfig load_config(const std::optional<std::filesystem::path>& path,
                         const std::vector<std::string>& overrides);

// Applies overrides on top of an existing config (used by scenario overlays).
void apply_override(RunConfig& config, const std::string& key_equals_value);

// Canonical resolved form: one sorted flat object, stable across runs.
nlohmann::json resolved_json(const RunConfig& config);

std::string sha256_hex(std::string_view data);
std::string config_sha256(const RunConfig& config);

// resolved_config.json with full provenance: resolved values, the values the
// file supplied, and the override list.
void write_resolved_config(const LoadedConfig& loaded, const std::filesystem::path& out_dir);

} // namespace combforge
