#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "combforge/config.hpp"

namespace combforge {

// Frozen figure-reproduction runs plus the N-scaling sweep.
enum class ScenarioId {
    fig2_inductance_pulses,
    fig3_inductance_spectrum,
    fig4_capacitance_pulses,
    fig5_area_pulses,
    fig6_area_spectrum,
    fig7_asymmetry_pulses,
    fig8_realistic_spectrum,
    n_scaling_sweep,
};

std::vector<std::string> scenario_names();
std::string scenario_name(ScenarioId id);
std::optional<ScenarioId> parse_scenario(std::string_view name);

struct ScenarioOptions {
    std::filesystem::path out_dir;
    bool quick = false; // N_real = 500, outputs flagged reduced-accuracy
    std::optional<std::uint64_t> seed;
};

// Everything deterministic about a run lives under "content"; wall-clock
// timing is kept outside it so repeated runs compare equal.
struct Manifest {
    nlohmann::json content;
    double runtime_seconds = 0.0;
};

// Executes one scenario, writing CSV artifacts, resolved_config.json, and
// manifest.json into options.out_dir.
Manifest run_scenario(ScenarioId id, const ScenarioOptions& options);

// The `simulate` pipeline: ideal array when both sigmas are zero, the
// binned ensemble on one axis, or the two-axis combined ensemble. Writes
// into config.output_dir.
Manifest run_simulate(const LoadedConfig& loaded);

} // namespace combforge
