#include "combforge/scenarios.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "combforge/csv.hpp"
#include "combforge/dynamics.hpp"
#include "combforge/errors.hpp"
#include "combforge/version.hpp"

namespace combforge {

namespace {

using nlohmann::json;

struct ScenarioEntry {
    ScenarioId id;
    const char* name;
};

constexpr ScenarioEntry registry[] = {
    {ScenarioId::fig2_inductance_pulses, "fig2_inductance_pulses"},
    {ScenarioId::fig3_inductance_spectrum, "fig3_inductance_spectrum"},
    {ScenarioId::fig4_capacitance_pulses, "fig4_capacitance_pulses"},
    {ScenarioId::fig5_area_pulses, "fig5_area_pulses"},
    {ScenarioId::fig6_area_spectrum, "fig6_area_spectrum"},
    {ScenarioId::fig7_asymmetry_pulses, "fig7_asymmetry_pulses"},
    {ScenarioId::fig8_realistic_spectrum, "fig8_realistic_spectrum"},
    {ScenarioId::n_scaling_sweep, "n_scaling_sweep"},
};

TimeSeries scaled(TimeSeries series, double factor) {
    for (double& v : series.values) v *= factor;
    return series;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read back " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Collects artifacts and their hashes for the manifest.
class ArtifactWriter {
public:
    explicit ArtifactWriter(std::filesystem::path out_dir) : out_dir_(std::move(out_dir)) {
        std::filesystem::create_directories(out_dir_);
    }

    const std::filesystem::path& dir() const { return out_dir_; }

    void add_timeseries(const std::string& name, const TimeSeries& series) {
        emit_timeseries_csv(series, out_dir_ / name);
        record(name);
    }
    void add_spectrum(const std::string& name, const Spectrum& spectrum) {
        emit_spectrum_csv(spectrum, out_dir_ / name);
        record(name);
    }
    void add_pulses(const std::string& name, const std::vector<PulseMetrics>& pulses) {
        emit_pulse_metrics_csv(pulses, out_dir_ / name);
        record(name);
    }
    void add_raw(const std::string& name, const std::string& content) {
        const auto path = out_dir_ / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot write " + path.string());
        out << content;
        out.flush();
        if (!out) throw IoError("write failed for " + path.string());
        record(name);
    }

    void note(const std::string& key, json value) { notes_[key] = std::move(value); }

    Manifest finalize(const std::string& run_name, const LoadedConfig& loaded,
                      double runtime_seconds) {
        write_resolved_config(loaded, out_dir_);
        record("resolved_config.json");

        Manifest manifest;
        manifest.content["run"] = run_name;
        manifest.content["version"] = version_string;
        manifest.content["seed"] = loaded.config.disorder.seed;
        manifest.content["config_sha256"] = config_sha256(loaded.config);
        manifest.content["notes"] = notes_;
        manifest.content["files"] = files_;
        manifest.runtime_seconds = runtime_seconds;

        json full;
        full["content"] = manifest.content;
        full["timing"] = {{"runtime_seconds", runtime_seconds}};
        const auto path = out_dir_ / "manifest.json";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot write " + path.string());
        out << full.dump(2) << '\n';
        out.flush();
        if (!out) throw IoError("write failed for " + path.string());
        return manifest;
    }

private:
    void record(const std::string& name) {
        const std::string bytes = read_file(out_dir_ / name);
        files_.push_back({{"path", name}, {"sha256", sha256_hex(bytes)}, {"bytes", bytes.size()}});
    }

    std::filesystem::path out_dir_;
    json notes_ = json::object();
    json files_ = json::array();
};

RunConfig scenario_base(const ScenarioOptions& options) {
    RunConfig cfg; // Nb array defaults
    cfg.output_dir = ".";
    if (options.seed) cfg.disorder.seed = *options.seed;
    if (options.quick) cfg.disorder.n_realizations = 500;
    return cfg;
}

LoadedConfig as_loaded(const RunConfig& cfg) {
    LoadedConfig loaded;
    loaded.config = cfg;
    return loaded;
}

std::string tag_of(double value, double unit, const std::string& suffix) {
    const double scaled_value = value / unit;
    std::ostringstream out;
    out << scaled_value;
    std::string digits = out.str();
    for (char& c : digits)
        if (c == '.') c = 'p';
    return digits + suffix;
}

// --- scenario bodies -------------------------------------------------------

void scenario_inductance(ArtifactWriter& writer, RunConfig cfg, bool spectra) {
    const double inductances_H[] = {0.0, 2e-12, 5e-12, 10e-12};
    writer.note("loop_inductance_H", json(inductances_H));
    for (const double lg : inductances_H) {
        cfg.squid.loop_inductance_H = lg;
        const ArrayConfig array = cfg.make_array();
        const TimeSeries single =
            simulate_squid(array.base, array.drive, array.grid, array.effective_resistance_ohm());
        const std::string tag = tag_of(lg, 1e-12, "pH");
        if (spectra) {
            const TimeSeries total = scaled(single, static_cast<double>(cfg.n_squids));
            writer.add_spectrum("spectrum_Lg" + tag + ".csv",
                                harmonic_power(total, cfg.drive.frequency_Hz, cfg.k_max,
                                               cfg.load_resistance_ohm));
        } else {
            writer.add_timeseries("waveform_Lg" + tag + ".csv", single);
            writer.add_pulses("pulses_Lg" + tag + ".csv",
                              voltage_pulse_metrics(single, cfg.drive));
        }
    }
}

void scenario_capacitance(ArtifactWriter& writer, RunConfig cfg) {
    const double capacitances_F[] = {0.0, 100e-15, 1e-12, 2.5e-12};
    writer.note("junction_capacitance_F", json(capacitances_F));
    for (const double c : capacitances_F) {
        cfg.squid.junction_capacitance_F = c;
        const ArrayConfig array = cfg.make_array();
        const TimeSeries single =
            simulate_squid(array.base, array.drive, array.grid, array.effective_resistance_ohm());
        const std::string tag = tag_of(c, 1e-15, "fF");
        writer.add_timeseries("waveform_C" + tag + ".csv", single);
        writer.add_pulses("pulses_C" + tag + ".csv", voltage_pulse_metrics(single, cfg.drive));
    }
}

void scenario_area_disorder(ArtifactWriter& writer, RunConfig cfg, bool spectra) {
    const double sigmas[] = {0.0, 0.01, 0.05};
    writer.note("sigma_area", json(sigmas));
    for (const double sigma : sigmas) {
        cfg.disorder.sigma_area = sigma;
        const ArrayConfig array = cfg.make_array();
        const BinTable table = build_bins(DisorderAxis::area, cfg.disorder, array);
        const std::string tag = tag_of(sigma, 1.0, "");
        if (spectra) {
            const EnsembleSpectra spec = ensemble_spectra(table, cfg.disorder, array, cfg.k_max);
            writer.add_spectrum("spectrum_avg_sigmaA" + tag + ".csv", spec.average);
        } else {
            const EnsembleResult typical = typical_voltage(table, cfg.disorder, array);
            writer.add_timeseries("waveform_typical_sigmaA" + tag + ".csv",
                                  typical.typical_voltage);
            writer.add_pulses("pulses_typical_sigmaA" + tag + ".csv",
                              voltage_pulse_metrics(typical.typical_voltage, cfg.drive));
        }
    }
}

void scenario_asymmetry_disorder(ArtifactWriter& writer, RunConfig cfg) {
    cfg.disorder.preferential_asymmetry = 0.01;
    cfg.squid.asymmetry = 0.01;
    const double sigmas[] = {0.0, 0.005, 0.01};
    writer.note("preferential_asymmetry_r0", 0.01);
    writer.note("sigma_asymmetry", json(sigmas));
    for (const double sigma : sigmas) {
        cfg.disorder.sigma_asymmetry = sigma;
        const ArrayConfig array = cfg.make_array();
        const BinTable table = build_bins(DisorderAxis::asymmetry, cfg.disorder, array);
        const EnsembleResult typical = typical_voltage(table, cfg.disorder, array);
        const std::string tag = tag_of(sigma, 1.0, "");
        writer.add_timeseries("waveform_typical_sigmaR" + tag + ".csv", typical.typical_voltage);
        writer.add_pulses("pulses_typical_sigmaR" + tag + ".csv",
                          voltage_pulse_metrics(typical.typical_voltage, cfg.drive));
    }
}

RunConfig fig8_config(const ScenarioOptions& options) {
    RunConfig cfg = scenario_base(options);
    cfg.squid.loop_inductance_H = 10e-12;
    cfg.squid.asymmetry = 0.01;
    cfg.disorder.sigma_area = 0.01;
    cfg.disorder.sigma_asymmetry = 0.005;
    cfg.disorder.preferential_asymmetry = 0.01;
    // Two-axis grid: 63 bins per axis keeps 63^2 = 3969 cell simulations
    // under the 10000 cap while the bin width stays at 0.127 sigma.
    cfg.disorder.n_bins = 63;
    return cfg;
}

void scenario_realistic(ArtifactWriter& writer, const RunConfig& cfg) {
    const ArrayConfig array = cfg.make_array();
    const CombinedEnsembleResult result =
        run_combined_ensemble(cfg.disorder, array, cfg.k_max);
    writer.note("cells_simulated", result.cells_simulated);
    writer.add_spectrum("spectrum_single.csv", result.first_realization);
    writer.add_spectrum("spectrum_average.csv", result.average);
    writer.add_timeseries("waveform_typical.csv", result.typical_voltage);
    writer.add_pulses("pulses_typical.csv",
                      voltage_pulse_metrics(result.typical_voltage, cfg.drive));
}

void scenario_scaling(ArtifactWriter& writer, RunConfig cfg) {
    // Narrow single-SQUID pulses at small N need the finer grid.
    cfg.samples_per_period = 1 << 17;
    const int sizes[] = {1, 2, 5, 50, 500};
    writer.note("n_squids", json(sizes));
    std::string csv = "N,R_eff_ohm,P20_W\n";
    for (const int n : sizes) {
        cfg.n_squids = n;
        const ArrayConfig array = cfg.make_array();
        const double r_eff = array.effective_resistance_ohm();
        const TimeSeries total =
            scaled(simulate_squid(array.base, array.drive, array.grid, r_eff),
                   static_cast<double>(n));
        const Spectrum spectrum =
            harmonic_power(total, cfg.drive.frequency_Hz, 20, cfg.load_resistance_ohm);
        csv += std::to_string(n) + ',' + format_float(r_eff) + ',' +
               format_float(spectrum.harmonics[19].power_W) + '\n';
    }
    writer.add_raw("scaling.csv", csv);
}

} // namespace

std::vector<std::string> scenario_names() {
    std::vector<std::string> names;
    for (const auto& entry : registry) names.emplace_back(entry.name);
    return names;
}

std::string scenario_name(ScenarioId id) {
    for (const auto& entry : registry)
        if (entry.id == id) return entry.name;
    throw ValidationError("unknown scenario id");
}

std::optional<ScenarioId> parse_scenario(std::string_view name) {
    for (const auto& entry : registry)
        if (name == entry.name) return entry.id;
    return std::nullopt;
}

Manifest run_scenario(ScenarioId id, const ScenarioOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    ArtifactWriter writer(options.out_dir);
    RunConfig cfg = id == ScenarioId::fig8_realistic_spectrum ? fig8_config(options)
                                                              : scenario_base(options);
    if (options.quick) writer.note("reduced_accuracy", true);

    switch (id) {
    case ScenarioId::fig2_inductance_pulses:
        scenario_inductance(writer, cfg, /*spectra=*/false);
        break;
    case ScenarioId::fig3_inductance_spectrum:
        scenario_inductance(writer, cfg, /*spectra=*/true);
        break;
    case ScenarioId::fig4_capacitance_pulses:
        scenario_capacitance(writer, cfg);
        break;
    case ScenarioId::fig5_area_pulses:
        scenario_area_disorder(writer, cfg, /*spectra=*/false);
        break;
    case ScenarioId::fig6_area_spectrum:
        scenario_area_disorder(writer, cfg, /*spectra=*/true);
        break;
    case ScenarioId::fig7_asymmetry_pulses:
        scenario_asymmetry_disorder(writer, cfg);
        break;
    case ScenarioId::fig8_realistic_spectrum:
        scenario_realistic(writer, cfg);
        break;
    case ScenarioId::n_scaling_sweep:
        scenario_scaling(writer, cfg);
        break;
    }

    if (cfg.drive.bias == 0.0) writer.note("zero_bias", true);
    const double runtime =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return writer.finalize(scenario_name(id), as_loaded(cfg), runtime);
}

Manifest run_simulate(const LoadedConfig& loaded) {
    const auto start = std::chrono::steady_clock::now();
    const RunConfig& cfg = loaded.config;
    ArtifactWriter writer(cfg.output_dir);
    const ArrayConfig array = cfg.make_array();

    const bool area = cfg.disorder.sigma_area > 0.0;
    const bool asym = cfg.disorder.sigma_asymmetry > 0.0;
    if (cfg.drive.bias == 0.0) writer.note("zero_bias", true);

    if (area && asym) {
        const CombinedEnsembleResult result =
            run_combined_ensemble(cfg.disorder, array, cfg.k_max);
        writer.note("pipeline", "combined_ensemble");
        writer.note("cells_simulated", result.cells_simulated);
        if (cfg.wants("waveform"))
            writer.add_timeseries("waveform_typical.csv", result.typical_voltage);
        if (cfg.wants("spectrum")) {
            writer.add_spectrum("spectrum_average.csv", result.average);
            writer.add_spectrum("spectrum_single.csv", result.first_realization);
        }
        if (cfg.wants("pulses"))
            writer.add_pulses("pulses_typical.csv",
                              voltage_pulse_metrics(result.typical_voltage, cfg.drive));
    } else if (area || asym) {
        const DisorderAxis axis = area ? DisorderAxis::area : DisorderAxis::asymmetry;
        writer.note("pipeline", area ? "area_ensemble" : "asymmetry_ensemble");
        const BinTable table = build_bins(axis, cfg.disorder, array);
        const EnsembleResult typical = typical_voltage(table, cfg.disorder, array);
        if (cfg.wants("waveform"))
            writer.add_timeseries("waveform_typical.csv", typical.typical_voltage);
        if (cfg.wants("spectrum")) {
            const EnsembleSpectra spectra = ensemble_spectra(table, cfg.disorder, array, cfg.k_max);
            writer.add_spectrum("spectrum_average.csv", spectra.average);
            writer.add_spectrum("spectrum_single.csv", spectra.first_realization);
        }
        if (cfg.wants("pulses"))
            writer.add_pulses("pulses_typical.csv",
                              voltage_pulse_metrics(typical.typical_voltage, cfg.drive));
    } else {
        writer.note("pipeline", "ideal_array");
        const TimeSeries single =
            simulate_squid(array.base, array.drive, array.grid, array.effective_resistance_ohm());
        const TimeSeries total = scaled(single, static_cast<double>(cfg.n_squids));
        if (cfg.wants("waveform")) writer.add_timeseries("waveform.csv", total);
        if (cfg.wants("spectrum"))
            writer.add_spectrum("spectrum.csv",
                                harmonic_power(total, cfg.drive.frequency_Hz, cfg.k_max,
                                               cfg.load_resistance_ohm));
        if (cfg.wants("pulses"))
            writer.add_pulses("pulses.csv", voltage_pulse_metrics(total, cfg.drive));
    }

    const double runtime =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return writer.finalize("simulate", loaded, runtime);
}

} // namespace combforge
