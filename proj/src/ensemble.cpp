#include "combforge/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "combforge/dynamics.hpp"
#include "combforge/errors.hpp"
#include "combforge/parallel.hpp"
#include "combforge/rng.hpp"

namespace combforge {

namespace {

using std::numbers::pi;

constexpr std::uint64_t axis_stream(DisorderAxis axis) {
    return axis == DisorderAxis::area ? 0u : 1u;
}

constexpr long long realization_chunk = 256;

[[noreturn]] void rethrow_tagged(const std::string& tag) {
    try {
        throw;
    } catch (const NonConvergence& e) {
        throw NonConvergence(tag + e.what());
    } catch (const InvalidGrid& e) {
        throw InvalidGrid(tag + e.what());
    } catch (const Error& e) {
        throw Error(tag + e.what());
    }
}

SquidParams cell_params(const ArrayConfig& config, const DisorderSpec& spec,
                        std::optional<double> zeta_area, std::optional<double> zeta_asym) {
    SquidParams p = config.base;
    if (zeta_area) p.area_perturbation = *zeta_area;
    if (zeta_asym) p.asymmetry = spec.preferential_asymmetry + *zeta_asym;
    return p;
}

TimeSeries zero_series_like(const ArrayConfig& config) {
    TimeSeries s;
    s.kind = SeriesKind::voltage;
    s.dt_s = config.grid.sample_interval_s(config.drive.frequency_Hz);
    const auto first = static_cast<double>(config.grid.periods_transient()) *
                           config.grid.samples_per_period() + 1.0;
    s.t0_s = first * s.dt_s;
    s.values.assign(config.grid.retained_samples(), 0.0);
    return s;
}

// Bin histogram of one realization's draws along one axis.
std::vector<long long> axis_counts(const CounterRng& rng, double sigma, DisorderAxis axis,
                                   int n_squids, long long realization, int n_bins) {
    std::vector<long long> counts(static_cast<std::size_t>(n_bins), 0);
    for (int i = 0; i < n_squids; ++i) {
        const double z = sigma * rng.normal(static_cast<std::uint64_t>(realization),
                                            static_cast<std::uint64_t>(i), axis_stream(axis));
        counts[static_cast<std::size_t>(nearest_bin(z, sigma, n_bins))] += 1;
    }
    return counts;
}

Spectrum spectrum_from_powers(std::vector<double> powers, double drive_frequency_Hz,
                              double record_duration_s, double load_resistance_ohm) {
    Spectrum s;
    s.drive_frequency_Hz = drive_frequency_Hz;
    s.record_duration_s = record_duration_s;
    s.load_resistance_ohm = load_resistance_ohm;
    s.harmonics.resize(powers.size());
    for (std::size_t i = 0; i < powers.size(); ++i) {
        HarmonicLine& line = s.harmonics[i];
        line.index = static_cast<int>(i + 1);
        line.frequency_Hz = static_cast<double>(line.index) * drive_frequency_Hz;
        line.power_W = powers[i];
        line.parity = line.index % 2 == 0 ? Parity::even : Parity::odd;
    }
    return s;
}

EnsembleMetadata make_metadata(const DisorderSpec& spec, const ArrayConfig& config) {
    return EnsembleMetadata{spec.seed, spec.n_realizations, spec.n_bins,
                            config.drive.bias == 0.0};
}

} // namespace

double effective_resistance(double shunt_resistance_ohm, double load_resistance_ohm,
                            int n_squids) {
    if (!(shunt_resistance_ohm > 0.0)) throw ValidationError("shunt resistance must be positive");
    if (!(load_resistance_ohm > 0.0)) throw ValidationError("load resistance must be positive");
    if (n_squids < 1) throw ValidationError("array needs at least one SQUID");
    return shunt_resistance_ohm * load_resistance_ohm /
           (load_resistance_ohm + n_squids * shunt_resistance_ohm);
}

SwitchTimePrediction predicted_switch_time(double area_perturbation, const DriveConfig& drive,
                                           int node_index) {
    drive.validate();
    if (node_index < 0) throw ValidationError("node index must be non-negative");
    const double nu = drive.frequency_Hz;
    const double argument = area_perturbation / (drive.amplitude * (1.0 + area_perturbation));
    if (!(std::abs(argument) <= 1.0))
        throw OutOfRange("switch-time arccos argument " + std::to_string(argument) +
                         " outside [-1, 1]: this SQUID never reaches the node");
    SwitchTimePrediction prediction;
    prediction.exact_s =
        std::acos(argument) / (2.0 * pi * nu) + static_cast<double>(node_index) / (2.0 * nu);
    prediction.linearized_s =
        drive.node_time_s(node_index) - area_perturbation / (2.0 * pi * nu * drive.amplitude);
    return prediction;
}

double switch_time_spread(double sigma_area, const DriveConfig& drive) {
    drive.validate();
    if (!(sigma_area >= 0.0)) throw ValidationError("sigma_area must be non-negative");
    if (sigma_area == 0.0) return 0.0;
    if (drive.amplitude == 0.0)
        throw ValidationError("switch-time spread undefined for a zero-amplitude drive");
    return sigma_area / (2.0 * pi * drive.amplitude * drive.frequency_Hz);
}

ArrayConfig::ArrayConfig(int n, double load_ohm, SquidParams base_params, DriveConfig drive_config,
                         SimGrid sim_grid)
    : n_squids(n),
      load_resistance_ohm(load_ohm),
      base(base_params),
      drive(drive_config),
      grid(sim_grid) {
    base.validate();
    drive.validate();
    effective_resistance(base.shunt_resistance_ohm, load_resistance_ohm, n_squids);
}

void DisorderSpec::validate() const {
    if (!(sigma_area >= 0.0)) throw ValidationError("sigma_area must be non-negative");
    if (!(sigma_asymmetry >= 0.0)) throw ValidationError("sigma_asymmetry must be non-negative");
    if (!(std::abs(preferential_asymmetry) + 4.0 * sigma_asymmetry < 1.0))
        throw ValidationError("|r_0| + 4 sigma_r < 1 violated: sampled asymmetry could leave "
                              "(-1, 1) across the binned support");
    if (n_bins < 1) throw ValidationError("n_bins must be at least 1");
    if (n_realizations < 1) throw ValidationError("n_realizations must be at least 1");
    if (max_combined_bins < 1) throw ValidationError("max_combined_bins must be at least 1");
}

std::vector<double> bin_centers(double sigma, int n_bins) {
    if (n_bins < 1) throw ValidationError("n_bins must be at least 1");
    if (sigma == 0.0) return {0.0};
    const double width = 8.0 * sigma / n_bins;
    std::vector<double> centers(static_cast<std::size_t>(n_bins));
    for (int i = 0; i < n_bins; ++i)
        centers[static_cast<std::size_t>(i)] = -4.0 * sigma + (i + 0.5) * width;
    return centers;
}

int nearest_bin(double value, double sigma, int n_bins) {
    if (sigma == 0.0 || n_bins == 1) return 0;
    const double width = 8.0 * sigma / n_bins;
    const auto raw = static_cast<long long>(std::floor((value + 4.0 * sigma) / width));
    return static_cast<int>(std::clamp<long long>(raw, 0, n_bins - 1));
}

BinTable build_bins(DisorderAxis axis, const DisorderSpec& spec, const ArrayConfig& config) {
    spec.validate();
    const double sigma = axis == DisorderAxis::area ? spec.sigma_area : spec.sigma_asymmetry;

    BinTable table;
    table.axis = axis;
    table.centers = bin_centers(sigma, spec.n_bins);
    table.waveforms.resize(table.centers.size());

    const double r_eff = config.effective_resistance_ohm();
    parallel_for_index(table.centers.size(), [&](std::size_t b) {
        const double center = table.centers[b];
        const SquidParams params =
            axis == DisorderAxis::area
                ? cell_params(config, spec, center, std::nullopt)
                : cell_params(config, spec, std::nullopt, center);
        try {
            table.waveforms[b] = simulate_squid(params, config.drive, config.grid, r_eff);
        } catch (...) {
            rethrow_tagged("bin " + std::to_string(b) + " (center " + std::to_string(center) +
                           "): ");
        }
    });
    return table;
}

TimeSeries sample_realization(const BinTable& table, const DisorderSpec& spec, int n_squids,
                              long long realization_index) {
    if (table.waveforms.empty()) throw ValidationError("bin table is empty");
    const double sigma =
        table.axis == DisorderAxis::area ? spec.sigma_area : spec.sigma_asymmetry;
    const int n_bins = static_cast<int>(table.centers.size());
    const CounterRng rng(spec.seed);
    const auto counts = axis_counts(rng, sigma, table.axis, n_squids, realization_index, n_bins);

    TimeSeries total = table.waveforms.front();
    std::fill(total.values.begin(), total.values.end(), 0.0);
    for (std::size_t b = 0; b < counts.size(); ++b) {
        if (counts[b] == 0) continue;
        const double weight = static_cast<double>(counts[b]);
        const auto& wave = table.waveforms[b].values;
        for (std::size_t i = 0; i < total.values.size(); ++i)
            total.values[i] += weight * wave[i];
    }
    return total;
}

EnsembleResult typical_voltage(const BinTable& table, const DisorderSpec& spec,
                               const ArrayConfig& config) {
    if (table.waveforms.empty()) throw ValidationError("bin table is empty");
    spec.validate();
    const double sigma =
        table.axis == DisorderAxis::area ? spec.sigma_area : spec.sigma_asymmetry;
    const int n_bins = static_cast<int>(table.centers.size());
    const CounterRng rng(spec.seed);

    // Total bin occupation over every realization; integer, so the parallel
    // chunk order cannot affect the result.
    const long long n_real = spec.n_realizations;
    const auto n_chunks =
        static_cast<std::size_t>((n_real + realization_chunk - 1) / realization_chunk);
    std::vector<std::vector<long long>> partial(n_chunks);
    parallel_for_index(n_chunks, [&](std::size_t chunk) {
        std::vector<long long> counts(static_cast<std::size_t>(n_bins), 0);
        const long long begin = static_cast<long long>(chunk) * realization_chunk;
        const long long end = std::min(begin + realization_chunk, n_real);
        for (long long j = begin; j < end; ++j) {
            for (int i = 0; i < config.n_squids; ++i) {
                const double z =
                    sigma * rng.normal(static_cast<std::uint64_t>(j),
                                       static_cast<std::uint64_t>(i), axis_stream(table.axis));
                counts[static_cast<std::size_t>(nearest_bin(z, sigma, n_bins))] += 1;
            }
        }
        partial[chunk] = std::move(counts);
    });
    std::vector<long long> total_counts(static_cast<std::size_t>(n_bins), 0);
    for (const auto& counts : partial)
        for (std::size_t b = 0; b < counts.size(); ++b) total_counts[b] += counts[b];

    EnsembleResult result;
    result.typical_voltage = table.waveforms.front();
    auto& typ = result.typical_voltage.values;
    std::fill(typ.begin(), typ.end(), 0.0);
    for (std::size_t b = 0; b < total_counts.size(); ++b) {
        if (total_counts[b] == 0) continue;
        const double weight = static_cast<double>(total_counts[b]);
        const auto& wave = table.waveforms[b].values;
        for (std::size_t i = 0; i < typ.size(); ++i) typ[i] += weight * wave[i];
    }
    const double inv = 1.0 / static_cast<double>(n_real);
    for (double& v : typ) v *= inv;

    result.metadata = make_metadata(spec, config);
    result.metadata.n_bins = n_bins;
    return result;
}

EnsembleSpectra ensemble_spectra(const BinTable& table, const DisorderSpec& spec,
                                 const ArrayConfig& config, int k_max) {
    if (table.waveforms.empty()) throw ValidationError("bin table is empty");
    spec.validate();
    const double nu = config.drive.frequency_Hz;
    const std::size_t n_bins = table.centers.size();
    const double sigma =
        table.axis == DisorderAxis::area ? spec.sigma_area : spec.sigma_asymmetry;

    // Per-bin Fourier amplitudes; realization amplitudes follow by linearity.
    std::vector<std::vector<std::complex<double>>> bin_amps(n_bins);
    parallel_for_index(n_bins, [&](std::size_t b) {
        bin_amps[b] = harmonic_amplitudes(table.waveforms[b], nu, k_max);
    });

    const double duration = table.waveforms.front().duration_s();
    const CounterRng rng(spec.seed);
    const long long n_real = spec.n_realizations;
    const auto n_chunks =
        static_cast<std::size_t>((n_real + realization_chunk - 1) / realization_chunk);
    const auto kcount = static_cast<std::size_t>(k_max);

    std::vector<std::vector<double>> power_partial(n_chunks);
    std::vector<std::complex<double>> first_amps(kcount);
    parallel_for_index(n_chunks, [&](std::size_t chunk) {
        std::vector<double> power_sum(kcount, 0.0);
        std::vector<std::complex<double>> amps(kcount);
        const long long begin = static_cast<long long>(chunk) * realization_chunk;
        const long long end = std::min(begin + realization_chunk, n_real);
        const double norm = 2.0 / (duration * duration * config.load_resistance_ohm);
        for (long long j = begin; j < end; ++j) {
            const auto counts = axis_counts(rng, sigma, table.axis, config.n_squids, j,
                                            static_cast<int>(n_bins));
            std::fill(amps.begin(), amps.end(), std::complex<double>{0.0, 0.0});
            for (std::size_t b = 0; b < n_bins; ++b) {
                if (counts[b] == 0) continue;
                const double weight = static_cast<double>(counts[b]);
                const auto& source = bin_amps[b];
                for (std::size_t k = 0; k < kcount; ++k) amps[k] += weight * source[k];
            }
            for (std::size_t k = 0; k < kcount; ++k) power_sum[k] += norm * std::norm(amps[k]);
            if (j == 0) first_amps = amps;
        }
        power_partial[chunk] = std::move(power_sum);
    });

    std::vector<double> mean_power(kcount, 0.0);
    for (const auto& power_sum : power_partial)
        for (std::size_t k = 0; k < kcount; ++k) mean_power[k] += power_sum[k];
    const double inv = 1.0 / static_cast<double>(n_real);
    for (double& p : mean_power) p *= inv;

    EnsembleSpectra spectra;
    spectra.average =
        spectrum_from_powers(std::move(mean_power), nu, duration, config.load_resistance_ohm);
    spectra.first_realization =
        spectrum_from_amplitudes(first_amps, nu, duration, config.load_resistance_ohm);
    return spectra;
}

namespace {

struct CombinedGrid {
    std::vector<double> area_centers;
    std::vector<double> asym_centers;

    std::size_t cells() const { return area_centers.size() * asym_centers.size(); }
};

CombinedGrid make_combined_grid(const DisorderSpec& spec) {
    spec.validate();
    CombinedGrid grid;
    grid.area_centers = bin_centers(spec.sigma_area, spec.n_bins);
    grid.asym_centers = bin_centers(spec.sigma_asymmetry, spec.n_bins);
    if (grid.cells() > static_cast<std::size_t>(spec.max_combined_bins))
        throw BudgetExceeded("combined grid needs " + std::to_string(grid.cells()) +
                             " simulations, above the cap of " +
                             std::to_string(spec.max_combined_bins));
    return grid;
}

// Sorted (cell, multiplicity) pairs for one realization.
std::vector<std::pair<int, int>> combined_cells(const CounterRng& rng, const DisorderSpec& spec,
                                                const CombinedGrid& grid, int n_squids,
                                                long long realization) {
    const int n_asym = static_cast<int>(grid.asym_centers.size());
    std::vector<int> raw(static_cast<std::size_t>(n_squids));
    for (int i = 0; i < n_squids; ++i) {
        const double za = spec.sigma_area * rng.normal(static_cast<std::uint64_t>(realization),
                                                       static_cast<std::uint64_t>(i), 0);
        const double zr = spec.sigma_asymmetry *
                          rng.normal(static_cast<std::uint64_t>(realization),
                                     static_cast<std::uint64_t>(i), 1);
        const int ia = nearest_bin(za, spec.sigma_area, static_cast<int>(grid.area_centers.size()));
        const int ir = nearest_bin(zr, spec.sigma_asymmetry, n_asym);
        raw[static_cast<std::size_t>(i)] = ia * n_asym + ir;
    }
    std::sort(raw.begin(), raw.end());
    std::vector<std::pair<int, int>> runs;
    for (std::size_t i = 0; i < raw.size();) {
        std::size_t j = i;
        while (j < raw.size() && raw[j] == raw[i]) ++j;
        runs.emplace_back(raw[i], static_cast<int>(j - i));
        i = j;
    }
    return runs;
}

TimeSeries simulate_cell(const CombinedGrid& grid, const DisorderSpec& spec,
                         const ArrayConfig& config, double r_eff, int cell) {
    const int n_asym = static_cast<int>(grid.asym_centers.size());
    const int ia = cell / n_asym;
    const int ir = cell % n_asym;
    const SquidParams params = cell_params(config, spec, grid.area_centers[ia],
                                           grid.asym_centers[ir]);
    try {
        return simulate_squid(params, config.drive, config.grid, r_eff);
    } catch (...) {
        rethrow_tagged("cell (" + std::to_string(ia) + "," + std::to_string(ir) + "): ");
    }
}

} // namespace

TimeSeries combined_disorder_realization(const DisorderSpec& spec, const ArrayConfig& config,
                                         long long realization_index) {
    const CombinedGrid grid = make_combined_grid(spec);
    const CounterRng rng(spec.seed);
    const auto runs = combined_cells(rng, spec, grid, config.n_squids, realization_index);
    const double r_eff = config.effective_resistance_ohm();

    TimeSeries total = zero_series_like(config);
    for (const auto& [cell, count] : runs) {
        const TimeSeries wave = simulate_cell(grid, spec, config, r_eff, cell);
        const double weight = count;
        for (std::size_t i = 0; i < total.values.size(); ++i)
            total.values[i] += weight * wave.values[i];
    }
    return total;
}

CombinedEnsembleResult run_combined_ensemble(const DisorderSpec& spec, const ArrayConfig& config,
                                             int k_max) {
    const CombinedGrid grid = make_combined_grid(spec);
    const CounterRng rng(spec.seed);
    const double r_eff = config.effective_resistance_ohm();
    const double nu = config.drive.frequency_Hz;
    const long long n_real = spec.n_realizations;
    const auto kcount = static_cast<std::size_t>(k_max);

    // Pass 1: total cell occupation across all realizations.
    const auto n_chunks =
        static_cast<std::size_t>((n_real + realization_chunk - 1) / realization_chunk);
    std::vector<std::vector<long long>> occupation_partial(n_chunks);
    parallel_for_index(n_chunks, [&](std::size_t chunk) {
        std::vector<long long> occupation(grid.cells(), 0);
        const long long begin = static_cast<long long>(chunk) * realization_chunk;
        const long long end = std::min(begin + realization_chunk, n_real);
        for (long long j = begin; j < end; ++j)
            for (const auto& [cell, count] : combined_cells(rng, spec, grid, config.n_squids, j))
                occupation[static_cast<std::size_t>(cell)] += count;
        occupation_partial[chunk] = std::move(occupation);
    });
    std::vector<long long> occupation(grid.cells(), 0);
    for (const auto& part : occupation_partial)
        for (std::size_t c = 0; c < part.size(); ++c) occupation[c] += part[c];

    std::vector<int> touched;
    std::vector<int> cell_to_touched(grid.cells(), -1);
    for (std::size_t c = 0; c < occupation.size(); ++c) {
        if (occupation[c] > 0) {
            cell_to_touched[c] = static_cast<int>(touched.size());
            touched.push_back(static_cast<int>(c));
        }
    }

    // Pass 2: simulate each touched cell once. Waveforms live only within
    // their chunk; amplitudes are kept, and the typical-voltage accumulation
    // walks cells in index order so the result is schedule-independent.
    CombinedEnsembleResult result;
    result.typical_voltage = zero_series_like(config);
    result.cells_simulated = touched.size();
    auto& typ = result.typical_voltage.values;
    std::vector<std::vector<std::complex<double>>> cell_amps(touched.size());

    const std::size_t sim_chunk = std::max<std::size_t>(8, 2 * static_cast<std::size_t>(thread_budget()));
    std::vector<TimeSeries> chunk_waves(sim_chunk);
    for (std::size_t begin = 0; begin < touched.size(); begin += sim_chunk) {
        const std::size_t end = std::min(begin + sim_chunk, touched.size());
        parallel_for_index(end - begin, [&](std::size_t offset) {
            const std::size_t t = begin + offset;
            chunk_waves[offset] = simulate_cell(grid, spec, config, r_eff, touched[t]);
            cell_amps[t] = harmonic_amplitudes(chunk_waves[offset], nu, k_max);
        });
        for (std::size_t offset = 0; offset < end - begin; ++offset) {
            const std::size_t t = begin + offset;
            const double weight =
                static_cast<double>(occupation[static_cast<std::size_t>(touched[t])]);
            const auto& wave = chunk_waves[offset].values;
            for (std::size_t i = 0; i < typ.size(); ++i) typ[i] += weight * wave[i];
        }
    }
    const double inv = 1.0 / static_cast<double>(n_real);
    for (double& v : typ) v *= inv;

    // Pass 3: per-realization spectra from the cell amplitudes.
    const double duration = result.typical_voltage.duration_s();
    std::vector<std::vector<double>> power_partial(n_chunks);
    std::vector<std::complex<double>> first_amps(kcount);
    parallel_for_index(n_chunks, [&](std::size_t chunk) {
        std::vector<double> power_sum(kcount, 0.0);
        std::vector<std::complex<double>> amps(kcount);
        const long long begin = static_cast<long long>(chunk) * realization_chunk;
        const long long end = std::min(begin + realization_chunk, n_real);
        const double norm = 2.0 / (duration * duration * config.load_resistance_ohm);
        for (long long j = begin; j < end; ++j) {
            std::fill(amps.begin(), amps.end(), std::complex<double>{0.0, 0.0});
            for (const auto& [cell, count] : combined_cells(rng, spec, grid, config.n_squids, j)) {
                const auto& source = cell_amps[static_cast<std::size_t>(cell_to_touched[cell])];
                const double weight = count;
                for (std::size_t k = 0; k < kcount; ++k) amps[k] += weight * source[k];
            }
            for (std::size_t k = 0; k < kcount; ++k) power_sum[k] += norm * std::norm(amps[k]);
            if (j == 0) first_amps = amps;
        }
        power_partial[chunk] = std::move(power_sum);
    });
    std::vector<double> mean_power(kcount, 0.0);
    for (const auto& power_sum : power_partial)
        for (std::size_t k = 0; k < kcount; ++k) mean_power[k] += power_sum[k];
    for (double& p : mean_power) p *= inv;

    result.average =
        spectrum_from_powers(std::move(mean_power), nu, duration, config.load_resistance_ohm);
    result.first_realization =
        spectrum_from_amplitudes(first_amps, nu, duration, config.load_resistance_ohm);
    result.metadata = make_metadata(spec, config);
    return result;
}

} // namespace combforge
