#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "combforge/spectrum.hpp"
#include "combforge/types.hpp"

namespace combforge {

// Shunt resistance seen by each SQUID of an N-element array driving a load:
//   R_eff = R R_L / (R_L + N R),
// strictly positive and strictly decreasing in N.
double effective_resistance(double shunt_resistance_ohm, double load_resistance_ohm, int n_squids);

// Node-crossing time of a SQUID whose area deviates by zeta_A:
//   exact      t = arccos[ zeta_A / (eps (1 + zeta_A)) ] / (2 pi nu) + k/(2 nu)
//   linearized t = t_k - zeta_A / (2 pi nu eps).
// Larger SQUIDs (zeta_A > 0) switch before t_k. Throws OutOfRange when the
// arccos argument leaves [-1, 1] (the flux never reaches the node).
struct SwitchTimePrediction {
    double exact_s = 0.0;
    double linearized_s = 0.0;
};
SwitchTimePrediction predicted_switch_time(double area_perturbation, const DriveConfig& drive,
                                           int node_index);

// Standard deviation of the switch-time distribution under Gaussian area
// disorder: lambda_A = sigma_A / (2 pi eps nu).
double switch_time_spread(double sigma_area, const DriveConfig& drive);

// A linear array of nominally identical SQUIDs coupled to a resistive load.
struct ArrayConfig {
    int n_squids;
    double load_resistance_ohm;
    SquidParams base;
    DriveConfig drive;
    SimGrid grid;

    ArrayConfig(int n, double load_ohm, SquidParams base_params, DriveConfig drive_config,
                SimGrid sim_grid);

    double effective_resistance_ohm() const {
        return effective_resistance(base.shunt_resistance_ohm, load_resistance_ohm, n_squids);
    }
};

// Gaussian fabrication disorder plus the Monte Carlo controls of the binned
// resampling estimator.
struct DisorderSpec {
    double sigma_area = 0.0;            // sigma_A
    double sigma_asymmetry = 0.0;       // sigma_r
    double preferential_asymmetry = 0.0; // r_0
    int n_bins = 201;
    long long n_realizations = 10000;
    std::uint64_t seed = 12345;
    int max_combined_bins = 10000; // cap on the two-axis grid size

    void validate() const;
};

enum class DisorderAxis { area, asymmetry };

// Midpoints of n_bins equal-width bins spanning [-4 sigma, +4 sigma].
std::vector<double> bin_centers(double sigma, int n_bins);

// Nearest bin center for a draw; values beyond +/- 4 sigma clamp to the
// outermost bin.
int nearest_bin(double value, double sigma, int n_bins);

// One simulated waveform per bin center of the chosen axis. Area bins vary
// zeta_A at the base asymmetry; asymmetry bins vary r = r_0 + zeta at the
// base area. sigma = 0 degenerates to a single bin at zeta = 0.
struct BinTable {
    DisorderAxis axis = DisorderAxis::area;
    std::vector<double> centers;
    std::vector<TimeSeries> waveforms;
};

BinTable build_bins(DisorderAxis axis, const DisorderSpec& spec, const ArrayConfig& config);

// Array voltage of one disorder realization: N Gaussian draws from the
// deterministic stream keyed by (seed, realization_index, squid_index),
// nearest-bin lookup, and the per-bin waveforms combined in ascending-center
// order with integer multiplicities. Bit-identical for fixed inputs
// regardless of execution order or thread count.
TimeSeries sample_realization(const BinTable& table, const DisorderSpec& spec, int n_squids,
                              long long realization_index);

struct EnsembleMetadata {
    std::uint64_t seed = 0;
    long long n_realizations = 0;
    int n_bins = 0;
    bool zero_bias = false; // bias = 0 gives pulses no preferred sign
};

struct EnsembleResult {
    TimeSeries typical_voltage;
    std::optional<Spectrum> per_realization_spectra_summary;
    EnsembleMetadata metadata;
};

// V_typ(t) = (1/N_real) sum_j V^(j)(t), accumulated from total bin counts so
// the result is deterministic and independent of scheduling.
EnsembleResult typical_voltage(const BinTable& table, const DisorderSpec& spec,
                               const ArrayConfig& config);

// Per-realization power spectra, averaged and for realization 0. Realization
// amplitudes are formed from per-bin Fourier amplitudes by linearity.
struct EnsembleSpectra {
    Spectrum average;
    Spectrum first_realization;
};
EnsembleSpectra ensemble_spectra(const BinTable& table, const DisorderSpec& spec,
                                 const ArrayConfig& config, int k_max);

// One realization with independent Gaussian area and asymmetry draws on a
// two-axis bin grid (area x asymmetry, simulated per touched cell, asymmetry
// centered on r_0). Throws BudgetExceeded when the full grid would exceed
// spec.max_combined_bins simulations.
TimeSeries combined_disorder_realization(const DisorderSpec& spec, const ArrayConfig& config,
                                         long long realization_index);

// Streaming two-axis ensemble: typical voltage plus averaged and
// first-realization spectra, simulating every touched cell exactly once.
struct CombinedEnsembleResult {
    TimeSeries typical_voltage;
    Spectrum average;
    Spectrum first_realization;
    EnsembleMetadata metadata;
    std::size_t cells_simulated = 0;
};
CombinedEnsembleResult run_combined_ensemble(const DisorderSpec& spec, const ArrayConfig& config,
                                             int k_max);

} // namespace combforge
