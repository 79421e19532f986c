#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "combforge/types.hpp"

namespace combforge {

enum class Parity { even, odd };

struct HarmonicLine {
    int index = 0;             // k >= 1
    double frequency_Hz = 0.0; // exactly k * nu
    double power_W = 0.0;      // delivered to the load
    Parity parity = Parity::even;

    bool operator==(const HarmonicLine&) const = default;
};

// Per-harmonic comb power over a resistive load, from a record spanning an
// integer number of drive periods.
struct Spectrum {
    double drive_frequency_Hz = 0.0;
    double record_duration_s = 0.0;
    double load_resistance_ohm = 0.0;
    std::vector<HarmonicLine> harmonics;

    bool operator==(const Spectrum&) const = default;
};

// Finite-record Fourier amplitude with the e^{+i omega t} kernel,
//   V(f) = sum_i V_i e^{i 2 pi f t_i} dt   (volt seconds).
// When drive_frequency_Hz is given, the record is required to span an
// integer number of those periods (NonCommensurate otherwise); leakage
// would corrupt harmonic powers.
std::complex<double> fourier_component(const TimeSeries& series, double frequency_Hz,
                                       std::optional<double> drive_frequency_Hz = std::nullopt);

// Amplitudes at harmonics 1..k_max of nu, subject to the same commensurate
// and bandwidth checks as harmonic_power.
std::vector<std::complex<double>> harmonic_amplitudes(const TimeSeries& series,
                                                      double drive_frequency_Hz, int k_max);

// One-sided line power at each harmonic: P_k = 2 |V(k nu)|^2 / (T^2 R_L),
// the single-bin PSD integral folded over +/- frequencies, so a pure tone
// A sin(2 pi k nu t) yields A^2 / (2 R_L). Requires k_max * nu <= 1/(4 dt).
Spectrum harmonic_power(const TimeSeries& series, double drive_frequency_Hz, int k_max,
                        double load_resistance_ohm);

// Spectrum assembled from precomputed amplitudes (shared by the ensemble
// pipelines, which combine per-bin amplitudes by linearity).
Spectrum spectrum_from_amplitudes(std::span<const std::complex<double>> amplitudes,
                                  double drive_frequency_Hz, double record_duration_s,
                                  double load_resistance_ohm);

// Arithmetic mean of per-harmonic powers. All inputs must agree on drive
// frequency, harmonic count, and load (MixedConfig otherwise).
Spectrum average_spectrum(std::span<const Spectrum> spectra);

} // namespace combforge
