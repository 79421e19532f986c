#include "combforge/spectrum.hpp"

#include <cmath>
#include <string>

#include "combforge/errors.hpp"
#include "combforge/parallel.hpp"

namespace combforge {

namespace {

using std::numbers::pi;

// Steps between exact re-anchorings of the rotating phasor; bounds the
// accumulated rotation error at ~4096 ulps.
constexpr std::size_t resync_interval = 4096;

void require_commensurate(const TimeSeries& series, double drive_frequency_Hz) {
    const double periods = series.duration_s() * drive_frequency_Hz;
    const double nearest = std::round(periods);
    if (nearest < 1.0 || std::abs(periods - nearest) > 1e-9 * std::max(periods, 1.0))
        throw NonCommensurate("record spans " + std::to_string(periods) +
                              " drive periods; an integer count is required");
}

std::complex<double> phasor_sum(const TimeSeries& series, double omega) {
    const std::size_t n = series.values.size();
    const std::complex<double> step = std::polar(1.0, omega * series.dt_s);
    std::complex<double> acc{0.0, 0.0};
    std::complex<double> rot{1.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        if (i % resync_interval == 0) rot = std::polar(1.0, omega * series.time_at(i));
        acc += series.values[i] * rot;
        rot *= step;
    }
    return acc * series.dt_s;
}

} // namespace

std::complex<double> fourier_component(const TimeSeries& series, double frequency_Hz,
                                       std::optional<double> drive_frequency_Hz) {
    series.validate();
    if (drive_frequency_Hz) require_commensurate(series, *drive_frequency_Hz);
    return phasor_sum(series, 2.0 * pi * frequency_Hz);
}

std::vector<std::complex<double>> harmonic_amplitudes(const TimeSeries& series,
                                                      double drive_frequency_Hz, int k_max) {
    series.validate();
    if (!(drive_frequency_Hz > 0.0)) throw ValidationError("drive frequency must be positive");
    if (k_max < 1) throw ValidationError("k_max must be at least 1");
    require_commensurate(series, drive_frequency_Hz);
    const double usable_Hz = 1.0 / (4.0 * series.dt_s);
    if (static_cast<double>(k_max) * drive_frequency_Hz > usable_Hz)
        throw BandwidthExceeded("harmonic " + std::to_string(k_max) +
                                " exceeds the usable bandwidth 1/(4 dt) = " +
                                std::to_string(usable_Hz) + " Hz");

    std::vector<std::complex<double>> amplitudes(static_cast<std::size_t>(k_max));
    parallel_for_index(amplitudes.size(), [&](std::size_t i) {
        const double f = static_cast<double>(i + 1) * drive_frequency_Hz;
        amplitudes[i] = phasor_sum(series, 2.0 * pi * f);
    });
    return amplitudes;
}

Spectrum spectrum_from_amplitudes(std::span<const std::complex<double>> amplitudes,
                                  double drive_frequency_Hz, double record_duration_s,
                                  double load_resistance_ohm) {
    if (!(load_resistance_ohm > 0.0)) throw ValidationError("load resistance must be positive");
    Spectrum spectrum;
    spectrum.drive_frequency_Hz = drive_frequency_Hz;
    spectrum.record_duration_s = record_duration_s;
    spectrum.load_resistance_ohm = load_resistance_ohm;
    spectrum.harmonics.reserve(amplitudes.size());
    const double norm = 2.0 / (record_duration_s * record_duration_s * load_resistance_ohm);
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        HarmonicLine line;
        line.index = static_cast<int>(i + 1);
        line.frequency_Hz = static_cast<double>(line.index) * drive_frequency_Hz;
        line.power_W = norm * std::norm(amplitudes[i]);
        line.parity = line.index % 2 == 0 ? Parity::even : Parity::odd;
        spectrum.harmonics.push_back(line);
    }
    return spectrum;
}

Spectrum harmonic_power(const TimeSeries& series, double drive_frequency_Hz, int k_max,
                        double load_resistance_ohm) {
    const auto amplitudes = harmonic_amplitudes(series, drive_frequency_Hz, k_max);
    return spectrum_from_amplitudes(amplitudes, drive_frequency_Hz, series.duration_s(),
                                    load_resistance_ohm);
}

Spectrum average_spectrum(std::span<const Spectrum> spectra) {
    if (spectra.empty()) throw MixedConfig("average_spectrum needs at least one spectrum");
    const Spectrum& first = spectra.front();
    for (const Spectrum& s : spectra) {
        if (s.drive_frequency_Hz != first.drive_frequency_Hz ||
            s.harmonics.size() != first.harmonics.size() ||
            s.load_resistance_ohm != first.load_resistance_ohm)
            throw MixedConfig("spectra disagree on drive frequency, k_max, or load resistance");
    }
    Spectrum mean = first;
    for (std::size_t k = 0; k < mean.harmonics.size(); ++k) {
        double sum = 0.0;
        for (const Spectrum& s : spectra) sum += s.harmonics[k].power_W;
        mean.harmonics[k].power_W = sum / static_cast<double>(spectra.size());
    }
    return mean;
}

} // namespace combforge
