#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "combforge/dynamics.hpp"
#include "combforge/errors.hpp"
#include "combforge/rng.hpp"
#include "combforge/spectrum.hpp"
#include "common.hpp"

using namespace combforge;
using namespace combforge::testing;
using std::numbers::pi;

namespace {

TimeSeries tone(double amplitude, int k, double nu, int periods, int samples_per_period) {
    TimeSeries s;
    s.kind = SeriesKind::voltage;
    s.dt_s = 1.0 / (nu * samples_per_period);
    s.t0_s = 0.0;
    s.values.resize(static_cast<std::size_t>(periods) * samples_per_period);
    for (std::size_t i = 0; i < s.values.size(); ++i)
        s.values[i] = amplitude * std::sin(2.0 * pi * k * nu * s.time_at(i));
    return s;
}

} // namespace

TEST_SUITE_BEGIN("spectrum");

TEST_CASE("fourier component: zero series, tone magnitude, off-harmonic orthogonality") {
    const double nu = 1e9;
    TimeSeries zero = tone(0.0, 1, nu, 2, 4096);
    CHECK(std::abs(fourier_component(zero, 3 * nu)) == 0.0);

    const double amplitude = 2.5e-5;
    const TimeSeries s = tone(amplitude, 7, nu, 2, 4096);
    const double duration = s.duration_s();
    CHECK(std::abs(fourier_component(s, 7 * nu, nu)) ==
          doctest::Approx(amplitude * duration / 2).epsilon(1e-3));
    // half-harmonic probe over an even number of periods lands between bins
    CHECK(std::abs(fourier_component(s, 7.5 * nu, nu)) < 1e-6 * amplitude * duration);
}

TEST_CASE("fourier component: conjugate symmetry for real input") {
    const TimeSeries s = tone(1.0e-4, 3, 1e9, 2, 1024);
    const auto plus = fourier_component(s, 3e9);
    const auto minus = fourier_component(s, -3e9);
    CHECK(std::abs(minus - std::conj(plus)) < 1e-12 * std::abs(plus));
}

TEST_CASE("harmonic power: single tone delivers A^2/(2 R_L) at its line only") {
    const double amplitude = 3e-5, r_load = 50.0, nu = 1e9;
    const TimeSeries s = tone(amplitude, 5, nu, 2, 4096);
    const Spectrum spectrum = harmonic_power(s, nu, 12, r_load);
    const double expected = amplitude * amplitude / (2.0 * r_load);
    CHECK(spectrum.harmonics[4].power_W == doctest::Approx(expected).epsilon(1e-3));
    for (const auto& line : spectrum.harmonics) {
        CHECK(line.frequency_Hz == static_cast<double>(line.index) * nu);
        CHECK(line.parity == (line.index % 2 == 0 ? Parity::even : Parity::odd));
        if (line.index != 5) CHECK(line.power_W < 1e-10 * expected);
    }
}

TEST_CASE("harmonic power: commensurate and bandwidth preconditions") {
    TimeSeries s = tone(1e-5, 2, 1e9, 2, 1024);
    s.values.pop_back(); // no longer a whole number of periods
    CHECK_THROWS_AS(harmonic_power(s, 1e9, 4, 50.0), NonCommensurate);
    CHECK_THROWS_AS(fourier_component(s, 2e9, 1e9), NonCommensurate);

    const TimeSeries ok = tone(1e-5, 2, 1e9, 2, 1024);
    CHECK_THROWS_AS(harmonic_power(ok, 1e9, 300, 50.0), BandwidthExceeded);
}

TEST_CASE("parseval: total bin power equals the mean-square voltage") {
    // All-bin PSD sum versus (1/T) integral of V^2, on a small random record.
    const int n = 256;
    TimeSeries s;
    s.kind = SeriesKind::voltage;
    s.dt_s = 1e-12;
    s.t0_s = 0.0;
    const CounterRng rng(5);
    s.values.resize(n);
    for (int i = 0; i < n; ++i) s.values[i] = 1e-5 * (rng.uniform(0, i, 0) - 0.5);

    const double duration = s.duration_s();
    double bin_sum = 0.0;
    for (int j = 0; j < n; ++j) {
        const double f = static_cast<double>(j) / duration;
        bin_sum += std::norm(fourier_component(s, f));
    }
    bin_sum /= duration * duration;
    double mean_square = 0.0;
    for (const double v : s.values) mean_square += v * v;
    mean_square *= s.dt_s / duration;
    CHECK(bin_sum == doctest::Approx(mean_square).epsilon(1e-3));
}

TEST_CASE("frequency-bin exactness: harmonics land on whole DFT bins") {
    const SimGrid grid = grid_pow2(12);
    const double nu = 1e9;
    const double duration = grid.retained_samples() * grid.sample_interval_s(nu);
    for (int k = 1; k <= 40; ++k) {
        const double bin = std::round(duration * k * nu) / duration;
        CHECK(std::abs(bin - k * nu) < 1e-9 * nu);
    }
}

TEST_CASE("parity selection: symmetric arrays emit even harmonics, asymmetric odd") {
    const DriveConfig drive = nb_drive();
    const SimGrid grid = grid_pow2(13);
    const double r_eff = nb_effective_resistance();

    const TimeSeries sym = simulate_squid(nb_squid(), drive, grid, r_eff);
    const Spectrum even_comb = harmonic_power(sym, drive.frequency_Hz, 41, 50.0);
    for (int k = 3; k <= 39; k += 2) {
        const double odd = even_comb.harmonics[k - 1].power_W;
        const double neighbors = std::max(even_comb.harmonics[k - 2].power_W,
                                          even_comb.harmonics[k].power_W);
        CHECK(odd <= 1e-3 * neighbors);
    }

    SquidParams asym = nb_squid();
    asym.asymmetry = 0.01;
    const TimeSeries alt = simulate_squid(asym, drive, grid, r_eff);
    const Spectrum odd_comb = harmonic_power(alt, drive.frequency_Hz, 41, 50.0);
    for (int k = 3; k <= 39; k += 2) {
        CHECK(odd_comb.harmonics[k - 1].power_W > odd_comb.harmonics[k - 2].power_W);
        CHECK(odd_comb.harmonics[k - 1].power_W > odd_comb.harmonics[k].power_W);
    }
}

TEST_CASE("small-N scaling: line power at k = 20 grows as N^2 below the crossover") {
    // N << R_L/R: pulse area is fixed, pulses stay narrow, so P_k tracks N^2.
    const DriveConfig drive = nb_drive();
    const SimGrid grid = grid_pow2(15);
    double p[3];
    const int sizes[3] = {1, 2, 5};
    for (int i = 0; i < 3; ++i) {
        const double r_eff = effective_resistance(20.0, 50.0, sizes[i]);
        TimeSeries v = simulate_squid(nb_squid(), drive, grid, r_eff);
        for (double& value : v.values) value *= sizes[i];
        p[i] = harmonic_power(v, drive.frequency_Hz, 20, 50.0).harmonics[19].power_W;
    }
    const double gamma12 = std::log(p[1] / p[0]) / std::log(2.0);
    const double gamma15 = std::log(p[2] / p[0]) / std::log(5.0);
    CHECK(gamma12 == doctest::Approx(1.95).epsilon(0.05));
    CHECK(gamma15 == doctest::Approx(1.92).epsilon(0.05));
}

TEST_CASE("average spectrum: identity, mean, and config mismatch") {
    const TimeSeries s = tone(2e-5, 3, 1e9, 2, 512);
    const Spectrum one = harmonic_power(s, 1e9, 8, 50.0);
    const Spectrum same[] = {one};
    CHECK(average_spectrum(same) == one);
    const Spectrum twice[] = {one, one};
    CHECK(average_spectrum(twice) == one);

    Spectrum other = one;
    other.load_resistance_ohm = 75.0;
    const Spectrum mixed[] = {one, other};
    CHECK_THROWS_AS(average_spectrum(mixed), MixedConfig);
    CHECK_THROWS_AS(average_spectrum(std::span<const Spectrum>{}), MixedConfig);
}

TEST_SUITE_END();
