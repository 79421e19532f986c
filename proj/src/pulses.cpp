#include "combforge/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "combforge/errors.hpp"

namespace combforge {

namespace {

constexpr double detection_floor_V = 1e-12;
constexpr double support_fraction = 0.005; // "zero-ish" level bounding a pulse
constexpr double peak_fraction = 0.05;     // minimum prominence of a pulse

// Sub-sample peak location from a parabola through the three samples around
// the discrete maximum of |V|.
double parabolic_offset(double left, double mid, double right) {
    const double denom = left - 2.0 * mid + right;
    if (denom == 0.0) return 0.0;
    const double off = 0.5 * (left - right) / denom;
    return std::clamp(off, -0.5, 0.5);
}

// Linear interpolation of the half-height crossing between samples i and
// i+1 of |V|.
double crossing(const std::vector<double>& mag, std::size_t i, double level) {
    const double a = mag[i];
    const double b = mag[i + 1];
    if (a == b) return static_cast<double>(i);
    return static_cast<double>(i) + (level - a) / (b - a);
}

} // namespace

std::vector<PulseMetrics> voltage_pulse_metrics(const TimeSeries& series,
                                                const DriveConfig& drive) {
    series.validate();
    if (series.kind != SeriesKind::voltage)
        throw ValidationError("voltage_pulse_metrics expects a voltage series");
    if (series.duration_s() < drive.period_s())
        throw ValidationError("voltage_pulse_metrics needs at least one retained drive period");

    const std::size_t n = series.values.size();
    std::vector<double> mag(n);
    double global_max = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mag[i] = std::abs(series.values[i]);
        global_max = std::max(global_max, mag[i]);
    }
    if (global_max < detection_floor_V)
        throw NoPulses("record never exceeds the 1 pV detection floor");

    const double support_level = support_fraction * global_max;
    const double detect_level = peak_fraction * global_max;

    std::vector<PulseMetrics> pulses;
    std::size_t i = 0;
    while (i < n) {
        if (mag[i] < support_level) {
            ++i;
            continue;
        }
        const std::size_t begin = i;
        std::size_t peak = i;
        while (i < n && mag[i] >= support_level) {
            if (mag[i] > mag[peak]) peak = i;
            ++i;
        }
        const std::size_t end = i; // one past the support
        if (mag[peak] < detect_level) continue;

        PulseMetrics m;
        m.peak_height_V = series.values[peak];

        double offset = 0.0;
        if (peak > 0 && peak + 1 < n)
            offset = parabolic_offset(mag[peak - 1], mag[peak], mag[peak + 1]);
        m.peak_time_s = series.time_at(peak) + offset * series.dt_s;

        double area = 0.0;
        for (std::size_t j = begin; j < end; ++j) area += series.values[j];
        m.signed_area_Wb = area * series.dt_s;

        const double half = 0.5 * mag[peak];
        std::size_t lo = peak;
        while (lo > begin && mag[lo - 1] >= half) --lo;
        std::size_t hi = peak;
        while (hi + 1 < end && mag[hi + 1] >= half) ++hi;
        double left_idx = static_cast<double>(lo);
        if (lo > 0 && mag[lo - 1] < half) left_idx = crossing(mag, lo - 1, half);
        double right_idx = static_cast<double>(hi);
        if (hi + 1 < n && mag[hi + 1] < half) right_idx = crossing(mag, hi, half);
        m.fwhm_s = (right_idx - left_idx) * series.dt_s;

        pulses.push_back(m);
    }

    if (pulses.empty()) throw NoPulses("no local maximum above 5% of the record maximum");
    return pulses;
}

} // namespace combforge
