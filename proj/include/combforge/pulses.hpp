#pragma once

#include <vector>

#include "combforge/types.hpp"

namespace combforge {

struct PulseMetrics {
    double peak_time_s = 0.0;   // parabolically refined |V| maximum
    double peak_height_V = 0.0; // signed sample value at the maximum
    double fwhm_s = 0.0;        // width of |V| at half the peak magnitude
    double signed_area_Wb = 0.0; // sum of V*dt over the pulse support
};

// Detects voltage pulses: contiguous runs with |V| >= 0.5% of the global
// maximum that reach at least 5% of it. One record per run; signed areas of
// a pi phase jump come out near +/- Phi_0/2. Throws NoPulses when the record
// never rises above 1 pV (well below any physical pulse, well above the
// numerical noise of a silent run).
std::vector<PulseMetrics> voltage_pulse_metrics(const TimeSeries& series,
                                                const DriveConfig& drive);

} // namespace combforge
