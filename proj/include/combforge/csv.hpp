#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "combforge/pulses.hpp"
#include "combforge/spectrum.hpp"
#include "combforge/types.hpp"

namespace combforge {

// 17 significant digits: enough to round-trip any double exactly, so
// repeated runs produce byte-identical files.
std::string format_float(double value);

// Header `t_s,V_V`, LF line endings.
void emit_timeseries_csv(const TimeSeries& series, const std::filesystem::path& path);

// Header `k,f_Hz,P_W,parity`.
void emit_spectrum_csv(const Spectrum& spectrum, const std::filesystem::path& path);

// Header `peak_time_s,peak_height_V,fwhm_s,signed_area_Wb`.
void emit_pulse_metrics_csv(std::span<const PulseMetrics> pulses,
                            const std::filesystem::path& path);

} // namespace combforge
