#include "combforge/csv.hpp"

#include <cstdio>
#include <fstream>

#include "combforge/errors.hpp"

namespace combforge {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
}

} // namespace

std::string format_float(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

void emit_timeseries_csv(const TimeSeries& series, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    out << "t_s,V_V\n";
    for (std::size_t i = 0; i < series.values.size(); ++i)
        out << format_float(series.time_at(i)) << ',' << format_float(series.values[i]) << '\n';
    finish(out, path);
}

void emit_spectrum_csv(const Spectrum& spectrum, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    out << "k,f_Hz,P_W,parity\n";
    for (const HarmonicLine& line : spectrum.harmonics)
        out << line.index << ',' << format_float(line.frequency_Hz) << ','
            << format_float(line.power_W) << ','
            << (line.parity == Parity::even ? "even" : "odd") << '\n';
    finish(out, path);
}

void emit_pulse_metrics_csv(std::span<const PulseMetrics> pulses,
                            const std::filesystem::path& path) {
    auto out = open_for_write(path);
    out << "peak_time_s,peak_height_V,fwhm_s,signed_area_Wb\n";
    for (const PulseMetrics& p : pulses)
        out << format_float(p.peak_time_s) << ',' << format_float(p.peak_height_V) << ','
            << format_float(p.fwhm_s) << ',' << format_float(p.signed_area_Wb) << '\n';
    finish(out, path);
}

} // namespace combforge
