#include "combforge/types.hpp"

#include <cmath>
#include <string>

#include "combforge/errors.hpp"

namespace combforge {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ValidationError(what); }

std::string num(double v) { return std::to_string(v); }

} // namespace

void SquidParams::validate() const {
    if (!(shunt_resistance_ohm > 0.0))
        fail("shunt_resistance_ohm: R > 0 violated (got " + num(shunt_resistance_ohm) + ")");
    if (!(junction_capacitance_F >= 0.0))
        fail("junction_capacitance_F: C >= 0 violated (got " + num(junction_capacitance_F) + ")");
    if (!(critical_current_sum_A > 0.0))
        fail("critical_current_sum_A: I_+ > 0 violated (got " + num(critical_current_sum_A) + ")");
    if (!(std::abs(asymmetry) < 1.0))
        fail("asymmetry_r: |r| < 1 violated (got " + num(asymmetry) + ")");
    if (!(loop_inductance_H >= 0.0))
        fail("loop_inductance_H: L_g >= 0 violated (got " + num(loop_inductance_H) + ")");
    if (!(1.0 + area_perturbation > 0.0))
        fail("area_perturbation: 1 + zeta_A > 0 violated (got " + num(area_perturbation) + ")");
}

double SquidParams::screening_parameter() const {
    return std::numbers::pi * loop_inductance_H * junction_critical_current_A() /
           constants::flux_quantum_Wb;
}

void DriveConfig::validate() const {
    if (!(frequency_Hz > 0.0))
        fail("drive_frequency_Hz: nu > 0 violated (got " + num(frequency_Hz) + ")");
    // amplitude = 0 is allowed as a degenerate no-pulse drive; runs with it
    // simply never cross the interference node.
    if (!(amplitude >= 0.0 && amplitude <= 1.0))
        fail("drive_amplitude: 0 <= eps <= 1 violated (got " + num(amplitude) + ")");
    if (!(bias >= 0.0 && bias < 1.0))
        fail("bias_delta: 0 <= delta < 1 violated (got " + num(bias) + ")");
}

SimGrid::SimGrid(double dtau, int periods_total, int periods_transient)
    : dtau_(dtau), periods_total_(periods_total), periods_transient_(periods_transient) {
    if (!(dtau > 0.0)) throw InvalidGrid("dtau must be positive (got " + num(dtau) + ")");
    if (periods_total <= 0)
        throw InvalidGrid("periods_total must be positive (got " + std::to_string(periods_total) + ")");
    if (periods_transient < 0 || periods_transient >= periods_total)
        throw InvalidGrid("periods_transient must satisfy 0 <= transient < total (got " +
                          std::to_string(periods_transient) + " of " +
                          std::to_string(periods_total) + ")");
    const double per_period = constants::tau_period / dtau;
    const auto rounded = static_cast<long long>(std::llround(per_period));
    if (rounded < 4)
        throw InvalidGrid("dtau too coarse: fewer than 4 samples per period");
    const double mismatch =
        std::abs(static_cast<double>(rounded) * dtau - constants::tau_period) / constants::tau_period;
    if (mismatch > 1e-9)
        throw InvalidGrid("dtau must divide 2*pi to within 1e-9 (relative mismatch " +
                          num(mismatch) + ")");
    samples_per_period_ = static_cast<int>(rounded);
}

SimGrid SimGrid::with_samples_per_period(int samples_per_period, int periods_total,
                                         int periods_transient) {
    if (samples_per_period < 4)
        throw InvalidGrid("samples_per_period must be at least 4 (got " +
                          std::to_string(samples_per_period) + ")");
    return SimGrid(constants::tau_period / samples_per_period, periods_total, periods_transient);
}

void TimeSeries::validate() const {
    if (!(dt_s > 0.0)) fail("TimeSeries: dt > 0 violated");
    if (values.empty()) fail("TimeSeries: values must be non-empty");
}

void StepperCoefficients::validate() const {
    if (!(capacitance_term >= 0.0)) fail("StepperCoefficients: c >= 0 violated");
    if (!(drive_strength > 0.0)) fail("StepperCoefficients: alpha > 0 violated");
}

StepperCoefficients stepper_coefficients(const SquidParams& squid, const DriveConfig& drive,
                                         double effective_resistance_ohm) {
    if (!(effective_resistance_ohm > 0.0)) fail("effective resistance must be positive");
    StepperCoefficients coeffs;
    coeffs.capacitance_term = constants::tau_period * effective_resistance_ohm *
                              squid.junction_capacitance_F * drive.frequency_Hz;
    coeffs.drive_strength = squid.critical_current_sum_A * effective_resistance_ohm /
                            (constants::flux_quantum_Wb * drive.frequency_Hz);
    return coeffs;
}

} // namespace combforge
