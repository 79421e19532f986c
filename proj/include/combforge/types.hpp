#pragma once

#include <cstddef>
#include <numbers>
#include <vector>

namespace combforge {

namespace constants {
// Magnetic flux quantum Phi_0 = h/2e, in weber.
inline constexpr double flux_quantum_Wb = 2.067833848e-15;
// One drive period in dimensionless time tau = 2*pi*nu*t.
inline constexpr double tau_period = 2.0 * std::numbers::pi;
} // namespace constants

// Electrical identity of a single dc SQUID. Junctions are treated as a
// symmetric pair: the per-junction critical current I_0 = I_+/2 is derived,
// never stored.
struct SquidParams {
    double shunt_resistance_ohm = 20.0;      // R
    double junction_capacitance_F = 0.0;     // C
    double critical_current_sum_A = 100e-6;  // I_+ = I_c1 + I_c2
    double asymmetry = 0.0;                  // r = (I_c1 - I_c2)/I_+
    double loop_inductance_H = 0.0;          // L_g
    double area_perturbation = 0.0;          // zeta_A, relative area deviation

    void validate() const;

    double junction_critical_current_A() const { return 0.5 * critical_current_sum_A; }

    // beta = pi * L_g * I_0 / Phi_0; the self-consistent flux map contracts
    // only for beta < 1.
    double screening_parameter() const;

    bool operator==(const SquidParams&) const = default;
};

// Sinusoidal flux drive centered on the first node of the interference
// pattern, plus the dimensionless dc bias delta = I_B/I_+.
struct DriveConfig {
    double frequency_Hz = 1e9; // nu
    double amplitude = 0.9;    // epsilon, in [0, 1]; 0 is a degenerate no-pulse drive
    double bias = 1e-3;        // delta, in [0, 1)

    void validate() const;

    double period_s() const { return 1.0 / frequency_Hz; }
    // k-th node crossing of the unperturbed drive: t_k = (2k+1)/(4 nu).
    double node_time_s(int k) const { return (2.0 * k + 1.0) / (4.0 * frequency_Hz); }

    bool operator==(const DriveConfig&) const = default;
};

// Uniform dimensionless time grid. One drive period spans tau = 2*pi, so
// dtau must divide 2*pi to within one part in 1e9; construction rejects
// anything else.
class SimGrid {
public:
    SimGrid(double dtau, int periods_total, int periods_transient);
    static SimGrid with_samples_per_period(int samples_per_period, int periods_total,
                                           int periods_transient);

    double dtau() const { return dtau_; }
    int periods_total() const { return periods_total_; }
    int periods_transient() const { return periods_transient_; }
    int samples_per_period() const { return samples_per_period_; }
    int retained_periods() const { return periods_total_ - periods_transient_; }

    // Integration steps over the whole run (phase samples minus the initial one).
    std::size_t total_steps() const {
        return static_cast<std::size_t>(periods_total_) * samples_per_period_;
    }
    std::size_t retained_samples() const {
        return static_cast<std::size_t>(retained_periods()) * samples_per_period_;
    }
    double sample_interval_s(double frequency_Hz) const {
        return 1.0 / (frequency_Hz * samples_per_period_);
    }

    bool operator==(const SimGrid&) const = default;

private:
    double dtau_;
    int periods_total_;
    int periods_transient_;
    int samples_per_period_;
};

enum class SeriesKind { phase, voltage };

// Uniformly sampled record in SI units: volts for voltage, radians for phase.
struct TimeSeries {
    double t0_s = 0.0;
    double dt_s = 0.0;
    SeriesKind kind = SeriesKind::voltage;
    std::vector<double> values;

    void validate() const;

    std::size_t size() const { return values.size(); }
    double time_at(std::size_t i) const { return t0_s + static_cast<double>(i) * dt_s; }
    double duration_s() const { return static_cast<double>(values.size()) * dt_s; }

    bool operator==(const TimeSeries&) const = default;
};

// Cached dimensionless coefficients of the equation of motion,
//   c * phi'' + phi' + alpha * (f - delta) = 0,
// with c = 2*pi*R_eff*C*nu and alpha = I_+*R_eff/(Phi_0*nu). Recompute
// whenever R_eff changes.
struct StepperCoefficients {
    double capacitance_term = 0.0; // c
    double drive_strength = 0.0;   // alpha

    void validate() const;

    bool operator==(const StepperCoefficients&) const = default;
};

StepperCoefficients stepper_coefficients(const SquidParams& squid, const DriveConfig& drive,
                                         double effective_resistance_ohm);

} // namespace combforge
