#include "combforge/dynamics.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include "combforge/errors.hpp"

namespace combforge {

namespace {

using std::numbers::pi;

// kappa = L_g I_0 / Phi_0: amplitude of the screening correction in Phi_0 units.
double screening_amplitude(const SquidParams& squid) {
    return squid.loop_inductance_H * squid.junction_critical_current_A() /
           constants::flux_quantum_Wb;
}

double flux_residual(double x, double phi_ext, double kappa, double cos_phi) {
    return x - phi_ext + kappa * std::sin(pi * x) * cos_phi;
}

// Warm-started Newton on the same self-consistency equation. g'(x) =
// 1 + pi*kappa*cos(pi x)*cos(phi) stays in (1 - beta, 1 + beta), so the
// iteration is safe for beta < 1 and typically converges in 2-3 steps from
// the previous time step's flux.
double newton_total_flux(double warm_start, double phi_ext, double kappa, double cos_phi) {
    double x = warm_start;
    for (int iter = 0; iter < 64; ++iter) {
        const double g = flux_residual(x, phi_ext, kappa, cos_phi);
        const double gp = 1.0 + pi * kappa * std::cos(pi * x) * cos_phi;
        const double dx = g / gp;
        x -= dx;
        if (std::abs(dx) <= 1e-13) {
            assert(std::abs(flux_residual(x, phi_ext, kappa, cos_phi)) < 1e-12);
            return x;
        }
    }
    throw NonConvergence("total-flux Newton iteration failed to converge");
}

} // namespace

double external_flux(const DriveConfig& drive, double area_perturbation, double tau) {
    return 0.5 * (1.0 + area_perturbation) * (1.0 - drive.amplitude * std::cos(tau));
}

double josephson_drive_term(double phi, double phi_flux, double asymmetry) {
    return std::cos(phi_flux) * std::sin(phi) + asymmetry * std::sin(phi_flux) * std::cos(phi);
}

double solve_total_flux(const SquidParams& squid, double phi, double external_flux_phi0) {
    const double kappa = screening_amplitude(squid);
    if (kappa == 0.0) return external_flux_phi0;

    const double beta = squid.screening_parameter();
    if (!(beta < 1.0))
        throw NonConvergence("screening parameter beta = " + std::to_string(beta) +
                             " >= 1: fixed-point map is not a contraction");

    const double relaxation = beta > 0.5 ? 0.7 : 1.0;
    const double cos_phi = std::cos(phi);
    double x = external_flux_phi0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mapped = external_flux_phi0 - kappa * std::sin(pi * x) * cos_phi;
        const double next = (1.0 - relaxation) * x + relaxation * mapped;
        const double update = next - x;
        x = next;
        if (std::abs(update) <= 1e-12) {
            assert(std::abs(flux_residual(x, external_flux_phi0, kappa, cos_phi)) < 1e-12);
            return x;
        }
    }
    throw NonConvergence("total-flux fixed point did not reach 1e-12 in 200 iterations");
}

double rcsj_step(double phi_prev, double phi_curr, const StepperCoefficients& coeffs,
                 double drive_term, double bias, double dtau) {
    const double velocity = (phi_curr - phi_prev) / dtau;
    return 2.0 * phi_curr - phi_prev -
           (dtau * dtau / coeffs.capacitance_term) *
               (velocity + coeffs.drive_strength * (drive_term - bias));
}

double overdamped_step(double phi_curr, const StepperCoefficients& coeffs, double drive_term,
                       double bias, double dtau) {
    return phi_curr - dtau * coeffs.drive_strength * (drive_term - bias);
}

PhaseTrajectory integrate_phase(const SquidParams& squid, const DriveConfig& drive,
                                const SimGrid& grid, double effective_resistance_ohm) {
    squid.validate();
    drive.validate();
    const StepperCoefficients coeffs = stepper_coefficients(squid, drive, effective_resistance_ohm);
    coeffs.validate();

    const double kappa = screening_amplitude(squid);
    if (kappa > 0.0 && !(squid.screening_parameter() < 1.0))
        throw NonConvergence("screening parameter beta = " +
                             std::to_string(squid.screening_parameter()) +
                             " >= 1: self-consistent flux has no contraction");

    const double dtau = grid.dtau();
    const double eps = drive.amplitude;
    const double zeta = squid.area_perturbation;
    const double r = squid.asymmetry;
    const double delta = drive.bias;
    const bool underdamped = coeffs.capacitance_term > 0.0;
    const int spp = grid.samples_per_period();
    const std::size_t steps = grid.total_steps();

    // cos(tau) repeats every period; one shared table serves all steps.
    std::vector<double> cos_tau(static_cast<std::size_t>(spp));
    for (int i = 0; i < spp; ++i) cos_tau[static_cast<std::size_t>(i)] = std::cos(i * dtau);

    PhaseTrajectory traj{grid, drive, std::vector<double>(steps + 1)};
    traj.phi[0] = 0.0;
    double phi_prev = 0.0; // zero initial velocity
    double flux = 0.5 * (1.0 + zeta) * (1.0 - eps); // warm start at tau = 0

    for (std::size_t i = 0; i < steps; ++i) {
        const double phi = traj.phi[i];
        const double phi_ext =
            0.5 * (1.0 + zeta) * (1.0 - eps * cos_tau[i % static_cast<std::size_t>(spp)]);
        if (kappa > 0.0) {
            flux = newton_total_flux(flux, phi_ext, kappa, std::cos(phi));
        } else {
            flux = phi_ext;
        }
        const double f = josephson_drive_term(phi, pi * flux, r);
        if (underdamped) {
            const double next = rcsj_step(phi_prev, phi, coeffs, f, delta, dtau);
            phi_prev = phi;
            traj.phi[i + 1] = next;
        } else {
            traj.phi[i + 1] = overdamped_step(phi, coeffs, f, delta, dtau);
        }
    }
    return traj;
}

TimeSeries voltage_from_trajectory(const PhaseTrajectory& trajectory) {
    const SimGrid& grid = trajectory.grid;
    const double dt = grid.sample_interval_s(trajectory.drive.frequency_Hz);
    const double scale = constants::flux_quantum_Wb * trajectory.drive.frequency_Hz / grid.dtau();
    const std::size_t first =
        static_cast<std::size_t>(grid.periods_transient()) * grid.samples_per_period() + 1;

    TimeSeries series;
    series.kind = SeriesKind::voltage;
    series.dt_s = dt;
    series.t0_s = static_cast<double>(first) * dt;
    series.values.resize(grid.retained_samples());
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        const std::size_t j = first + i;
        series.values[i] = scale * (trajectory.phi[j] - trajectory.phi[j - 1]);
    }
    return series;
}

TimeSeries simulate_squid(const SquidParams& squid, const DriveConfig& drive, const SimGrid& grid,
                          double effective_resistance_ohm) {
    return voltage_from_trajectory(integrate_phase(squid, drive, grid, effective_resistance_ohm));
}

} // namespace combforge
