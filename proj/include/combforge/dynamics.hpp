#pragma once

#include <vector>

#include "combforge/types.hpp"

namespace combforge {

// External drive flux in units of Phi_0:
//   Phi_e/Phi_0 = (1/2) (1 + zeta_A) (1 - eps cos tau),
// periodic in tau with period 2*pi. zeta_A rescales the flux for a SQUID
// whose area deviates by that relative amount.
double external_flux(const DriveConfig& drive, double area_perturbation, double tau);

// SQUID current-phase relation in units of I_+:
//   f = cos(phi_flux) sin(phi) + r sin(phi_flux) cos(phi),
// with phi_flux = pi * Phi/Phi_0.
double josephson_drive_term(double phi, double phi_flux, double asymmetry);

// Self-consistent total flux (units of Phi_0) satisfying
//   Phi = Phi_e - (L_g I_0 / Phi_0) sin(pi Phi) cos(phi),
// solved by damped fixed-point iteration seeded at Phi_e (under-relaxation
// 0.7 once beta > 0.5), |update| tolerance 1e-12. For L_g = 0 returns Phi_e
// with zero iterations. Throws NonConvergence after 200 iterations.
double solve_total_flux(const SquidParams& squid, double phi, double external_flux_phi0);

// One step of the second-order downwind stencil, rearranged explicitly:
//   phi_next = 2 phi_curr - phi_prev - (dtau^2/c) [ (phi_curr - phi_prev)/dtau
//              + alpha (f - delta) ].
// Requires c > 0; the caller guarantees stability through the dtau choice.
double rcsj_step(double phi_prev, double phi_curr, const StepperCoefficients& coeffs,
                 double drive_term, double bias, double dtau);

// Forward-Euler limit of the stencil for c = 0:
//   phi_next = phi_curr - dtau * alpha * (f - delta).
double overdamped_step(double phi_curr, const StepperCoefficients& coeffs, double drive_term,
                       double bias, double dtau);

// Full phase trajectory phi(tau_i), i = 0..total_steps, from phi(0) = 0 with
// zero initial velocity. When L_g > 0 the total flux is re-solved every step
// (warm-started Newton on the same equation and tolerance as
// solve_total_flux).
struct PhaseTrajectory {
    SimGrid grid;
    DriveConfig drive;
    std::vector<double> phi; // radians, size total_steps() + 1
};

PhaseTrajectory integrate_phase(const SquidParams& squid, const DriveConfig& drive,
                                const SimGrid& grid, double effective_resistance_ohm);

// Voltage across one SQUID over the retained window, V_i = Phi_0 nu
// (phi_i - phi_{i-1}) / dtau -- the same backward difference the stepper
// uses, so pulse timing carries no half-step offset.
TimeSeries simulate_squid(const SquidParams& squid, const DriveConfig& drive, const SimGrid& grid,
                          double effective_resistance_ohm);

// Retained-window voltage extracted from an existing trajectory.
TimeSeries voltage_from_trajectory(const PhaseTrajectory& trajectory);

} // namespace combforge
