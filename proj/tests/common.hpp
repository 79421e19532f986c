#pragma once

// Shared fixtures: the Nb/AlOx/Nb array parameters used throughout the
// fig* scenarios (R = 20 ohm, I_+ = 100 uA, delta = 1e-3, eps = 0.9,
// nu = 1 GHz, R_L = 50 ohm, N = 50).

#include "combforge/dynamics.hpp"
#include "combforge/ensemble.hpp"
#include "combforge/types.hpp"

namespace combforge::testing {

inline SquidParams nb_squid() {
    SquidParams p;
    p.shunt_resistance_ohm = 20.0;
    p.junction_capacitance_F = 0.0;
    p.critical_current_sum_A = 100e-6;
    p.asymmetry = 0.0;
    p.loop_inductance_H = 0.0;
    p.area_perturbation = 0.0;
    return p;
}

inline DriveConfig nb_drive() {
    DriveConfig d;
    d.frequency_Hz = 1e9;
    d.amplitude = 0.9;
    d.bias = 1e-3;
    return d;
}

inline double nb_load_ohm() { return 50.0; }

inline double nb_effective_resistance() { return effective_resistance(20.0, 50.0, 50); }

inline SimGrid grid_pow2(int log2_spp, int total = 4, int transient = 2) {
    return SimGrid::with_samples_per_period(1 << log2_spp, total, transient);
}

inline ArrayConfig nb_array(const SimGrid& grid, int n = 50) {
    return ArrayConfig(n, nb_load_ohm(), nb_squid(), nb_drive(), grid);
}

} // namespace combforge::testing
