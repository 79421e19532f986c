"""dc-SQUID Josephson radiation comb simulator."""

from ._core import (  # noqa: F401
    FLUX_QUANTUM_WB,
    ArrayConfig,
    BinTable,
    CombforgeError,
    CombinedEnsembleResult,
    DisorderAxis,
    DisorderSpec,
    DriveConfig,
    EnsembleResult,
    EnsembleSpectra,
    HarmonicLine,
    Parity,
    PulseMetrics,
    SimGrid,
    Spectrum,
    SquidParams,
    SwitchTimePrediction,
    TimeSeries,
    __version__,
    average_spectrum,
    bin_centers,
    build_bins,
    combined_disorder_realization,
    effective_resistance,
    ensemble_spectra,
    external_flux,
    fourier_component,
    harmonic_power,
    josephson_drive_term,
    list_scenarios,
    nearest_bin,
    overdamped_step,
    predicted_switch_time,
    rcsj_step,
    run_combined_ensemble,
    run_scenario,
    sample_realization,
    simulate_squid,
    solve_total_flux,
    stepper_coefficients,
    StepperCoefficients,
    switch_time_spread,
    typical_voltage,
    voltage_pulse_metrics,
)
