#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "combforge/config.hpp"
#include "combforge/dynamics.hpp"
#include "combforge/errors.hpp"
#include "combforge/ensemble.hpp"
#include "combforge/pulses.hpp"
#include "combforge/scenarios.hpp"
#include "combforge/spectrum.hpp"
#include "combforge/version.hpp"

namespace py = pybind11;
using namespace combforge;

namespace {

py::array_t<double> values_array(const TimeSeries& series) {
    py::array_t<double> out(static_cast<py::ssize_t>(series.values.size()));
    std::copy(series.values.begin(), series.values.end(), out.mutable_data());
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "dc-SQUID Josephson radiation comb simulator";
    m.attr("__version__") = version_string;
    m.attr("FLUX_QUANTUM_WB") = constants::flux_quantum_Wb;

    py::register_exception<Error>(m, "CombforgeError");

    py::class_<SquidParams>(m, "SquidParams")
        .def(py::init<>())
        .def_readwrite("shunt_resistance_ohm", &SquidParams::shunt_resistance_ohm)
        .def_readwrite("junction_capacitance_F", &SquidParams::junction_capacitance_F)
        .def_readwrite("critical_current_sum_A", &SquidParams::critical_current_sum_A)
        .def_readwrite("asymmetry", &SquidParams::asymmetry)
        .def_readwrite("loop_inductance_H", &SquidParams::loop_inductance_H)
        .def_readwrite("area_perturbation", &SquidParams::area_perturbation)
        .def("validate", &SquidParams::validate)
        .def("screening_parameter", &SquidParams::screening_parameter);

    py::class_<DriveConfig>(m, "DriveConfig")
        .def(py::init<>())
        .def_readwrite("frequency_Hz", &DriveConfig::frequency_Hz)
        .def_readwrite("amplitude", &DriveConfig::amplitude)
        .def_readwrite("bias", &DriveConfig::bias)
        .def("node_time_s", &DriveConfig::node_time_s, py::arg("k"))
        .def("validate", &DriveConfig::validate);

    py::class_<SimGrid>(m, "SimGrid")
        .def(py::init<double, int, int>(), py::arg("dtau"), py::arg("periods_total"),
             py::arg("periods_transient"))
        .def_static("with_samples_per_period", &SimGrid::with_samples_per_period,
                    py::arg("samples_per_period"), py::arg("periods_total"),
                    py::arg("periods_transient"))
        .def_property_readonly("dtau", &SimGrid::dtau)
        .def_property_readonly("samples_per_period", &SimGrid::samples_per_period)
        .def_property_readonly("periods_total", &SimGrid::periods_total)
        .def_property_readonly("periods_transient", &SimGrid::periods_transient);

    py::class_<StepperCoefficients>(m, "StepperCoefficients")
        .def(py::init<>())
        .def_readwrite("capacitance_term", &StepperCoefficients::capacitance_term)
        .def_readwrite("drive_strength", &StepperCoefficients::drive_strength);
    m.def("stepper_coefficients", &stepper_coefficients, py::arg("squid"), py::arg("drive"),
          py::arg("effective_resistance_ohm"));

    py::class_<TimeSeries>(m, "TimeSeries")
        .def_readonly("t0_s", &TimeSeries::t0_s)
        .def_readonly("dt_s", &TimeSeries::dt_s)
        .def_property_readonly("values", &values_array)
        .def_property_readonly("duration_s", &TimeSeries::duration_s)
        .def("__len__", [](const TimeSeries& s) { return s.values.size(); });

    py::class_<PulseMetrics>(m, "PulseMetrics")
        .def_readonly("peak_time_s", &PulseMetrics::peak_time_s)
        .def_readonly("peak_height_V", &PulseMetrics::peak_height_V)
        .def_readonly("fwhm_s", &PulseMetrics::fwhm_s)
        .def_readonly("signed_area_Wb", &PulseMetrics::signed_area_Wb);

    py::enum_<Parity>(m, "Parity").value("even", Parity::even).value("odd", Parity::odd);

    py::class_<HarmonicLine>(m, "HarmonicLine")
        .def_readonly("index", &HarmonicLine::index)
        .def_readonly("frequency_Hz", &HarmonicLine::frequency_Hz)
        .def_readonly("power_W", &HarmonicLine::power_W)
        .def_readonly("parity", &HarmonicLine::parity);

    py::class_<Spectrum>(m, "Spectrum")
        .def_readonly("drive_frequency_Hz", &Spectrum::drive_frequency_Hz)
        .def_readonly("record_duration_s", &Spectrum::record_duration_s)
        .def_readonly("load_resistance_ohm", &Spectrum::load_resistance_ohm)
        .def_readonly("harmonics", &Spectrum::harmonics);

    py::class_<DisorderSpec>(m, "DisorderSpec")
        .def(py::init<>())
        .def_readwrite("sigma_area", &DisorderSpec::sigma_area)
        .def_readwrite("sigma_asymmetry", &DisorderSpec::sigma_asymmetry)
        .def_readwrite("preferential_asymmetry", &DisorderSpec::preferential_asymmetry)
        .def_readwrite("n_bins", &DisorderSpec::n_bins)
        .def_readwrite("n_realizations", &DisorderSpec::n_realizations)
        .def_readwrite("seed", &DisorderSpec::seed)
        .def_readwrite("max_combined_bins", &DisorderSpec::max_combined_bins)
        .def("validate", &DisorderSpec::validate);

    py::class_<ArrayConfig>(m, "ArrayConfig")
        .def(py::init<int, double, SquidParams, DriveConfig, SimGrid>(), py::arg("n_squids"),
             py::arg("load_resistance_ohm"), py::arg("base"), py::arg("drive"), py::arg("grid"))
        .def_readonly("n_squids", &ArrayConfig::n_squids)
        .def_readonly("load_resistance_ohm", &ArrayConfig::load_resistance_ohm)
        .def_property_readonly("effective_resistance_ohm",
                               &ArrayConfig::effective_resistance_ohm);

    py::enum_<DisorderAxis>(m, "DisorderAxis")
        .value("area", DisorderAxis::area)
        .value("asymmetry", DisorderAxis::asymmetry);

    py::class_<BinTable>(m, "BinTable")
        .def_readonly("axis", &BinTable::axis)
        .def_readonly("centers", &BinTable::centers)
        .def("waveform", [](const BinTable& t, std::size_t i) { return t.waveforms.at(i); })
        .def("__len__", [](const BinTable& t) { return t.centers.size(); });

    py::class_<EnsembleResult>(m, "EnsembleResult")
        .def_readonly("typical_voltage", &EnsembleResult::typical_voltage);

    py::class_<EnsembleSpectra>(m, "EnsembleSpectra")
        .def_readonly("average", &EnsembleSpectra::average)
        .def_readonly("first_realization", &EnsembleSpectra::first_realization);

    py::class_<CombinedEnsembleResult>(m, "CombinedEnsembleResult")
        .def_readonly("typical_voltage", &CombinedEnsembleResult::typical_voltage)
        .def_readonly("average", &CombinedEnsembleResult::average)
        .def_readonly("first_realization", &CombinedEnsembleResult::first_realization)
        .def_readonly("cells_simulated", &CombinedEnsembleResult::cells_simulated);

    py::class_<SwitchTimePrediction>(m, "SwitchTimePrediction")
        .def_readonly("exact_s", &SwitchTimePrediction::exact_s)
        .def_readonly("linearized_s", &SwitchTimePrediction::linearized_s);

    m.def("external_flux", &external_flux, py::arg("drive"), py::arg("area_perturbation"),
          py::arg("tau"));
    m.def("josephson_drive_term", &josephson_drive_term, py::arg("phi"), py::arg("phi_flux"),
          py::arg("asymmetry"));
    m.def("solve_total_flux", &solve_total_flux, py::arg("squid"), py::arg("phi"),
          py::arg("external_flux_phi0"));
    m.def("rcsj_step", &rcsj_step, py::arg("phi_prev"), py::arg("phi_curr"), py::arg("coeffs"),
          py::arg("drive_term"), py::arg("bias"), py::arg("dtau"));
    m.def("overdamped_step", &overdamped_step, py::arg("phi_curr"), py::arg("coeffs"),
          py::arg("drive_term"), py::arg("bias"), py::arg("dtau"));
    m.def("simulate_squid", &simulate_squid, py::arg("squid"), py::arg("drive"), py::arg("grid"),
          py::arg("effective_resistance_ohm"),
          py::call_guard<py::gil_scoped_release>());
    m.def("voltage_pulse_metrics", &voltage_pulse_metrics, py::arg("series"), py::arg("drive"));
    m.def("effective_resistance", &effective_resistance, py::arg("shunt_resistance_ohm"),
          py::arg("load_resistance_ohm"), py::arg("n_squids"));
    m.def("predicted_switch_time", &predicted_switch_time, py::arg("area_perturbation"),
          py::arg("drive"), py::arg("node_index"));
    m.def("switch_time_spread", &switch_time_spread, py::arg("sigma_area"), py::arg("drive"));
    m.def("bin_centers", &bin_centers, py::arg("sigma"), py::arg("n_bins"));
    m.def("nearest_bin", &nearest_bin, py::arg("value"), py::arg("sigma"), py::arg("n_bins"));
    m.def("build_bins", &build_bins, py::arg("axis"), py::arg("spec"), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("sample_realization", &sample_realization, py::arg("table"), py::arg("spec"),
          py::arg("n_squids"), py::arg("realization_index"));
    m.def("typical_voltage", &typical_voltage, py::arg("table"), py::arg("spec"),
          py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def("ensemble_spectra", &ensemble_spectra, py::arg("table"), py::arg("spec"),
          py::arg("config"), py::arg("k_max"), py::call_guard<py::gil_scoped_release>());
    m.def("combined_disorder_realization", &combined_disorder_realization, py::arg("spec"),
          py::arg("config"), py::arg("realization_index"),
          py::call_guard<py::gil_scoped_release>());
    m.def("run_combined_ensemble", &run_combined_ensemble, py::arg("spec"), py::arg("config"),
          py::arg("k_max"), py::call_guard<py::gil_scoped_release>());
    m.def("fourier_component", &fourier_component, py::arg("series"), py::arg("frequency_Hz"),
          py::arg("drive_frequency_Hz") = std::nullopt);
    m.def("harmonic_power", &harmonic_power, py::arg("series"), py::arg("drive_frequency_Hz"),
          py::arg("k_max"), py::arg("load_resistance_ohm"),
          py::call_guard<py::gil_scoped_release>());
    m.def(
        "average_spectrum",
        [](const std::vector<Spectrum>& spectra) { return average_spectrum(spectra); },
        py::arg("spectra"));
    m.def("list_scenarios", &scenario_names);
    m.def(
        "run_scenario",
        [](const std::string& name, const std::filesystem::path& out_dir, bool quick,
           std::optional<std::uint64_t> seed) {
            const auto id = parse_scenario(name);
            if (!id) throw ValidationError("unknown scenario '" + name + "'");
            ScenarioOptions options;
            options.out_dir = out_dir;
            options.quick = quick;
            options.seed = seed;
            const Manifest manifest = run_scenario(*id, options);
            return manifest.content.dump();
        },
        py::arg("name"), py::arg("out_dir"), py::arg("quick") = false,
        py::arg("seed") = std::nullopt, py::call_guard<py::gil_scoped_release>());
}
