#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "optorf/absorption.hpp"
#include "optorf/calibration.hpp"
#include "optorf/cavity_spin.hpp"
#include "optorf/config.hpp"
#include "optorf/constants.hpp"
#include "optorf/faddeeva.hpp"
#include "optorf/fitting.hpp"
#include "optorf/resonator.hpp"
#include "optorf/sweep.hpp"
#include "optorf/transduction.hpp"

namespace py = pybind11;
using namespace optorf;

PYBIND11_MODULE(_optorf, m) {
    m.doc() = "Opto-RF transduction modeling: cavity reflection, Zeeman absorption, "
              "three-level steady state, efficiencies and the associated fits.";

    auto constants = m.def_submodule("constants", "CODATA 2018 constants (SI)");
    constants.attr("hbar") = optorf::constants::hbar;
    constants.attr("h") = optorf::constants::h_planck;
    constants.attr("mu_B") = optorf::constants::mu_bohr;
    constants.attr("mu_0") = optorf::constants::mu_0;
    constants.attr("eps_0") = optorf::constants::eps_0;
    constants.attr("c") = optorf::constants::c_light;
    constants.attr("k_B") = optorf::constants::k_boltzmann;

    py::class_<AngularFrequency>(m, "AngularFrequency")
        .def(py::init([](double rad_per_s) { return AngularFrequency{rad_per_s}; }),
             py::arg("rad_per_s"))
        .def_static("from_hz", &AngularFrequency::from_hz)
        .def_static("from_mhz", &AngularFrequency::from_mhz)
        .def_static("from_ghz", &AngularFrequency::from_ghz)
        .def_readwrite("rad_per_s", &AngularFrequency::rad_per_s)
        .def("hz", &AngularFrequency::hz)
        .def("mhz", &AngularFrequency::mhz)
        .def("ghz", &AngularFrequency::ghz)
        .def("__repr__", [](const AngularFrequency& w) {
            return "AngularFrequency(" + std::to_string(w.rad_per_s) + " rad/s)";
        });

    m.def("db_power", &db_power, py::arg("ratio"));
    m.def("db_to_linear", &db_to_linear, py::arg("db"));
    m.def("amplitude_factor_from_db", &amplitude_factor_from_db, py::arg("db"));
    m.def("dbm_to_watts", &dbm_to_watts);
    m.def("watts_to_dbm", &watts_to_dbm);
    m.def("larmor_frequency", &larmor_frequency, py::arg("g_factor"), py::arg("field_tesla"));
    m.def("thermal_population_imbalance", &thermal_population_imbalance, py::arg("omega_s"),
          py::arg("temperature_k"));
    m.def("thermal_ground_population", &thermal_ground_population, py::arg("omega_s"),
          py::arg("temperature_k"));
    m.def("wavelength_to_angular", &wavelength_to_angular, py::arg("wavelength_m"));

    // cavity + spins
    py::class_<CavityParams>(m, "CavityParams")
        .def(py::init([](AngularFrequency omega_c, AngularFrequency kappa_c,
                         AngularFrequency kappa_t) {
                 CavityParams p{omega_c, kappa_c, kappa_t};
                 p.validate();
                 return p;
             }),
             py::arg("omega_c"), py::arg("kappa_c"), py::arg("kappa_t"))
        .def_readwrite("omega_c", &CavityParams::omega_c)
        .def_readwrite("kappa_c", &CavityParams::kappa_c)
        .def_readwrite("kappa_t", &CavityParams::kappa_t)
        .def("quality_factor", &CavityParams::quality_factor);

    py::class_<SpinEnsembleParams>(m, "SpinEnsembleParams")
        .def(py::init([](double g_factor, AngularFrequency gamma, double cooperativity) {
                 SpinEnsembleParams p{g_factor, gamma, cooperativity};
                 p.validate();
                 return p;
             }),
             py::arg("g_factor"), py::arg("gamma"), py::arg("cooperativity"))
        .def_readwrite("g_factor", &SpinEnsembleParams::g_factor)
        .def_readwrite("gamma", &SpinEnsembleParams::gamma)
        .def_readwrite("cooperativity", &SpinEnsembleParams::cooperativity);

    m.def("spin_term", &spin_term, py::arg("omega_rf"), py::arg("omega_s"), py::arg("cavity"),
          py::arg("spins"));
    m.def("s11", &s11, py::arg("omega_rf"), py::arg("omega_s"), py::arg("cavity"),
          py::arg("spins"));

    // absorption
    m.def("voigt_peak_normalized", &voigt_peak_normalized, py::arg("detuning_hz"),
          py::arg("lorentz_fwhm_hz"), py::arg("gauss_fwhm_hz"));
    m.def("voigt_fwhm", &voigt_fwhm);

    py::class_<ZeemanQuartet>(m, "ZeemanQuartet")
        .def(py::init<double, double, double, double, double, double, double, double, double>(),
             py::arg("center_freq_hz"), py::arg("g_ground"), py::arg("g_excited"),
             py::arg("field_tesla"), py::arg("od_direct"), py::arg("od_crossed"),
             py::arg("temperature_k"), py::arg("lorentz_fwhm_hz"), py::arg("gauss_fwhm_hz"))
        .def("line_offsets_hz", &ZeemanQuartet::line_offsets_hz)
        .def("line_amplitudes", &ZeemanQuartet::line_amplitudes);

    py::class_<TransmissionSpectrum>(m, "TransmissionSpectrum")
        .def_readonly("detunings_hz", &TransmissionSpectrum::detunings_hz)
        .def_readonly("transmission", &TransmissionSpectrum::transmission);

    m.def("synthesize_transmission", &synthesize_transmission, py::arg("model"),
          py::arg("detunings_hz"));

    // lambda system
    py::class_<LambdaParams>(m, "LambdaParams")
        .def(py::init<>())
        .def_readwrite("optical_detuning", &LambdaParams::optical_detuning)
        .def_readwrite("spin_detuning", &LambdaParams::spin_detuning)
        .def_readwrite("optical_fwhm", &LambdaParams::optical_fwhm)
        .def_readwrite("spin_fwhm", &LambdaParams::spin_fwhm)
        .def_readwrite("pump_rabi", &LambdaParams::pump_rabi)
        .def_readwrite("rf_rabi", &LambdaParams::rf_rabi)
        .def_readwrite("od_signal", &LambdaParams::od_signal)
        .def_readwrite("od_pump", &LambdaParams::od_pump)
        .def_readwrite("pop_imbalance", &LambdaParams::pop_imbalance);

    m.def("steady_state_coherences", &steady_state_coherences, py::arg("params"),
          py::arg("signal_rabi"));
    m.def("transduction_field_full", &transduction_field_full, py::arg("params"),
          py::arg("z_fraction") = 1.0);
    m.def("transduction_field_low_od", &transduction_field_low_od, py::arg("params"));
    m.def("eta_eo", &eta_eo, py::arg("params"));
    m.def("eta_q_from_eta_eo", &eta_q_from_eta_eo, py::arg("eta_eo"), py::arg("optical_power_w"),
          py::arg("rf_power_w"), py::arg("omega_optical"), py::arg("omega_rf"));
    m.def("eta_q_cooperativity_form", &eta_q_cooperativity_form, py::arg("pump_rabi"),
          py::arg("optical_fwhm"), py::arg("spin_fwhm"), py::arg("spin_detuning_c"),
          py::arg("optical_detuning_c"), py::arg("coop_optical"), py::arg("coop_spin"),
          py::arg("beam_area_m2"), py::arg("path_length_m"), py::arg("crystal_volume_m3"),
          py::arg("pop_imbalance") = 1.0);
    m.def("model_rescale", &model_rescale, py::arg("eta"), py::arg("rescale_db"));

    // resonator
    py::class_<ResonatorGeometry>(m, "ResonatorGeometry")
        .def(py::init([](double a, double b, double d, double probe_x, double probe_z) {
                 ResonatorGeometry g{a, b, d, probe_x, probe_z};
                 g.validate();
                 return g;
             }),
             py::arg("a"), py::arg("b"), py::arg("d"), py::arg("probe_x"), py::arg("probe_z"))
        .def("volume", &ResonatorGeometry::volume)
        .def("position_factor", &ResonatorGeometry::position_factor);

    py::class_<DriveConditions>(m, "DriveConditions")
        .def(py::init([](double rf_power_w, AngularFrequency omega_rf, double g_transverse) {
                 DriveConditions d{rf_power_w, omega_rf, g_transverse};
                 d.validate();
                 return d;
             }),
             py::arg("rf_power_w"), py::arg("omega_rf"), py::arg("g_transverse"));

    py::class_<SampleSpec>(m, "SampleSpec")
        .def(py::init([](double host_density_per_m3, double doping_fraction,
                         double isotope_fraction, double crystal_volume_m3,
                         double temperature_k) {
                 SampleSpec s{host_density_per_m3, doping_fraction, isotope_fraction,
                              crystal_volume_m3, temperature_k};
                 s.validate();
                 return s;
             }),
             py::arg("host_density_per_m3"), py::arg("doping_fraction"),
             py::arg("isotope_fraction"), py::arg("crystal_volume_m3"),
             py::arg("temperature_k"));

    m.def("mode_frequency_hz", &mode_frequency_hz, py::arg("geometry"));
    m.def("intracavity_b_amplitude", &intracavity_b_amplitude, py::arg("geometry"),
          py::arg("drive"), py::arg("cavity"), py::arg("include_position_factor") = false);
    m.def("rf_rabi_frequency", &rf_rabi_frequency, py::arg("geometry"), py::arg("drive"),
          py::arg("cavity"), py::arg("include_position_factor") = false);
    m.def("vacuum_coupling", &vacuum_coupling, py::arg("geometry"), py::arg("omega"),
          py::arg("g_transverse"));
    m.def("cooperativity_estimate", &cooperativity_estimate, py::arg("geometry"),
          py::arg("sample"), py::arg("cavity"), py::arg("spins"), py::arg("omega"));

    // fitting
    py::class_<LorentzianFloorModel>(m, "LorentzianFloorModel")
        .def(py::init([](double center, double fwhm, double peak, double floor) {
                 LorentzianFloorModel model{center, fwhm, peak, floor};
                 model.validate();
                 return model;
             }),
             py::arg("center"), py::arg("fwhm"), py::arg("peak"), py::arg("floor"))
        .def_readwrite("center", &LorentzianFloorModel::center)
        .def_readwrite("fwhm", &LorentzianFloorModel::fwhm)
        .def_readwrite("peak", &LorentzianFloorModel::peak)
        .def_readwrite("floor", &LorentzianFloorModel::floor);

    m.def("lorentzian_floor", &lorentzian_floor, py::arg("x"), py::arg("model"));

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("params", &FitResult::params)
        .def_readonly("sum_sq", &FitResult::sum_sq)
        .def_readonly("n_evals", &FitResult::n_evals)
        .def_readonly("converged", &FitResult::converged)
        .def_readonly("uncertainties", &FitResult::uncertainties);

    m.def(
        "minimize",
        [](const std::function<std::vector<double>(std::vector<double>)>& residual_fn,
           std::vector<double> initial, std::vector<double> lower, std::vector<double> upper,
           int max_evals, double tolerance) {
            FitProblem prob;
            prob.residual_fn = [&residual_fn](std::span<const double> p,
                                              std::vector<double>& out) {
                out = residual_fn(std::vector<double>(p.begin(), p.end()));
            };
            prob.initial = std::move(initial);
            prob.lower = std::move(lower);
            prob.upper = std::move(upper);
            prob.max_evals = max_evals;
            prob.tolerance = tolerance;
            return minimize(prob);
        },
        py::arg("residual_fn"), py::arg("initial"), py::arg("lower"), py::arg("upper"),
        py::arg("max_evals") = 20000, py::arg("tolerance") = 1e-10);

    py::class_<SweepFitResult>(m, "SweepFitResult")
        .def_readonly("model", &SweepFitResult::model)
        .def_readonly("fit", &SweepFitResult::fit)
        .def_readonly("peak_significant", &SweepFitResult::peak_significant);

    m.def("fit_sweep", &fit_sweep, py::arg("data_db"), py::arg("max_evals") = 20000);

    // calibration
    py::class_<HeterodyneCalibration>(m, "HeterodyneCalibration")
        .def(py::init([](double eta_lo, double vsa, double vfringes, double contrast) {
                 HeterodyneCalibration cal{eta_lo, vsa, vfringes, contrast};
                 cal.validate();
                 return cal;
             }),
             py::arg("lo_sideband_efficiency"), py::arg("beatnote_volts"),
             py::arg("fringe_volts"), py::arg("contrast") = 0.0);

    m.def("eta_eo_from_measurement", &eta_eo_from_measurement, py::arg("calibration"));

    py::class_<PowerChain>(m, "PowerChain")
        .def(py::init([](double source_power_dbm, double line_attenuation_db,
                         double input_split) {
                 PowerChain chain{source_power_dbm, line_attenuation_db, input_split};
                 chain.validate();
                 return chain;
             }),
             py::arg("source_power_dbm"), py::arg("line_attenuation_db"),
             py::arg("input_split") = 0.5);

    m.def("cavity_input_power", &cavity_input_power, py::arg("chain"));
    m.def("mz_filter_minima", &mz_filter_minima, py::arg("path_difference_m"),
          py::arg("band_max_hz"));

    // experiment-level helpers
    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("rf_power_mw", &ExperimentConfig::rf_power_mw)
        .def_readwrite("model_rescale_db", &ExperimentConfig::model_rescale_db)
        .def_readwrite("pump_power_mw", &ExperimentConfig::pump_power_mw)
        .def("population_imbalance", &ExperimentConfig::population_imbalance)
        .def("validate", &ExperimentConfig::validate);

    py::class_<Prediction>(m, "Prediction")
        .def_readonly("mode_frequency_ghz", &Prediction::mode_frequency_ghz)
        .def_readonly("rf_rabi_rad_s", &Prediction::rf_rabi_rad_s)
        .def_readonly("eta_eo_db", &Prediction::eta_eo_db)
        .def_readonly("eta_q_db", &Prediction::eta_q_db)
        .def_readonly("eta_q_offset_db", &Prediction::eta_q_offset_db)
        .def_readonly("cooperativity_estimate", &Prediction::cooperativity_estimate)
        .def_readonly("population_imbalance", &Prediction::population_imbalance);

    m.def("predict", &predict, py::arg("config"));
    m.def("load_config", &load_config, py::arg("path"));
}
