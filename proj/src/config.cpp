#include "optorf/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "optorf/faddeeva.hpp"

namespace optorf {

CavityParams ExperimentConfig::cavity() const {
    return {AngularFrequency::from_ghz(cavity_frequency_ghz),
            AngularFrequency::from_mhz(kappa_c_mhz), AngularFrequency::from_mhz(kappa_t_mhz)};
}

SpinEnsembleParams ExperimentConfig::spins() const {
    return {spin_g_factor, AngularFrequency::from_mhz(spin_linewidth_mhz), spin_cooperativity};
}

ZeemanQuartet ExperimentConfig::quartet() const {
    const VoigtWidths widths =
        voigt_widths_from_total(optical_fwhm_mhz * 1e6, lorentz_fraction);
    return {constants::c_light / (center_wavelength_nm * 1e-9),
            g_ground,
            g_excited,
            absorption_field_mt * 1e-3,
            od_direct,
            od_crossed,
            temperature_k,
            widths.lorentz_fwhm_hz,
            widths.gauss_fwhm_hz};
}

ResonatorGeometry ExperimentConfig::geometry() const {
    return {box_a_mm * 1e-3, box_b_mm * 1e-3, box_d_mm * 1e-3, probe_x_mm * 1e-3,
            probe_z_mm * 1e-3};
}

DriveConditions ExperimentConfig::drive() const {
    return {rf_power_w(), AngularFrequency::from_ghz(rf_frequency_ghz), g_transverse};
}

SampleSpec ExperimentConfig::sample() const {
    return {host_density_per_cm3 * 1e6, doping_ppm * 1e-6, isotope_fraction,
            crystal_volume_mm3 * 1e-9, temperature_k};
}

double ExperimentConfig::population_imbalance() const {
    if (pop_imbalance) return *pop_imbalance;
    return thermal_population_imbalance(AngularFrequency::from_ghz(rf_frequency_ghz),
                                        temperature_k);
}

AngularFrequency ExperimentConfig::omega_optical() const {
    return wavelength_to_angular(probe_wavelength_nm * 1e-9);
}

LambdaParams ExperimentConfig::lambda_params() const {
    LambdaParams p;
    p.optical_detuning = AngularFrequency::from_mhz(optical_detuning_mhz).rad_per_s;
    p.spin_detuning = AngularFrequency::from_mhz(spin_detuning_mhz).rad_per_s;
    p.optical_fwhm = AngularFrequency::from_mhz(optical_fwhm_mhz).rad_per_s;
    p.spin_fwhm = AngularFrequency::from_mhz(spin_linewidth_mhz).rad_per_s;
    p.pump_rabi = AngularFrequency::from_mhz(pump_rabi_mhz).rad_per_s;
    p.rf_rabi = 0.0;  // set by the caller from the drive conditions
    p.od_signal = od_direct;
    p.od_pump = od_crossed;
    p.pop_imbalance = population_imbalance();
    return p;
}

void ExperimentConfig::validate() const {
    auto wrap = [](const char* field, const std::function<void()>& check) {
        try {
            check();
        } catch (const std::exception& e) {
            throw ConfigError(field, e.what());
        }
    };
    wrap("cavity", [&] { cavity().validate(); });
    wrap("spins", [&] { spins().validate(); });
    wrap("absorption", [&] { quartet().validate(); });
    wrap("geometry", [&] { geometry().validate(); });
    wrap("drive", [&] { drive().validate(); });
    wrap("sample", [&] { sample().validate(); });
    wrap("optics", [&] {
        if (!(pump_power_mw > 0.0)) throw std::invalid_argument("pump power must be positive");
        if (!(probe_wavelength_nm > 0.0))
            throw std::invalid_argument("probe wavelength must be positive");
        if (!(pump_rabi_mhz > 0.0)) throw std::invalid_argument("pump Rabi must be positive");
    });
    wrap("lambda.pop_imbalance", [&] {
        const double imbalance = population_imbalance();
        if (imbalance < 0.0 || imbalance > 1.0)
            throw std::invalid_argument("imbalance must be in [0, 1]");
    });
    wrap("absorption.lorentz_fraction", [&] {
        if (lorentz_fraction < 0.0 || lorentz_fraction > 1.0)
            throw std::invalid_argument("must be in [0, 1]");
    });
}

namespace {

struct TomlValue {
    std::string raw;
    std::size_t line = 0;
};

using TomlSections = std::map<std::string, std::map<std::string, TomlValue>>;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Minimal TOML subset: [section], key = value, '#' comments, bare numbers,
// quoted strings, booleans. Enough for flat key/value experiment files.
TomlSections parse_toml(std::istream& is) {
    TomlSections sections;
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError("line " + std::to_string(lineno), "malformed section header");
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno), "expected key = value");
        const std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(lineno), "expected key = value");
        sections[section][key] = {value, lineno};
    }
    return sections;
}

double to_double(const std::string& field, const TomlValue& v) {
    char* end = nullptr;
    const double x = std::strtod(v.raw.c_str(), &end);
    if (end == v.raw.c_str() || *end != '\0')
        throw ConfigError(field, "cannot parse number '" + v.raw + "'");
    return x;
}

}  // namespace

ExperimentConfig parse_config(std::istream& is) {
    const TomlSections sections = parse_toml(is);
    ExperimentConfig cfg;

    std::map<std::string, std::map<std::string, double*>> layout = {
        {"cavity",
         {{"frequency_ghz", &cfg.cavity_frequency_ghz},
          {"kappa_c_mhz", &cfg.kappa_c_mhz},
          {"kappa_t_mhz", &cfg.kappa_t_mhz}}},
        {"spins",
         {{"g_factor", &cfg.spin_g_factor},
          {"linewidth_mhz", &cfg.spin_linewidth_mhz},
          {"cooperativity", &cfg.spin_cooperativity},
          {"line_attenuation_db", &cfg.line_attenuation_db}}},
        {"absorption",
         {{"center_wavelength_nm", &cfg.center_wavelength_nm},
          {"od_direct", &cfg.od_direct},
          {"od_crossed", &cfg.od_crossed},
          {"optical_fwhm_mhz", &cfg.optical_fwhm_mhz},
          {"lorentz_fraction", &cfg.lorentz_fraction},
          {"g_ground", &cfg.g_ground},
          {"g_excited", &cfg.g_excited},
          {"field_mt", &cfg.absorption_field_mt}}},
        {"geometry",
         {{"a_mm", &cfg.box_a_mm},
          {"b_mm", &cfg.box_b_mm},
          {"d_mm", &cfg.box_d_mm},
          {"probe_x_mm", &cfg.probe_x_mm},
          {"probe_z_mm", &cfg.probe_z_mm}}},
        {"drive",
         {{"rf_power_mw", &cfg.rf_power_mw},
          {"frequency_ghz", &cfg.rf_frequency_ghz},
          {"g_transverse", &cfg.g_transverse}}},
        {"sample",
         {{"host_density_per_cm3", &cfg.host_density_per_cm3},
          {"doping_ppm", &cfg.doping_ppm},
          {"isotope_fraction", &cfg.isotope_fraction},
          {"crystal_volume_mm3", &cfg.crystal_volume_mm3},
          {"temperature_k", &cfg.temperature_k}}},
        {"optics",
         {{"pump_power_mw", &cfg.pump_power_mw},
          {"probe_wavelength_nm", &cfg.probe_wavelength_nm},
          {"pump_rabi_mhz", &cfg.pump_rabi_mhz}}},
        {"lambda",
         {{"optical_detuning_mhz", &cfg.optical_detuning_mhz},
          {"spin_detuning_mhz", &cfg.spin_detuning_mhz}}},
        {"model", {{"rescale_db", &cfg.model_rescale_db}}},
    };

    for (const auto& [section, keys] : sections) {
        const auto sec_it = layout.find(section);
        for (const auto& [key, value] : keys) {
            const std::string field = section.empty() ? key : section + "." + key;
            if (section == "lambda" && key == "pop_imbalance") {
                if (value.raw == "auto")
                    cfg.pop_imbalance.reset();
                else
                    cfg.pop_imbalance = to_double(field, value);
                continue;
            }
            if (sec_it == layout.end()) throw ConfigError(field, "unknown section");
            const auto key_it = sec_it->second.find(key);
            if (key_it == sec_it->second.end()) throw ConfigError(field, "unknown key");
            *key_it->second = to_double(field, value);
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError(path, "cannot open config file");
    return parse_config(is);
}

void write_config(std::ostream& os, const ExperimentConfig& c) {
    os << "[cavity]\n"
       << "frequency_ghz = " << c.cavity_frequency_ghz << "\n"
       << "kappa_c_mhz = " << c.kappa_c_mhz << "\n"
       << "kappa_t_mhz = " << c.kappa_t_mhz << "\n\n"
       << "[spins]\n"
       << "g_factor = " << c.spin_g_factor << "\n"
       << "linewidth_mhz = " << c.spin_linewidth_mhz << "\n"
       << "cooperativity = " << c.spin_cooperativity << "\n"
       << "line_attenuation_db = " << c.line_attenuation_db << "\n\n"
       << "[absorption]\n"
       << "center_wavelength_nm = " << c.center_wavelength_nm << "\n"
       << "od_direct = " << c.od_direct << "\n"
       << "od_crossed = " << c.od_crossed << "\n"
       << "optical_fwhm_mhz = " << c.optical_fwhm_mhz << "\n"
       << "lorentz_fraction = " << c.lorentz_fraction << "\n"
       << "g_ground = " << c.g_ground << "\n"
       << "g_excited = " << c.g_excited << "\n"
       << "field_mt = " << c.absorption_field_mt << "\n\n"
       << "[geometry]\n"
       << "a_mm = " << c.box_a_mm << "\n"
       << "b_mm = " << c.box_b_mm << "\n"
       << "d_mm = " << c.box_d_mm << "\n"
       << "probe_x_mm = " << c.probe_x_mm << "\n"
       << "probe_z_mm = " << c.probe_z_mm << "\n\n"
       << "[drive]\n"
       << "rf_power_mw = " << c.rf_power_mw << "\n"
       << "frequency_ghz = " << c.rf_frequency_ghz << "\n"
       << "g_transverse = " << c.g_transverse << "\n\n"
       << "[sample]\n"
       << "host_density_per_cm3 = " << c.host_density_per_cm3 << "\n"
       << "doping_ppm = " << c.doping_ppm << "\n"
       << "isotope_fraction = " << c.isotope_fraction << "\n"
       << "crystal_volume_mm3 = " << c.crystal_volume_mm3 << "\n"
       << "temperature_k = " << c.temperature_k << "\n\n"
       << "[optics]\n"
       << "pump_power_mw = " << c.pump_power_mw << "\n"
       << "probe_wavelength_nm = " << c.probe_wavelength_nm << "\n"
       << "pump_rabi_mhz = " << c.pump_rabi_mhz << "\n\n"
       << "[lambda]\n"
       << "optical_detuning_mhz = " << c.optical_detuning_mhz << "\n"
       << "spin_detuning_mhz = " << c.spin_detuning_mhz << "\n"
       << "pop_imbalance = "
       << (c.pop_imbalance ? std::to_string(*c.pop_imbalance) : std::string("auto")) << "\n\n"
       << "[model]\n"
       << "rescale_db = " << c.model_rescale_db << "\n";
}

}  // namespace optorf
