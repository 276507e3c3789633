#include "optorf/resonator.hpp"

#include <cmath>
#include <stdexcept>

namespace optorf {

void ResonatorGeometry::validate() const {
    if (!(a > 0.0) || !(b > 0.0) || !(d > 0.0))
        throw std::invalid_argument("ResonatorGeometry: dimensions must be positive");
    if (!(probe_x > 0.0) || !(probe_x < a))
        throw std::invalid_argument("ResonatorGeometry: probe_x outside the box");
    if (!(probe_z > 0.0) || !(probe_z < d))
        throw std::invalid_argument("ResonatorGeometry: probe_z outside the box");
}

double ResonatorGeometry::transverse_ratio() const { return a / std::sqrt(d * d + a * a); }

double ResonatorGeometry::position_factor() const {
    return std::cos(constants::pi * probe_z / d);
}

void DriveConditions::validate() const {
    if (rf_power_w < 0.0) throw std::invalid_argument("DriveConditions: power negative");
    if (!(omega_rf.rad_per_s > 0.0))
        throw std::invalid_argument("DriveConditions: frequency must be positive");
    if (!(g_transverse > 0.0))
        throw std::invalid_argument("DriveConditions: g_transverse must be positive");
}

void SampleSpec::validate() const {
    if (!(host_density_per_m3 > 0.0))
        throw std::invalid_argument("SampleSpec: host density must be positive");
    if (!(doping_fraction > 0.0) || doping_fraction >= 0.01)
        throw std::invalid_argument("SampleSpec: doping fraction must be in (0, 0.01)");
    if (!(isotope_fraction > 0.0) || isotope_fraction > 1.0)
        throw std::invalid_argument("SampleSpec: isotope fraction must be in (0, 1]");
    if (!(crystal_volume_m3 > 0.0))
        throw std::invalid_argument("SampleSpec: crystal volume must be positive");
    if (!(temperature_k > 0.0))
        throw std::invalid_argument("SampleSpec: temperature must be positive");
}

double mode_frequency_hz(const ResonatorGeometry& geom) {
    return constants::c_light / 2.0 * std::sqrt(1.0 / (geom.a * geom.a) + 1.0 / (geom.d * geom.d));
}

ModeFields mode_fields(const ResonatorGeometry& geom, double e0, double x, double z) {
    if (x < 0.0 || x > geom.a || z < 0.0 || z > geom.d)
        throw std::invalid_argument("mode_fields: position outside the box");
    const double sx = std::sin(constants::pi * x / geom.a);
    const double cx = std::cos(constants::pi * x / geom.a);
    const double sz = std::sin(constants::pi * z / geom.d);
    const double cz = std::cos(constants::pi * z / geom.d);
    const double diag = std::sqrt(geom.d * geom.d + geom.a * geom.a);
    ModeFields f;
    f.e_y = e0 * sx * sz;
    f.b_x = std::complex<double>(0.0, -e0 / constants::c_light * (geom.a / diag) * sx * cz);
    f.b_z = std::complex<double>(0.0, e0 / constants::c_light * (geom.d / diag) * cx * sz);
    return f;
}

double stored_energy_from_field(const ResonatorGeometry& geom, double e0) {
    return constants::eps_0 * geom.volume() * e0 * e0 / 8.0;
}

double stored_energy_from_power(const ResonatorGeometry& geom, const DriveConditions& drive,
                                const CavityParams& cavity) {
    (void)geom;
    const double dw = drive.omega_rf.rad_per_s - cavity.omega_c.rad_per_s;
    return 4.0 * cavity.kappa_c.rad_per_s /
           (4.0 * dw * dw + cavity.kappa_t.rad_per_s * cavity.kappa_t.rad_per_s) *
           drive.rf_power_w;
}

double intracavity_b_amplitude(const ResonatorGeometry& geom, const DriveConditions& drive,
                               const CavityParams& cavity, bool include_position_factor) {
    const double dw = drive.omega_rf.rad_per_s - cavity.omega_c.rad_per_s;
    const double lorentz = 2.0 * cavity.kappa_c.rad_per_s /
                           (4.0 * dw * dw + cavity.kappa_t.rad_per_s * cavity.kappa_t.rad_per_s);
    double amp = 4.0 * std::sqrt(constants::mu_0) * geom.transverse_ratio() *
                 std::sqrt(drive.rf_power_w / geom.volume()) * std::sqrt(lorentz);
    if (include_position_factor) amp *= geom.position_factor();
    return amp;
}

double rf_rabi_frequency(const ResonatorGeometry& geom, const DriveConditions& drive,
                         const CavityParams& cavity, bool include_position_factor) {
    return drive.g_transverse * constants::mu_bohr *
           intracavity_b_amplitude(geom, drive, cavity, include_position_factor) /
           constants::hbar;
}

double vacuum_coupling(const ResonatorGeometry& geom, AngularFrequency omega,
                       double g_transverse) {
    if (!(omega.rad_per_s > 0.0))
        throw std::domain_error("vacuum_coupling: frequency must be positive");
    return g_transverse * constants::mu_bohr * geom.transverse_ratio() *
           std::sqrt(2.0 * omega.rad_per_s * constants::mu_0 /
                     (constants::hbar * geom.volume()));
}

double effective_spin_number(const SampleSpec& sample, AngularFrequency omega) {
    return sample.host_density_per_m3 * sample.doping_fraction * sample.isotope_fraction *
           sample.crystal_volume_m3 * thermal_population_imbalance(omega, sample.temperature_k);
}

double cooperativity_estimate(const ResonatorGeometry& geom, const SampleSpec& sample,
                              const CavityParams& cavity, const SpinEnsembleParams& spins,
                              AngularFrequency omega) {
    const double g_mu = vacuum_coupling(geom, omega, spins.g_factor);
    return g_mu * g_mu * effective_spin_number(sample, omega) /
           (spins.gamma.rad_per_s * cavity.kappa_c.rad_per_s);
}

}  // namespace optorf
