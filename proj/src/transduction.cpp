#include "optorf/transduction.hpp"

#include <cmath>
#include <stdexcept>

namespace optorf {

void LambdaParams::validate() const {
    if (!(optical_fwhm > 0.0) || !(spin_fwhm > 0.0))
        throw std::invalid_argument("LambdaParams: linewidths must be positive");
    if (od_signal < 0.0 || od_pump < 0.0)
        throw std::invalid_argument("LambdaParams: optical depths must be non-negative");
    if (pop_imbalance < 0.0 || pop_imbalance > 1.0)
        throw std::invalid_argument("LambdaParams: pop_imbalance must be in [0,1]");
}

namespace {

cplx mixing_denominator(const LambdaParams& p) {
    return 4.0 * p.spin_detuning_c() * p.optical_detuning_c() - p.pump_rabi * p.pump_rabi;
}

}  // namespace

std::pair<cplx, cplx> steady_state_coherences(const LambdaParams& p, double signal_rabi) {
    const cplx dc = p.spin_detuning_c();
    const cplx den = mixing_denominator(p);
    if (den == cplx(0.0, 0.0))
        throw std::domain_error("steady_state_coherences: 4*dc*Dc - Omega^2 vanishes");
    if (dc == cplx(0.0, 0.0))
        throw std::domain_error("steady_state_coherences: spin complex detuning vanishes");
    const cplx P = (2.0 * dc * signal_rabi + p.pump_rabi * p.rf_rabi) / den;
    const cplx S = (p.rf_rabi + p.pump_rabi * P) / (2.0 * dc);
    return {P, S};
}

cplx transduction_field_full(const LambdaParams& p, double z_fraction) {
    if (z_fraction < 0.0 || z_fraction > 1.0)
        throw std::invalid_argument("transduction_field_full: z_fraction must be in [0,1]");
    const cplx dc = p.spin_detuning_c();
    if (dc == cplx(0.0, 0.0))
        throw std::domain_error("transduction_field_full: spin complex detuning vanishes");
    const cplx den = mixing_denominator(p);
    if (den == cplx(0.0, 0.0))
        throw std::domain_error("transduction_field_full: 4*dc*Dc - Omega^2 vanishes");
    const double az = p.od_signal * z_fraction;
    const cplx exponent = -2.0 * cplx(0.0, 1.0) * dc * p.optical_fwhm * az / den;
    return (std::exp(exponent) - 1.0) / (2.0 * dc) * p.pump_rabi * p.rf_rabi * p.pop_imbalance;
}

cplx transduction_field_low_od(const LambdaParams& p) {
    const cplx dD = 4.0 * p.spin_detuning_c() * p.optical_detuning_c();
    if (dD == cplx(0.0, 0.0))
        throw std::domain_error("transduction_field_low_od: detuning product vanishes");
    return cplx(0.0, -p.optical_fwhm) / dD * p.od_signal * p.pump_rabi * p.rf_rabi *
           p.pop_imbalance;
}

double eta_eo(const LambdaParams& p) {
    const cplx dD = 4.0 * p.spin_detuning_c() * p.optical_detuning_c();
    if (dD == cplx(0.0, 0.0)) throw std::domain_error("eta_eo: detuning product vanishes");
    const double prefactor = std::norm(p.optical_fwhm / dD);
    return prefactor * p.od_signal * p.od_pump * p.rf_rabi * p.rf_rabi * p.pop_imbalance *
           p.pop_imbalance;
}

double eta_q_from_eta_eo(double eta_eo_value, double optical_power_w, double rf_power_w,
                         AngularFrequency omega_optical, AngularFrequency omega_rf) {
    if (!(optical_power_w > 0.0) || !(rf_power_w > 0.0))
        throw std::domain_error("eta_q_from_eta_eo: powers must be positive");
    if (!(omega_optical.rad_per_s > 0.0) || !(omega_rf.rad_per_s > 0.0))
        throw std::domain_error("eta_q_from_eta_eo: frequencies must be positive");
    return eta_eo_value * optical_power_w * omega_rf.rad_per_s /
           (rf_power_w * omega_optical.rad_per_s);
}

double eta_q_cooperativity_form(double pump_rabi, double optical_fwhm, double spin_fwhm,
                                cplx spin_detuning_c, cplx optical_detuning_c,
                                double coop_optical, double coop_spin, double beam_area_m2,
                                double path_length_m, double crystal_volume_m3,
                                double pop_imbalance) {
    if (!(beam_area_m2 > 0.0) || !(path_length_m > 0.0) || !(crystal_volume_m3 > 0.0))
        throw std::domain_error("eta_q_cooperativity_form: geometry must be positive");
    const cplx dD = 4.0 * spin_detuning_c * optical_detuning_c;
    if (dD == cplx(0.0, 0.0))
        throw std::domain_error("eta_q_cooperativity_form: detuning product vanishes");
    const double amp = std::norm(pump_rabi * std::sqrt(optical_fwhm * spin_fwhm) / dD);
    return amp * coop_optical * coop_spin * (beam_area_m2 * path_length_m / crystal_volume_m3) *
           pop_imbalance * pop_imbalance;
}

double model_rescale(double eta, double rescale_db) { return eta * db_to_linear(rescale_db); }

double QuantizedCouplings::quantization_volume() const {
    return beam_area * constants::c_light / (2.0 * cavity_coupling);
}

double QuantizedCouplings::coupling_constant(double dipole) const {
    return dipole * std::sqrt(omega_optical /
                              (2.0 * constants::hbar * constants::eps_0 * quantization_volume()));
}

double QuantizedCouplings::absorption_coefficient(double dipole) const {
    return atom_density * omega_optical * dipole * dipole /
           (constants::hbar * constants::c_light * constants::eps_0 * optical_fwhm);
}

double QuantizedCouplings::optical_cooperativity_from_coupling() const {
    const double g = signal_coupling();
    return g * g * atoms_in_beam() / (optical_fwhm * cavity_coupling);
}

double QuantizedCouplings::optical_cooperativity_from_od() const {
    return absorption_coefficient(signal_dipole) * path_length;
}

double QuantizedCouplings::spin_cooperativity() const {
    return spin_coupling * spin_coupling * spins_in_crystal() / (spin_fwhm * cavity_coupling);
}

double photon_flux_power(double rabi, double coupling, double omega, double bandwidth) {
    if (!(coupling > 0.0))
        throw std::domain_error("photon_flux_power: coupling must be positive");
    const double quanta = (rabi / coupling) * (rabi / coupling);
    return constants::hbar * omega * quanta * bandwidth;
}

}  // namespace optorf
