#ifndef OPTORF_TRANSDUCTION_HPP
#define OPTORF_TRANSDUCTION_HPP

/**
 * @file transduction.hpp
 * @brief Steady-state three-level Λ-system solution and the opto-RF
 *        transduction efficiencies.
 *
 * Decay enters exclusively through complex detunings: every formula uses
 * Δc = Δ − iΓ/2 and δc = δ − iγ/2, where Γ and γ are the optical and spin
 * FWHM linewidths. Fields are expressed as Rabi frequencies (rad/s). The
 * thermal population imbalance (ρgg − ρss) rescales the RF Rabi frequency, so
 * it enters the generated field linearly and the efficiencies quadratically.
 */

#include <complex>
#include <utility>

#include "optorf/constants.hpp"

namespace optorf {

using cplx = std::complex<double>;

/// Every knob of the Λ-system steady state.
struct LambdaParams {
    double optical_detuning = 0.0;  ///< Δ [rad/s], pump leg |s>-|e>
    double spin_detuning = 0.0;     ///< δ [rad/s], RF leg |g>-|s>
    double optical_fwhm = 0.0;      ///< Γ [rad/s]
    double spin_fwhm = 0.0;         ///< γ [rad/s]
    double pump_rabi = 0.0;         ///< Ω [rad/s], optical Raman field
    double rf_rabi = 0.0;           ///< μ [rad/s]
    double od_signal = 0.0;         ///< α_E·z on the signal transition |g>-|e>
    double od_pump = 0.0;           ///< α_Ω·z on the pump transition |s>-|e>
    double pop_imbalance = 1.0;     ///< ρgg − ρss in [0, 1]

    void validate() const;

    cplx optical_detuning_c() const { return {optical_detuning, -optical_fwhm / 2.0}; }
    cplx spin_detuning_c() const { return {spin_detuning, -spin_fwhm / 2.0}; }
};

/// Stationary optical polarization P and spin coherence S of the Λ-system
/// driven by the signal field (Rabi frequency signal_rabi), the pump and the
/// RF field:
///   P = (2 δc E + Ω μ) / (4 δc Δc − Ω²),  S = (μ + Ω P) / (2 δc).
/// Throws std::domain_error when 4 δc Δc = Ω² (possible only with vanishing
/// linewidths).
std::pair<cplx, cplx> steady_state_coherences(const LambdaParams& p, double signal_rabi);

/// Integral solution of the signal propagation over the fraction z_fraction of
/// the total optical depth od_signal:
///   E(z) = (1/2δc) [exp(−2i δc Γ α z / (4 δc Δc − Ω²)) − 1] Ω μ (ρgg−ρss).
cplx transduction_field_full(const LambdaParams& p, double z_fraction = 1.0);

/// First-order (low optical depth) form:
///   E = [−iΓ/(4 δc Δc)] α_E z Ω μ (ρgg−ρss).
cplx transduction_field_low_od(const LambdaParams& p);

/// Electro-optics efficiency (sideband power over carrier power):
///   η_eo = |Γ/(4 δc Δc)|² (α_E z)(α_Ω z) |μ|² (ρgg−ρss)².
double eta_eo(const LambdaParams& p);

/// Quantum (photon-number) efficiency from the electro-optics efficiency and
/// the experimental powers: η_Q = η_eo (P_o ω_rf) / (P_rf ω_o).
double eta_q_from_eta_eo(double eta_eo_value, double optical_power_w, double rf_power_w,
                         AngularFrequency omega_optical, AngularFrequency omega_rf);

/// Quantum efficiency directly from the cooperativities:
///   η_Q = |Ω √(Γγ)/(4 δc Δc)|² C_E C_μ (S_E z / V_crystal) (ρgg−ρss)².
double eta_q_cooperativity_form(double pump_rabi, double optical_fwhm, double spin_fwhm,
                                cplx spin_detuning_c, cplx optical_detuning_c,
                                double coop_optical, double coop_spin,
                                double beam_area_m2, double path_length_m,
                                double crystal_volume_m3, double pop_imbalance = 1.0);

/// Applies an explicit model rescale in dB (the knob that absorbs unexplained
/// model-to-experiment offsets; default 0, never applied silently).
double model_rescale(double eta, double rescale_db);

/// Quantized-field bookkeeping connecting dipole moments, coupling constants,
/// absorption coefficients and cooperativities for the free-space optical path
/// tied to an RF cavity of coupling rate kappa_c.
struct QuantizedCouplings {
    double signal_dipole = 0.0;     ///< C·m, |g>-|e> transition
    double pump_dipole = 0.0;       ///< C·m, |s>-|e> transition
    double omega_optical = 0.0;     ///< rad/s
    double atom_density = 0.0;      ///< m^-3
    double beam_area = 0.0;         ///< S_E [m^2]
    double path_length = 0.0;       ///< z [m]
    double crystal_volume = 0.0;    ///< m^3
    double optical_fwhm = 0.0;      ///< Γ [rad/s]
    double spin_fwhm = 0.0;         ///< γ [rad/s]
    double cavity_coupling = 0.0;   ///< κ_c [rad/s]
    double spin_coupling = 0.0;     ///< g_μ [rad/s]

    /// Optical quantization volume S_E c / (2 κ_c): the photon length in free
    /// space is set by the RF cavity bandwidth so both converted photons share
    /// one wavepacket duration.
    double quantization_volume() const;
    double atoms_in_beam() const { return atom_density * beam_area * path_length; }
    double spins_in_crystal() const { return atom_density * crystal_volume; }

    /// g = d √(ω / 2ħε0 V_E) for the given transition dipole.
    double coupling_constant(double dipole) const;
    /// α = N ω d² / (ħ c ε0 Γ) for the given transition dipole.
    double absorption_coefficient(double dipole) const;

    double signal_coupling() const { return coupling_constant(signal_dipole); }
    double pump_coupling() const { return coupling_constant(pump_dipole); }

    /// Optical cooperativity both ways; they agree identically.
    double optical_cooperativity_from_coupling() const;  ///< g² N_E / (Γ κ_c)
    double optical_cooperativity_from_od() const;        ///< α_E z
    double pump_od() const { return absorption_coefficient(pump_dipole) * path_length; }

    double spin_cooperativity() const;  ///< g_μ² N_μ / (γ κ_c)
};

/// Power carried by a photon flux equivalent to |rabi/coupling|² quanta per
/// wavepacket of the given bandwidth: P = ħω (rabi/coupling)² bandwidth.
/// Used to express the Rabi frequencies as input powers consistently on both
/// legs of the efficiency bookkeeping (the bandwidth cancels in ratios).
double photon_flux_power(double rabi, double coupling, double omega, double bandwidth);

}  // namespace optorf

#endif  // OPTORF_TRANSDUCTION_HPP
