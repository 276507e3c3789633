#ifndef OPTORF_ABSORPTION_HPP
#define OPTORF_ABSORPTION_HPP

/**
 * @file absorption.hpp
 * @brief Four-line Zeeman absorption model: two direct and two crossed
 *        transitions between ground and excited Kramers doublets, each a
 *        peak-normalized Voigt line weighted by the thermal population of its
 *        starting level. Synthesis gives Beer-Lambert transmission spectra;
 *        the fit extracts optical depths, widths, g-factors and temperature.
 */

#include <array>
#include <vector>

#include "optorf/constants.hpp"
#include "optorf/faddeeva.hpp"
#include "optorf/fitting.hpp"

namespace optorf {

/// A single Voigt absorption line. The shape is normalized to 1 at the
/// center, so peak_od is the optical depth at line center for unit population.
struct VoigtLine {
    double center_hz = 0.0;
    double lorentz_fwhm_hz = 0.0;
    double gauss_fwhm_hz = 0.0;
    double peak_od = 0.0;

    void validate() const;
};

/// The four Zeeman lines sharing a zero-field center and common widths.
/// Direct lines sit at center ± (nu_g − nu_e)/2 and crossed lines at
/// center ± (nu_g + nu_e)/2, with nu_x = g_x * mu_B * B0 / h. Amplitudes are
/// od_direct/od_crossed split by the thermal populations of the two ground
/// sublevels (populations follow the ground doublet splitting nu_g).
struct ZeemanQuartet {
    double center_freq_hz = 0.0;   ///< zero-field line, from the vacuum wavelength
    double g_ground = 0.0;
    double g_excited = 0.0;
    double field_tesla = 0.0;
    double od_direct = 0.0;        ///< peak OD of a direct line at unit population
    double od_crossed = 0.0;
    double temperature_k = 0.0;
    double lorentz_fwhm_hz = 0.0;  ///< shared by all four lines
    double gauss_fwhm_hz = 0.0;

    void validate() const;

    double ground_splitting_hz() const;
    double excited_splitting_hz() const;
    /// Line offsets from center_freq_hz, ordered
    /// {direct +, direct −, crossed +, crossed −}.
    std::array<double, 4> line_offsets_hz() const;
    /// Peak optical depths in the same order.
    std::array<double, 4> line_amplitudes() const;
};

struct TransmissionSpectrum {
    std::vector<double> detunings_hz;   ///< relative to the quartet center
    std::vector<double> transmission;   ///< in (0, 1]
};

/// T(nu) = exp(−Σ_i A_i · voigt_peak_normalized(nu − nu_i)).
TransmissionSpectrum synthesize_transmission(const ZeemanQuartet& model,
                                             const std::vector<double>& detunings_hz);

/// Parameters of the absorption fit, in fit order. The quartet center is
/// fitted as an offset from the spectrum's zero detuning; the bias field is
/// held fixed (it is known from the experiment configuration).
struct AbsorptionFitParams {
    double od_direct = 0.0;
    double od_crossed = 0.0;
    double lorentz_fwhm_hz = 0.0;
    double gauss_fwhm_hz = 0.0;
    double g_ground = 0.0;
    double g_excited = 0.0;
    double center_offset_hz = 0.0;
    double temperature_k = 0.0;

    std::vector<double> to_vector() const;
    static AbsorptionFitParams from_vector(const std::vector<double>& v);
    double total_fwhm_hz() const { return voigt_fwhm(lorentz_fwhm_hz, gauss_fwhm_hz); }
};

struct AbsorptionFitResult {
    AbsorptionFitParams params;
    FitResult fit;
};

/// Least-squares fit of the four-line model to a transmission spectrum whose
/// baseline has already been normalized to 1 off resonance.
AbsorptionFitResult fit_absorption(const TransmissionSpectrum& data, double field_tesla,
                                   const AbsorptionFitParams& initial_guess,
                                   const AbsorptionFitParams& lower,
                                   const AbsorptionFitParams& upper,
                                   int max_evals = 60000);

}  // namespace optorf

#endif  // OPTORF_ABSORPTION_HPP
