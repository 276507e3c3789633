#ifndef OPTORF_CAVITY_SPIN_HPP
#define OPTORF_CAVITY_SPIN_HPP

/**
 * @file cavity_spin.hpp
 * @brief Input-output model of a spin-loaded RF cavity: complex reflection
 *        coefficient S11, synthesis of |S11|(frequency, field) maps and the
 *        global map fit extracting the cavity and ensemble parameters.
 */

#include <complex>
#include <vector>

#include "optorf/constants.hpp"
#include "optorf/fitting.hpp"

namespace optorf {

using cplx = std::complex<double>;

/// RF resonator parameters entering the reflection model.
struct CavityParams {
    AngularFrequency omega_c;   ///< cavity resonance
    AngularFrequency kappa_c;   ///< coupling rate to the feed line
    AngularFrequency kappa_t;   ///< total damping rate (FWHM)

    /// Throws std::invalid_argument unless 0 < kappa_c <= kappa_t and Q > 1.
    void validate() const;
    double quality_factor() const { return omega_c.rad_per_s / kappa_t.rad_per_s; }
};

/// Spin ensemble parameters: g-factor (sets the Larmor frequency), FWHM
/// linewidth and the dimensionless RF cooperativity.
struct SpinEnsembleParams {
    double g_factor = 0.0;
    AngularFrequency gamma;     ///< spin linewidth (FWHM)
    double cooperativity = 0.0; ///< C_mu

    void validate() const;
};

/// Spin contribution W(omega_rf) to the cavity denominator:
/// W = C_mu * (i kappa_t / 2) / (2i (omega_rf - omega_s)/gamma - 1).
cplx spin_term(AngularFrequency omega_rf, AngularFrequency omega_s,
               const CavityParams& cavity, const SpinEnsembleParams& spins);

/// Complex reflection coefficient
/// S11 = 1 - i kappa_c / (omega_rf - omega_c + i kappa_t/2 - W(omega_rf)).
/// Throws std::domain_error if the denominator vanishes (possible only with
/// zero damping).
cplx s11(AngularFrequency omega_rf, AngularFrequency omega_s,
         const CavityParams& cavity, const SpinEnsembleParams& spins);

/// A grid of complex reflection amplitudes over (bias field, RF frequency).
/// values is stored row-major with fields as the outer index:
/// values[i_field * frequencies.size() + i_freq].
struct S11Map {
    std::vector<double> frequencies_hz;
    std::vector<double> fields_tesla;
    std::vector<cplx> values;
    double attenuation_db = 0.0;  ///< line attenuation applied to the amplitudes
    bool magnitude_only = false;  ///< set when loaded from |S11|-only data

    std::size_t index(std::size_t i_field, std::size_t i_freq) const {
        return i_field * frequencies_hz.size() + i_freq;
    }
    const cplx& at(std::size_t i_field, std::size_t i_freq) const {
        return values[index(i_field, i_freq)];
    }
};

/// Forward synthesis of a reflection map. The spin frequency of each field
/// column is the Larmor frequency g * mu_B * B / hbar; the full round-trip
/// attenuation enters as the amplitude factor 10^(attenuation_db/20).
/// Axes must be non-empty and strictly monotonic.
S11Map synthesize_s11_map(const CavityParams& cavity, const SpinEnsembleParams& spins,
                          const std::vector<double>& frequencies_hz,
                          const std::vector<double>& fields_tesla,
                          double attenuation_db);

/// Parameters extracted by fit_s11_map, in fit order.
struct S11FitParams {
    double kappa_c_rad = 0.0;
    double kappa_t_rad = 0.0;
    double gamma_rad = 0.0;
    double cooperativity = 0.0;
    double g_factor = 0.0;
    double omega_c_rad = 0.0;
    double attenuation_db = 0.0;

    std::vector<double> to_vector() const;
    static S11FitParams from_vector(const std::vector<double>& v);
};

struct S11FitResult {
    S11FitParams params;
    FitResult fit;
};

/// Least-squares fit of the model to |S11| over the map, in linear amplitude
/// scale (deep-notch mismatches are nearly invisible there, which is the
/// point). Non-convergence is reported through fit.converged, carrying the
/// best parameters found.
S11FitResult fit_s11_map(const S11Map& data, const S11FitParams& initial_guess,
                         const S11FitParams& lower, const S11FitParams& upper,
                         int max_evals = 60000);

}  // namespace optorf

#endif  // OPTORF_CAVITY_SPIN_HPP
