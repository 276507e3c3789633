#ifndef OPTORF_CALIBRATION_HPP
#define OPTORF_CALIBRATION_HPP

/**
 * @file calibration.hpp
 * @brief Measurement-chain arithmetic: heterodyne electro-optics efficiency
 *        from recorded voltages, power-chain bookkeeping and the Mach-Zehnder
 *        noise-filter minima.
 */

#include <vector>

namespace optorf {

/// Heterodyne beatnote calibration. The fringe amplitude already folds in the
/// interferometer contrast; the contrast field is informational only.
struct HeterodyneCalibration {
    double lo_sideband_efficiency = 0.0;  ///< η_lo in (0, 1]
    double beatnote_volts = 0.0;          ///< V_sa at the spectrum analyzer
    double fringe_volts = 0.0;            ///< DC fringe amplitude
    double contrast = 0.0;

    void validate() const;
};

/// η_eo = (1/η_lo) (V_sa / V_fringes)^2.
double eta_eo_from_measurement(const HeterodyneCalibration& cal);

/// Source power plus the share of the line attenuation assigned to the input
/// path (attenuation is negative dB).
struct PowerChain {
    double source_power_dbm = 0.0;
    double line_attenuation_db = 0.0;
    double input_split = 0.5;  ///< fraction of the attenuation before the cavity

    void validate() const;
};

/// Power at the cavity input, in watts.
double cavity_input_power(const PowerChain& chain);

/// Transmission minima of a Mach-Zehnder path difference L:
/// c/2L, 3c/2L, 5c/2L, ... up to band_max_hz.
std::vector<double> mz_filter_minima(double path_difference_m, double band_max_hz);

}  // namespace optorf

#endif  // OPTORF_CALIBRATION_HPP
