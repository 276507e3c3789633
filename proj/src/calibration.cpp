#include "optorf/calibration.hpp"

#include <cmath>
#include <stdexcept>

#include "optorf/constants.hpp"

namespace optorf {

void HeterodyneCalibration::validate() const {
    if (!(lo_sideband_efficiency > 0.0) || lo_sideband_efficiency > 1.0)
        throw std::invalid_argument("HeterodyneCalibration: eta_lo must be in (0, 1]");
    if (beatnote_volts < 0.0 || fringe_volts < 0.0)
        throw std::invalid_argument("HeterodyneCalibration: voltages must be non-negative");
}

double eta_eo_from_measurement(const HeterodyneCalibration& cal) {
    cal.validate();
    if (!(cal.fringe_volts > 0.0))
        throw std::domain_error("eta_eo_from_measurement: zero fringe amplitude");
    const double ratio = cal.beatnote_volts / cal.fringe_volts;
    return ratio * ratio / cal.lo_sideband_efficiency;
}

void PowerChain::validate() const {
    if (input_split < 0.0 || input_split > 1.0)
        throw std::invalid_argument("PowerChain: input_split must be in [0, 1]");
}

double cavity_input_power(const PowerChain& chain) {
    chain.validate();
    return dbm_to_watts(chain.source_power_dbm + chain.input_split * chain.line_attenuation_db);
}

std::vector<double> mz_filter_minima(double path_difference_m, double band_max_hz) {
    if (!(path_difference_m > 0.0))
        throw std::domain_error("mz_filter_minima: path difference must be positive");
    std::vector<double> minima;
    const double fundamental = constants::c_light / (2.0 * path_difference_m);
    for (double f = fundamental; f <= band_max_hz; f += 2.0 * fundamental)
        minima.push_back(f);
    return minima;
}

}  // namespace optorf
