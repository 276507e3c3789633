#ifndef OPTORF_CSV_HPP
#define OPTORF_CSV_HPP

/**
 * @file csv.hpp
 * @brief CSV schemas used by the toolkit. All files carry '#'-prefixed header
 *        lines naming the columns (which fix the units), comma delimiters and
 *        '.' decimals; scientific notation is accepted.
 *
 * Schemas:
 *   S11 maps        "# field_T, freq_Hz, re_s11, im_s11"   (long format)
 *                   "# field_T, freq_Hz, abs_s11"          (magnitude only)
 *   spectra         "# detuning_Hz, transmission"
 *                   "# wavelength_nm, transmission"
 *   sweeps          "# axis_value, eta_eo_db[, eta_q_db]"
 */

#include <array>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "optorf/absorption.hpp"
#include "optorf/cavity_spin.hpp"

namespace optorf {

/// Parse failure carrying the 1-based line number of the offending record.
class CsvError : public std::runtime_error {
  public:
    CsvError(const std::string& message, std::size_t line)
        : std::runtime_error(message + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

void write_s11_map(std::ostream& os, const S11Map& map, bool magnitude_only = false);
void write_s11_map_file(const std::string& path, const S11Map& map, bool magnitude_only = false);
S11Map read_s11_map(std::istream& is);
S11Map read_s11_map_file(const std::string& path);

void write_spectrum(std::ostream& os, const TransmissionSpectrum& spectrum);
void write_spectrum_file(const std::string& path, const TransmissionSpectrum& spectrum);
/// Reads either schema; wavelength columns are converted to detunings around
/// the given center wavelength (vacuum).
TransmissionSpectrum read_spectrum(std::istream& is, double center_wavelength_nm);
TransmissionSpectrum read_spectrum_file(const std::string& path, double center_wavelength_nm);

void write_sweep(std::ostream& os, const std::vector<std::array<double, 3>>& rows,
                 const std::string& header);
/// Reads (axis_value, efficiency_db) pairs from the first two data columns.
std::vector<std::pair<double, double>> read_sweep(std::istream& is);
std::vector<std::pair<double, double>> read_sweep_file(const std::string& path);

/// Formats a double with enough digits to round-trip.
std::string format_number(double v);

}  // namespace optorf

#endif  // OPTORF_CSV_HPP
