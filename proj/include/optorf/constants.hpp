#ifndef OPTORF_CONSTANTS_HPP
#define OPTORF_CONSTANTS_HPP

/**
 * @file constants.hpp
 * @brief Physical constants (CODATA 2018, SI), frequency/unit conventions and
 *        the dB/population helpers shared by every other module.
 *
 * Conventions used throughout the library:
 *   - every internal frequency-like quantity is angular (rad/s);
 *   - user-facing interfaces (CLI, files) speak Hz/MHz/GHz and nm;
 *   - dB always means 10*log10 of a power-like ratio, amplitude ratios are
 *     squared first;
 *   - wavelength <-> frequency conversions use the vacuum speed of light.
 */

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace optorf {

namespace constants {

inline constexpr double pi = std::numbers::pi_v<double>;

/// h — Planck constant [J·s] (exact).
inline constexpr double h_planck = 6.62607015e-34;

/// ħ — reduced Planck constant [J·s].
inline constexpr double hbar = h_planck / (2.0 * pi);

/// μ_B — Bohr magneton [J/T].
inline constexpr double mu_bohr = 9.2740100783e-24;

/// μ0 — vacuum magnetic permeability [T·m/A].
inline constexpr double mu_0 = 1.25663706212e-6;

/// ε0 — vacuum electric permittivity [F/m].
inline constexpr double eps_0 = 8.8541878128e-12;

/// c — vacuum speed of light [m/s] (exact).
inline constexpr double c_light = 299792458.0;

/// k_B — Boltzmann constant [J/K] (exact).
inline constexpr double k_boltzmann = 1.380649e-23;

}  // namespace constants

/// Bundle of the constants above, convenient for aggregate checks and bindings.
struct PhysicalConstants {
    double hbar = constants::hbar;
    double h = constants::h_planck;
    double mu_B = constants::mu_bohr;
    double mu_0 = constants::mu_0;
    double eps_0 = constants::eps_0;
    double c = constants::c_light;
    double k_B = constants::k_boltzmann;
};

/// An angular frequency in rad/s. Constructors from ordinary frequency
/// multiply by 2π so unit mix-ups fail to compile instead of silently
/// costing a factor 2π.
struct AngularFrequency {
    double rad_per_s = 0.0;

    static constexpr AngularFrequency from_rad_per_s(double w) { return {w}; }
    static constexpr AngularFrequency from_hz(double f) { return {2.0 * constants::pi * f}; }
    static constexpr AngularFrequency from_mhz(double f) { return from_hz(f * 1e6); }
    static constexpr AngularFrequency from_ghz(double f) { return from_hz(f * 1e9); }

    constexpr double hz() const { return rad_per_s / (2.0 * constants::pi); }
    constexpr double mhz() const { return hz() * 1e-6; }
    constexpr double ghz() const { return hz() * 1e-9; }
};

/// 10·log10(ratio) for a power-like ratio. Throws std::domain_error on
/// non-positive input.
inline double db_power(double ratio) {
    if (!(ratio > 0.0))
        throw std::domain_error("db_power: ratio must be positive");
    return 10.0 * std::log10(ratio);
}

/// Inverse of db_power.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// Amplitude scale factor corresponding to a power attenuation in dB.
inline double amplitude_factor_from_db(double db) { return std::pow(10.0, db / 20.0); }

inline double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

inline double watts_to_dbm(double watts) {
    if (!(watts > 0.0))
        throw std::domain_error("watts_to_dbm: power must be positive");
    return 10.0 * std::log10(watts / 1e-3);
}

/// Spin Larmor frequency g·μ_B·B0/ħ for a bias field B0 [T].
inline AngularFrequency larmor_frequency(double g_factor, double field_tesla) {
    if (!(g_factor > 0.0))
        throw std::domain_error("larmor_frequency: g-factor must be positive");
    if (field_tesla < 0.0)
        throw std::domain_error("larmor_frequency: field must be non-negative");
    return AngularFrequency::from_rad_per_s(g_factor * constants::mu_bohr * field_tesla /
                                            constants::hbar);
}

/// Thermal population imbalance (ρgg − ρss) = tanh(ħω_s / 2kT) of a two-level
/// spin system split by ω_s at temperature T. Lies in [0, 1).
inline double thermal_population_imbalance(AngularFrequency omega_s, double temperature_k) {
    if (!(temperature_k > 0.0))
        throw std::domain_error("thermal_population_imbalance: temperature must be positive");
    return std::tanh(constants::hbar * omega_s.rad_per_s /
                     (2.0 * constants::k_boltzmann * temperature_k));
}

/// Ground-state thermal occupation ρgg = 1 / (1 + exp(−ħω_s/kT)).
inline double thermal_ground_population(AngularFrequency omega_s, double temperature_k) {
    if (!(temperature_k > 0.0))
        throw std::domain_error("thermal_ground_population: temperature must be positive");
    return 1.0 / (1.0 + std::exp(-constants::hbar * omega_s.rad_per_s /
                                 (constants::k_boltzmann * temperature_k)));
}

/// ω = 2πc/λ (vacuum).
inline AngularFrequency wavelength_to_angular(double wavelength_m) {
    if (!(wavelength_m > 0.0))
        throw std::domain_error("wavelength_to_angular: wavelength must be positive");
    return AngularFrequency::from_hz(constants::c_light / wavelength_m);
}

/// λ = c/f (vacuum).
inline double angular_to_wavelength(AngularFrequency omega) {
    if (!(omega.rad_per_s > 0.0))
        throw std::domain_error("angular_to_wavelength: frequency must be positive");
    return constants::c_light / omega.hz();
}

}  // namespace optorf

#endif  // OPTORF_CONSTANTS_HPP
