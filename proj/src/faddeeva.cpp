#include "optorf/faddeeva.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace optorf {

namespace {

constexpr int kWeidemanN = 32;

struct WeidemanTable {
    double L = 0.0;
    std::array<double, kWeidemanN> a{};
};

// Polynomial coefficients of the Weideman (1994) rational expansion, computed
// once by a direct DFT of f(theta) = exp(-t^2)(L^2 + t^2), t = L tan(theta/2).
WeidemanTable build_table() {
    WeidemanTable tbl;
    const int N = kWeidemanN;
    const int M = 2 * N;
    const int M2 = 2 * M;
    tbl.L = std::sqrt(N / std::numbers::sqrt2);

    std::array<double, 2 * M> f{};  // f[0] is theta = -pi, where f vanishes
    for (int j = 1; j < 2 * M; ++j) {
        const int k = j - M;  // -M+1 .. M-1
        const double theta = k * std::numbers::pi / M;
        const double t = tbl.L * std::tan(theta / 2.0);
        f[j] = std::exp(-t * t) * (tbl.L * tbl.L + t * t);
    }
    // a_n = (1/M2) sum_j f(theta_j) cos(n theta_j), theta_j = (j - M) pi / M
    for (int n = 1; n <= N; ++n) {
        double acc = 0.0;
        for (int j = 0; j < 2 * M; ++j) {
            const double theta = (j - M) * std::numbers::pi / M;
            acc += f[j] * std::cos(n * theta);
        }
        tbl.a[N - n] = acc / M2;  // stored highest power first for Horner
    }
    return tbl;
}

const WeidemanTable& table() {
    static const WeidemanTable tbl = build_table();
    return tbl;
}

}  // namespace

std::complex<double> faddeeva_w(std::complex<double> z) {
    if (z.imag() < 0.0)
        throw std::domain_error("faddeeva_w: defined for Im(z) >= 0");
    const WeidemanTable& tbl = table();
    const std::complex<double> iz(-z.imag(), z.real());
    const std::complex<double> lmiz = tbl.L - iz;
    const std::complex<double> Z = (tbl.L + iz) / lmiz;
    std::complex<double> p = 0.0;
    for (double an : tbl.a) p = p * Z + an;
    return 2.0 * p / (lmiz * lmiz) + std::numbers::inv_sqrtpi / lmiz;
}

double voigt_peak_normalized(double detuning_hz, double lorentz_fwhm_hz, double gauss_fwhm_hz) {
    if (lorentz_fwhm_hz < 0.0 || gauss_fwhm_hz < 0.0)
        throw std::domain_error("voigt_peak_normalized: widths must be non-negative");
    if (lorentz_fwhm_hz == 0.0 && gauss_fwhm_hz == 0.0)
        throw std::domain_error("voigt_peak_normalized: degenerate shape, both widths zero");

    const double gl = lorentz_fwhm_hz / 2.0;  // Lorentzian HWHM
    if (gauss_fwhm_hz == 0.0)
        return gl * gl / (detuning_hz * detuning_hz + gl * gl);

    const double sigma = gauss_fwhm_hz / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
    if (lorentz_fwhm_hz == 0.0) {
        const double u = detuning_hz / sigma;
        return std::exp(-0.5 * u * u);
    }
    const double s = sigma * std::numbers::sqrt2;
    const std::complex<double> z(detuning_hz / s, gl / s);
    const std::complex<double> z0(0.0, gl / s);
    return faddeeva_w(z).real() / faddeeva_w(z0).real();
}

double voigt_fwhm(double lorentz_fwhm_hz, double gauss_fwhm_hz) {
    if (gauss_fwhm_hz == 0.0) return lorentz_fwhm_hz;
    if (lorentz_fwhm_hz == 0.0) return gauss_fwhm_hz;
    // Olivero-Longbothum brackets the half point to ~0.02%; bisect to finish.
    const double approx = 0.5346 * lorentz_fwhm_hz +
                          std::sqrt(0.2166 * lorentz_fwhm_hz * lorentz_fwhm_hz +
                                    gauss_fwhm_hz * gauss_fwhm_hz);
    double lo = 0.45 * approx, hi = 0.55 * approx;
    auto shape = [&](double x) { return voigt_peak_normalized(x, lorentz_fwhm_hz, gauss_fwhm_hz); };
    while (shape(lo) < 0.5) lo *= 0.9;
    while (shape(hi) > 0.5) hi *= 1.1;
    for (int i = 0; i < 200 && (hi - lo) > 1e-14 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (shape(mid) > 0.5 ? lo : hi) = mid;
    }
    return lo + hi;  // half width times two
}

VoigtWidths voigt_widths_from_total(double total_fwhm_hz, double lorentz_fraction) {
    if (!(total_fwhm_hz > 0.0))
        throw std::domain_error("voigt_widths_from_total: total FWHM must be positive");
    if (lorentz_fraction < 0.0 || lorentz_fraction > 1.0)
        throw std::domain_error("voigt_widths_from_total: fraction must be in [0,1]");
    if (lorentz_fraction == 0.0) return {0.0, total_fwhm_hz};
    if (lorentz_fraction == 1.0) return {total_fwhm_hz, 0.0};
    // total FWHM is homogeneous of degree 1 in the pair, so scale a unit mix.
    const double unit = voigt_fwhm(lorentz_fraction, 1.0 - lorentz_fraction);
    const double m = total_fwhm_hz / unit;
    return {lorentz_fraction * m, (1.0 - lorentz_fraction) * m};
}

}  // namespace optorf
