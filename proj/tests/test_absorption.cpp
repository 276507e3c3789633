#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "optorf/absorption.hpp"
#include "optorf/faddeeva.hpp"

using namespace optorf;

namespace {

// Brute-force Voigt by trapezoid convolution of a unit-area Lorentzian with a
// Gaussian; independent of the Faddeeva path.
double voigt_quadrature(double x, double lorentz_fwhm, double gauss_fwhm) {
    const double gl = lorentz_fwhm / 2.0;
    const double sigma = gauss_fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
    const double step = std::min(gl, sigma) / 64.0;
    const double half_range = 14.0 * sigma;
    const auto lorentz = [gl](double u) {
        return gl / (optorf::constants::pi * (u * u + gl * gl));
    };
    const auto gauss = [sigma](double u) {
        return std::exp(-u * u / (2.0 * sigma * sigma)) /
               (sigma * std::sqrt(2.0 * optorf::constants::pi));
    };
    const long n = std::lround(2.0 * half_range / step);
    double acc = 0.0;
    for (long i = 0; i <= n; ++i) {
        const double u = -half_range + 2.0 * half_range * double(i) / double(n);
        const double w = (i == 0 || i == n) ? 0.5 : 1.0;
        acc += w * lorentz(x - u) * gauss(u);
    }
    return acc * 2.0 * half_range / double(n);
}

ZeemanQuartet paper_quartet() {
    // splitting chosen so the ground doublet sits at 12.29 GHz
    const double b0 = constants::h_planck * 12.29e9 / (8.20 * constants::mu_bohr);
    const VoigtWidths w = voigt_widths_from_total(755e6, 0.1);
    return {constants::c_light / 1532.636e-9, 8.20, 7.80, b0, 0.518, 0.028, 2.5,
            w.lorentz_fwhm_hz, w.gauss_fwhm_hz};
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / double(n - 1);
    return xs;
}

}  // namespace

TEST_CASE("voigt peak-normalized shape") {
    CHECK(voigt_peak_normalized(0.0, 1e6, 2e6) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(voigt_peak_normalized(0.5e6, 1e6, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(voigt_peak_normalized(1e6, 0.0, 2e6) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(voigt_peak_normalized(1.0, 0.0, 0.0), std::domain_error);

    SUBCASE("even, bounded, decreasing in |detuning|") {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < 50; ++i) {
            const double fl = 1e6 * std::pow(10.0, 2.0 * u(rng));
            const double fg = 1e6 * std::pow(10.0, 2.0 * u(rng));
            double prev = 1.0;
            for (int k = 1; k <= 40; ++k) {
                const double x = k * (fl + fg) / 10.0;
                const double v = voigt_peak_normalized(x, fl, fg);
                CHECK(v == doctest::Approx(voigt_peak_normalized(-x, fl, fg)).epsilon(1e-13));
                CHECK(v <= 1.0);
                CHECK(v < prev);
                prev = v;
            }
        }
    }

    SUBCASE("agrees with the quadrature oracle") {
        std::mt19937_64 rng(32);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < 100; ++i) {
            const double fl = 1e6 * std::pow(10.0, u(rng));            // 1..10 MHz
            const double fg = fl * std::pow(10.0, (u(rng) - 0.5));     // within ~3x of fl
            const double x = (u(rng) * 6.0 - 3.0) * (fl + fg);
            const double ours = voigt_peak_normalized(x, fl, fg);
            const double oracle = voigt_quadrature(x, fl, fg) / voigt_quadrature(0.0, fl, fg);
            CHECK(ours == doctest::Approx(oracle).epsilon(1e-6));
        }
    }
}

TEST_CASE("voigt width helpers") {
    CHECK(voigt_fwhm(3e6, 0.0) == doctest::Approx(3e6));
    CHECK(voigt_fwhm(0.0, 7e6) == doctest::Approx(7e6));
    const double total = voigt_fwhm(2e6, 5e6);
    // Olivero-Longbothum agrees to ~1e-3
    CHECK(total ==
          doctest::Approx(0.5346 * 2e6 + std::sqrt(0.2166 * 4e12 + 25e12)).epsilon(1e-3));
    // the half point really sits at total/2
    CHECK(voigt_peak_normalized(total / 2.0, 2e6, 5e6) == doctest::Approx(0.5).epsilon(1e-10));

    const VoigtWidths w = voigt_widths_from_total(755e6, 0.1);
    CHECK(w.lorentz_fwhm_hz / (w.lorentz_fwhm_hz + w.gauss_fwhm_hz) ==
          doctest::Approx(0.1).epsilon(1e-12));
    CHECK(voigt_fwhm(w.lorentz_fwhm_hz, w.gauss_fwhm_hz) ==
          doctest::Approx(755e6).epsilon(1e-10));
}

TEST_CASE("zeeman quartet structure") {
    const ZeemanQuartet q = paper_quartet();
    const auto offsets = q.line_offsets_hz();
    const auto amps = q.line_amplitudes();

    SUBCASE("crossed splitting exceeds the direct splitting") {
        CHECK(std::abs(offsets[2] - offsets[3]) > std::abs(offsets[0] - offsets[1]));
        CHECK(offsets[0] == doctest::Approx((q.ground_splitting_hz() -
                                             q.excited_splitting_hz()) / 2.0));
        CHECK(offsets[2] == doctest::Approx((q.ground_splitting_hz() +
                                             q.excited_splitting_hz()) / 2.0));
    }
    SUBCASE("population weights close") {
        CHECK(amps[0] + amps[1] == doctest::Approx(q.od_direct).epsilon(1e-12));
        CHECK(amps[2] + amps[3] == doctest::Approx(q.od_crossed).epsilon(1e-12));
        CHECK(amps[0] > amps[1]);  // colder level absorbs more
    }
}

TEST_CASE("transmission synthesis") {
    const ZeemanQuartet q = paper_quartet();

    SUBCASE("transparent without absorbers") {
        ZeemanQuartet empty = q;
        empty.od_direct = 0.0;
        empty.od_crossed = 0.0;
        const auto spectrum = synthesize_transmission(empty, linspace(-20e9, 20e9, 101));
        for (double t : spectrum.transmission) CHECK(t == 1.0);
    }

    SUBCASE("strong direct line depth matches the isolated-line value") {
        // narrow widths so the lines are widely split and the frozen
        // isolated-line value applies
        ZeemanQuartet narrow = q;
        const VoigtWidths w = voigt_widths_from_total(50e6, 0.1);
        narrow.lorentz_fwhm_hz = w.lorentz_fwhm_hz;
        narrow.gauss_fwhm_hz = w.gauss_fwhm_hz;
        const auto offsets = narrow.line_offsets_hz();
        const auto spectrum = synthesize_transmission(narrow, {offsets[0]});
        CHECK(spectrum.transmission[0] == doctest::Approx(0.748703602538).epsilon(1e-4));
    }

    SUBCASE("crossed line positions can be read back off the grid") {
        const auto offsets = q.line_offsets_hz();
        const auto grid = linspace(-15e9, 15e9, 3001);  // 10 MHz steps
        const auto spectrum = synthesize_transmission(q, grid);
        // deepest point in the outer wings marks each crossed line
        double best_pos = 0.0, best_t = 2.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (grid[i] < 5e9) continue;
            if (spectrum.transmission[i] < best_t) {
                best_t = spectrum.transmission[i];
                best_pos = grid[i];
            }
        }
        CHECK(std::abs(best_pos - offsets[2]) <= 10e6 + 1.0);
    }

    SUBCASE("transmission decreases pointwise when any depth grows") {
        const auto grid = linspace(-14e9, 14e9, 201);
        const auto base = synthesize_transmission(q, grid);
        ZeemanQuartet stronger = q;
        stronger.od_direct *= 1.3;
        const auto deeper = synthesize_transmission(stronger, grid);
        for (std::size_t i = 0; i < grid.size(); ++i)
            CHECK(deeper.transmission[i] <= base.transmission[i] + 1e-15);
    }
}

namespace {

AbsorptionFitParams truth_params() {
    const ZeemanQuartet q = paper_quartet();
    return {q.od_direct, q.od_crossed, q.lorentz_fwhm_hz, q.gauss_fwhm_hz,
            q.g_ground,  q.g_excited,  0.0,               q.temperature_k};
}

AbsorptionFitResult run_round_trip(double noise_sigma, std::uint64_t seed,
                                   int max_evals = 60000) {
    const ZeemanQuartet q = paper_quartet();
    auto grid = linspace(-14e9, 14e9, 561);  // 50 MHz steps over all four lines
    TransmissionSpectrum data = synthesize_transmission(q, grid);
    if (noise_sigma > 0.0) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, noise_sigma);
        for (double& t : data.transmission)
            t = std::clamp(t + gauss(rng), 1e-6, 1.0);
    }

    const AbsorptionFitParams truth = truth_params();
    AbsorptionFitParams guess = truth;
    guess.od_direct *= 1.2;
    guess.od_crossed *= 0.8;
    guess.lorentz_fwhm_hz *= 1.2;
    guess.gauss_fwhm_hz *= 0.8;
    guess.g_ground *= 1.05;
    guess.g_excited *= 0.95;
    guess.center_offset_hz = 2e8;
    guess.temperature_k *= 1.2;

    AbsorptionFitParams lo{0.0,  0.0,  0.0,  truth.gauss_fwhm_hz / 4.0,
                           truth.g_ground / 1.5, truth.g_excited / 1.5, -2e9,
                           truth.temperature_k / 2.0};
    AbsorptionFitParams hi{2.0,  1.0,  truth.lorentz_fwhm_hz * 6.0 + 1e8,
                           truth.gauss_fwhm_hz * 4.0, truth.g_ground * 1.5,
                           truth.g_excited * 1.5, 2e9, truth.temperature_k * 2.0};
    return fit_absorption(data, q.field_tesla, guess, lo, hi, max_evals);
}

}  // namespace

TEST_CASE("absorption fit round trip") {
    const AbsorptionFitParams truth = truth_params();
    const AbsorptionFitResult result = run_round_trip(0.0, 0);
    CHECK(result.fit.converged);
    CHECK(result.params.od_direct == doctest::Approx(truth.od_direct).epsilon(0.02));
    CHECK(result.params.od_crossed == doctest::Approx(truth.od_crossed).epsilon(0.02));
    CHECK(result.params.total_fwhm_hz() == doctest::Approx(755e6).epsilon(0.02));
}

TEST_CASE("absorption fit with 1% noise") {
    const AbsorptionFitParams truth = truth_params();
    const AbsorptionFitResult result = run_round_trip(0.01, 7);
    CHECK(result.params.od_direct == doctest::Approx(truth.od_direct).epsilon(0.05));
    CHECK(result.params.od_crossed == doctest::Approx(truth.od_crossed).epsilon(0.05));
}

TEST_CASE("absorption fit of a flat spectrum finds no lines") {
    const ZeemanQuartet q = paper_quartet();
    TransmissionSpectrum flat;
    flat.detunings_hz = linspace(-14e9, 14e9, 301);
    flat.transmission.assign(flat.detunings_hz.size(), 1.0);
    const AbsorptionFitParams truth = truth_params();
    AbsorptionFitParams guess = truth;
    guess.od_direct = 0.05;
    guess.od_crossed = 0.01;
    AbsorptionFitParams lo = guess, hi = guess;
    lo.od_direct = 0.0;
    lo.od_crossed = 0.0;
    hi.od_direct = 1.0;
    hi.od_crossed = 0.5;  // only the depths float
    const AbsorptionFitResult result = fit_absorption(flat, q.field_tesla, guess, lo, hi);
    CHECK(result.params.od_direct < 1e-4);
    CHECK(result.params.od_crossed < 1e-4);
}
