#include <doctest.h>

#include <cmath>
#include <random>

#include "optorf/constants.hpp"
#include "optorf/fitting.hpp"

using namespace optorf;

TEST_CASE("minimize solves a quadratic bowl") {
    FitProblem prob;
    prob.initial = {0.2, -0.4, 1.5};
    prob.lower = {-3.0, -3.0, -3.0};
    prob.upper = {3.0, 3.0, 3.0};
    prob.residual_fn = [](std::span<const double> p, std::vector<double>& r) {
        r = {p[0] - 1.0, p[1] + 0.5, p[2] - 2.0};
    };
    const FitResult result = minimize(prob);
    CHECK(result.converged);
    CHECK(result.params[0] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(result.params[1] == doctest::Approx(-0.5).epsilon(1e-8));
    CHECK(result.params[2] == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("minimize cracks Rosenbrock within budget") {
    FitProblem prob;
    prob.initial = {-1.2, 1.0};
    prob.lower = {-5.0, -5.0};
    prob.upper = {5.0, 5.0};
    prob.max_evals = 5000;
    prob.tolerance = 1e-14;
    prob.residual_fn = [](std::span<const double> p, std::vector<double>& r) {
        r = {10.0 * (p[1] - p[0] * p[0]), 1.0 - p[0]};
    };
    const FitResult result = minimize(prob);
    CHECK(result.sum_sq < 1e-6);
    CHECK(result.n_evals <= 5000);
}

TEST_CASE("pinned parameters stay exactly at the bound") {
    FitProblem prob;
    prob.initial = {0.7, 2.5};
    prob.lower = {-1.0, 2.5};
    prob.upper = {1.0, 2.5};
    prob.residual_fn = [](std::span<const double> p, std::vector<double>& r) {
        r = {p[0] - 0.3, p[1] - 1.0};
    };
    const FitResult result = minimize(prob);
    CHECK(result.params[1] == 2.5);
    CHECK(result.params[0] == doctest::Approx(0.3).epsilon(1e-8));
}

TEST_CASE("minimize never leaves the box") {
    FitProblem prob;
    prob.initial = {0.9, 0.1};
    prob.lower = {0.0, 0.0};
    prob.upper = {1.0, 1.0};
    prob.max_evals = 2000;
    prob.residual_fn = [](std::span<const double> p, std::vector<double>& r) {
        REQUIRE(p[0] >= 0.0);
        REQUIRE(p[0] <= 1.0);
        REQUIRE(p[1] >= 0.0);
        REQUIRE(p[1] <= 1.0);
        // optimum outside the box pushes hard on the constraint
        r = {p[0] - 3.0, p[1] + 2.0};
    };
    const FitResult result = minimize(prob);
    CHECK(result.params[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(result.params[1] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("minimize is invariant under affine reparameterization") {
    auto residual = [](double a, double b, std::vector<double>& r) {
        r = {a * a + b - 7.0, a + b * b - 11.0};
    };
    FitProblem plain;
    plain.initial = {1.0, 1.0};
    plain.lower = {-4.0, -4.0};
    plain.upper = {4.0, 4.0};
    plain.residual_fn = [&](std::span<const double> p, std::vector<double>& r) {
        residual(p[0], p[1], r);
    };
    // same model with the first parameter stored doubled
    FitProblem scaled;
    scaled.initial = {2.0, 1.0};
    scaled.lower = {-8.0, -4.0};
    scaled.upper = {8.0, 4.0};
    scaled.residual_fn = [&](std::span<const double> p, std::vector<double>& r) {
        residual(p[0] / 2.0, p[1], r);
    };
    const FitResult a = minimize(plain);
    const FitResult b = minimize(scaled);
    CHECK(a.n_evals == b.n_evals);
    CHECK(a.sum_sq == doctest::Approx(b.sum_sq).epsilon(1e-14));
    CHECK(b.params[0] / 2.0 == doctest::Approx(a.params[0]).epsilon(1e-12));
    CHECK(b.params[1] == doctest::Approx(a.params[1]).epsilon(1e-12));
}

TEST_CASE("exhausted budget reports non-convergence without throwing") {
    FitProblem prob;
    prob.initial = {-1.2, 1.0};
    prob.lower = {-5.0, -5.0};
    prob.upper = {5.0, 5.0};
    prob.max_evals = 25;
    prob.tolerance = 1e-16;
    prob.residual_fn = [](std::span<const double> p, std::vector<double>& r) {
        r = {10.0 * (p[1] - p[0] * p[0]), 1.0 - p[0]};
    };
    const FitResult result = minimize(prob);
    CHECK_FALSE(result.converged);
    CHECK(result.n_evals <= 25 + 2);  // may finish the step in flight
    CHECK(result.sum_sq <= 24.2);     // no worse than the start
}

TEST_CASE("malformed problems are rejected") {
    FitProblem prob;
    prob.initial = {0.0};
    prob.lower = {1.0};
    prob.upper = {2.0};
    prob.residual_fn = [](std::span<const double>, std::vector<double>& r) { r = {0.0}; };
    CHECK_THROWS_AS(minimize(prob), std::invalid_argument);  // initial below the box
    prob.initial = {1.5};
    prob.lower = {2.0};
    prob.upper = {1.0};
    CHECK_THROWS_AS(minimize(prob), std::invalid_argument);  // inverted bounds
}

TEST_CASE("lorentzian with a floor") {
    const LorentzianFloorModel model{5.0, 2.0, 1e-8, 1e-10};
    CHECK(lorentzian_floor(5.0, model) == doctest::Approx(1e-8));
    CHECK(lorentzian_floor(5.0 + 1e7, model) == doctest::Approx(1e-10).epsilon(1e-9));
    CHECK(lorentzian_floor(6.0, model) == doctest::Approx((1e-8 + 1e-10) / 2.0));
    CHECK(lorentzian_floor(4.0, model) == doctest::Approx((1e-8 + 1e-10) / 2.0));
    CHECK_THROWS_AS((LorentzianFloorModel{0.0, 1.0, 1e-10, 1e-8}).validate(),
                    std::invalid_argument);
}

namespace {

std::vector<std::pair<double, double>> beatnote_sweep(double peak_db, double floor_db,
                                                      double fwhm, double noise_db,
                                                      std::uint64_t seed, int n = 81) {
    const LorentzianFloorModel model{0.0, fwhm, db_to_linear(peak_db),
                                     db_to_linear(floor_db)};
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, noise_db);
    std::vector<std::pair<double, double>> data;
    for (int i = 0; i < n; ++i) {
        const double x = -600e6 + 1200e6 * i / double(n - 1);
        double db = db_power(lorentzian_floor(x, model));
        if (noise_db > 0.0) db += gauss(rng);
        data.emplace_back(x, db);
    }
    return data;
}

}  // namespace

TEST_CASE("sweep fit recovers a noise-free line exactly") {
    const auto data = beatnote_sweep(-84.0, -103.5, 189e6, 0.0, 0);
    const SweepFitResult result = fit_sweep(data);
    CHECK(result.fit.converged);
    CHECK(result.peak_significant);
    CHECK(result.model.fwhm == doctest::Approx(189e6).epsilon(1e-3));
    CHECK(db_power(result.model.peak) == doctest::Approx(-84.0).epsilon(1e-4));
    CHECK(db_power(result.model.floor) == doctest::Approx(-103.5).epsilon(1e-3));
}

TEST_CASE("sweep fit tolerates 1 dB of noise") {
    const auto data = beatnote_sweep(-84.0, -103.5, 189e6, 1.0, 1);
    const SweepFitResult result = fit_sweep(data);
    CHECK(result.peak_significant);
    CHECK(result.model.fwhm == doctest::Approx(189e6).epsilon(0.10));
}

TEST_CASE("fitting in linear units matches the dB report") {
    const auto data = beatnote_sweep(-84.0, -103.5, 189e6, 0.0, 0);
    const SweepFitResult result = fit_sweep(data);
    for (const auto& [x, db] : data) {
        const double model_db = db_power(lorentzian_floor(x, result.model));
        CHECK(model_db == doctest::Approx(db).epsilon(1e-9));
    }
}

TEST_CASE("all-floor data is flagged non-significant") {
    // tiny peak buried an order of magnitude under the floor ripple
    std::vector<std::pair<double, double>> data;
    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss(0.0, 0.5);
    for (int i = 0; i < 41; ++i)
        data.emplace_back(-300e6 + 600e6 * i / 40.0, -103.5 + gauss(rng));
    const SweepFitResult result = fit_sweep(data);
    CHECK_FALSE(result.peak_significant);
    CHECK(db_power(std::max(result.model.peak, 1e-30)) ==
          doctest::Approx(db_power(result.model.floor)).epsilon(0.05));
}

TEST_CASE("constant data is flagged as failed") {
    std::vector<std::pair<double, double>> data;
    for (int i = 0; i < 10; ++i) data.emplace_back(i * 1.0, -100.0);
    const SweepFitResult result = fit_sweep(data);
    CHECK_FALSE(result.fit.converged);
    CHECK_THROWS_AS(fit_sweep({{0.0, -1.0}, {1.0, -1.0}}), std::invalid_argument);
}
