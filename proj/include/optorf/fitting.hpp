#ifndef OPTORF_FITTING_HPP
#define OPTORF_FITTING_HPP

/**
 * @file fitting.hpp
 * @brief Bounded derivative-free nonlinear least squares (Nelder-Mead simplex
 *        on bound-normalized coordinates) and the Lorentzian-with-noise-floor
 *        line model used by the transduction sweep fits.
 *
 * The minimizer is deterministic: ordering ties break by parameter index, the
 * restart schedule is fixed (up to 3 restarts from the best point with a
 * shrunken simplex), and residuals are reduced in index order.
 */

#include <functional>
#include <span>
#include <vector>

namespace optorf {

/// Residual callback: fills `out` with the residual vector at parameters `p`.
using ResidualFn = std::function<void(std::span<const double> p, std::vector<double>& out)>;

struct FitProblem {
    ResidualFn residual_fn;
    std::vector<double> initial;
    std::vector<double> lower;
    std::vector<double> upper;
    int max_evals = 20000;
    double tolerance = 1e-10;          ///< relative change of the sum of squares
    bool compute_uncertainties = false;

    void validate() const;  ///< throws std::invalid_argument on malformed bounds
};

struct FitResult {
    std::vector<double> params;
    double sum_sq = 0.0;
    int n_evals = 0;
    bool converged = false;
    /// Indicative 1-sigma estimates from a finite-difference Gauss-Newton
    /// approximation at the optimum; empty unless requested.
    std::vector<double> uncertainties;
};

/// Minimizes the sum of squared residuals inside the bound box. Parameters
/// pinned by equal bounds stay exactly at the bound. Running out of budget is
/// not an error: the result carries the best point with converged = false.
FitResult minimize(const FitProblem& problem);

/// Lorentzian line on an additive linear-power noise floor.
struct LorentzianFloorModel {
    double center = 0.0;  ///< position, in the units of the sweep axis
    double fwhm = 0.0;
    double peak = 0.0;    ///< linear power units
    double floor = 0.0;

    void validate() const;
};

/// floor + (peak - floor) * (fwhm/2)^2 / ((x - center)^2 + (fwhm/2)^2)
double lorentzian_floor(double x, const LorentzianFloorModel& model);

struct SweepFitResult {
    LorentzianFloorModel model;
    FitResult fit;
    bool peak_significant = false;  ///< peak rises above the floor by > 3x residual RMS
};

/// Fits a (x, efficiency_dB) sweep with lorentzian_floor after converting the
/// efficiencies to linear power units. Needs at least 5 points; constant data
/// is flagged as non-converged.
SweepFitResult fit_sweep(const std::vector<std::pair<double, double>>& data_db,
                         int max_evals = 20000);

}  // namespace optorf

#endif  // OPTORF_FITTING_HPP
