#include "optorf/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "optorf/constants.hpp"

namespace optorf {

void FitProblem::validate() const {
    const std::size_t n = initial.size();
    if (!residual_fn) throw std::invalid_argument("FitProblem: residual_fn not set");
    if (lower.size() != n || upper.size() != n)
        throw std::invalid_argument("FitProblem: bounds size mismatch");
    if (!(tolerance > 0.0)) throw std::invalid_argument("FitProblem: tolerance must be positive");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(lower[i] <= upper[i]))
            throw std::invalid_argument("FitProblem: lower bound above upper bound");
        if (initial[i] < lower[i] || initial[i] > upper[i])
            throw std::invalid_argument("FitProblem: initial point outside bounds");
    }
}

namespace {

// Work happens in coordinates normalized by the bounds: every free parameter
// lives in [0,1], so the simplex geometry is insensitive to parameter units
// and box projection doubles as the bound guarantee.
struct Normalizer {
    std::vector<std::size_t> free_idx;
    std::vector<double> lo, span;
    std::vector<double> full;  // scratch full-length parameter vector

    Normalizer(const FitProblem& p) : lo(p.lower), full(p.initial) {
        span.resize(lo.size());
        for (std::size_t i = 0; i < lo.size(); ++i) {
            span[i] = p.upper[i] - p.lower[i];
            if (span[i] > 0.0) free_idx.push_back(i);
        }
    }
    std::size_t dim() const { return free_idx.size(); }
    std::vector<double> to_unit(const std::vector<double>& p) const {
        std::vector<double> x(dim());
        for (std::size_t k = 0; k < dim(); ++k) {
            const std::size_t i = free_idx[k];
            x[k] = (p[i] - lo[i]) / span[i];
        }
        return x;
    }
    const std::vector<double>& to_full(const std::vector<double>& x) {
        for (std::size_t k = 0; k < dim(); ++k) {
            const std::size_t i = free_idx[k];
            full[i] = lo[i] + std::clamp(x[k], 0.0, 1.0) * span[i];
        }
        return full;
    }
};

double sum_of_squares(const std::vector<double>& r) {
    double acc = 0.0;
    for (double v : r) acc += v * v;  // index order, deterministic
    return acc;
}

}  // namespace

FitResult minimize(const FitProblem& problem) {
    problem.validate();
    Normalizer norm(problem);
    const std::size_t n = norm.dim();

    FitResult best;
    best.params = problem.initial;
    std::vector<double> residuals;
    int evals = 0;

    auto eval = [&](const std::vector<double>& x) {
        problem.residual_fn(norm.to_full(x), residuals);
        ++evals;
        return sum_of_squares(residuals);
    };

    std::vector<double> x0 = norm.to_unit(problem.initial);
    double f0 = eval(x0);
    best.sum_sq = f0;

    if (n == 0) {  // everything pinned
        best.n_evals = evals;
        best.converged = true;
        return best;
    }

    struct Vertex {
        std::vector<double> x;
        double f;
    };

    bool converged = false;
    double simplex_scale = 0.08;
    const int kRestarts = 3;

    for (int round = 0; round <= kRestarts && evals < problem.max_evals; ++round) {
        // initial simplex around the current best point
        std::vector<Vertex> simplex;
        simplex.push_back({x0, f0});
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<double> x = x0;
            double step = simplex_scale;
            if (x[k] + step > 1.0) step = -simplex_scale;
            x[k] = std::clamp(x[k] + step, 0.0, 1.0);
            simplex.push_back({x, eval(x)});
        }

        auto order = [&]() {
            std::stable_sort(simplex.begin(), simplex.end(),
                             [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
        };
        order();

        // dimension-adaptive coefficients (Gao & Han); the classic values in
        // low dimension, much less prone to simplex degeneration in 7-8D
        const double nd = static_cast<double>(n);
        const double alpha = 1.0;
        const double gamma_exp = n >= 2 ? 1.0 + 2.0 / nd : 2.0;
        const double rho = n >= 2 ? 0.75 - 1.0 / (2.0 * nd) : 0.5;
        const double sigma = n >= 2 ? 1.0 - 1.0 / nd : 0.5;
        while (evals < problem.max_evals) {
            const double fbest = simplex.front().f;
            const double fworst = simplex.back().f;
            double diameter = 0.0;
            for (std::size_t v = 1; v < simplex.size(); ++v)
                for (std::size_t k = 0; k < n; ++k)
                    diameter = std::max(diameter,
                                        std::abs(simplex[v].x[k] - simplex.front().x[k]));
            // function-value flatness, or a simplex collapsed in the
            // bound-normalized coordinates (handles exact-fit optima at 0)
            if (fworst - fbest <=
                    problem.tolerance * (std::abs(fbest) + std::abs(fworst)) + 1e-300 ||
                diameter <= 1e-10) {
                converged = true;
                break;
            }

            std::vector<double> centroid(n, 0.0);
            for (std::size_t v = 0; v + 1 < simplex.size(); ++v)
                for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[v].x[k];
            for (double& c : centroid) c /= static_cast<double>(n);

            auto along = [&](double t) {
                std::vector<double> x(n);
                for (std::size_t k = 0; k < n; ++k)
                    x[k] = std::clamp(centroid[k] + t * (centroid[k] - simplex.back().x[k]),
                                      0.0, 1.0);
                return x;
            };

            std::vector<double> xr = along(alpha);
            const double fr = eval(xr);
            if (fr < simplex.front().f) {
                std::vector<double> xe = along(gamma_exp);
                const double fe = eval(xe);
                if (fe < fr)
                    simplex.back() = {std::move(xe), fe};
                else
                    simplex.back() = {std::move(xr), fr};
            } else if (fr < simplex[simplex.size() - 2].f) {
                simplex.back() = {std::move(xr), fr};
            } else {
                const bool outside = fr < simplex.back().f;
                std::vector<double> xc = along(outside ? rho : -rho);
                const double fc = eval(xc);
                if (fc < std::min(fr, simplex.back().f)) {
                    simplex.back() = {std::move(xc), fc};
                } else {  // shrink toward the best vertex
                    for (std::size_t v = 1; v < simplex.size(); ++v) {
                        for (std::size_t k = 0; k < n; ++k)
                            simplex[v].x[k] = simplex.front().x[k] +
                                              sigma * (simplex[v].x[k] - simplex.front().x[k]);
                        simplex[v].f = eval(simplex[v].x);
                        if (evals >= problem.max_evals) break;
                    }
                }
            }
            order();
        }

        x0 = simplex.front().x;
        f0 = simplex.front().f;
        simplex_scale *= 0.5;
    }

    best.params = norm.to_full(x0);
    best.sum_sq = f0;
    best.n_evals = evals;
    best.converged = converged;

    if (problem.compute_uncertainties) {
        // finite-difference Gauss-Newton at the optimum, indicative only
        const std::size_t np = problem.initial.size();
        std::vector<double> r0;
        problem.residual_fn(best.params, r0);
        const std::size_t m = r0.size();
        std::vector<std::vector<double>> jac(np, std::vector<double>(m, 0.0));
        std::vector<double> rp, rm;
        for (std::size_t i = 0; i < np; ++i) {
            const double span = problem.upper[i] - problem.lower[i];
            if (span <= 0.0) continue;
            const double h = 1e-6 * span;
            std::vector<double> p = best.params;
            p[i] = std::min(best.params[i] + h, problem.upper[i]);
            const double hp = p[i] - best.params[i];
            problem.residual_fn(p, rp);
            p[i] = std::max(best.params[i] - h, problem.lower[i]);
            const double hm = best.params[i] - p[i];
            problem.residual_fn(p, rm);
            for (std::size_t j = 0; j < m; ++j) jac[i][j] = (rp[j] - rm[j]) / (hp + hm);
        }
        // normal matrix and its inverse by Gauss-Jordan (np <= ~8 here)
        std::vector<std::vector<double>> a(np, std::vector<double>(2 * np, 0.0));
        for (std::size_t i = 0; i < np; ++i) {
            for (std::size_t j = 0; j < np; ++j)
                a[i][j] = std::inner_product(jac[i].begin(), jac[i].end(), jac[j].begin(), 0.0);
            a[i][np + i] = 1.0;
        }
        bool singular = false;
        for (std::size_t col = 0; col < np && !singular; ++col) {
            std::size_t piv = col;
            for (std::size_t r = col + 1; r < np; ++r)
                if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
            if (std::abs(a[piv][col]) < 1e-300) {
                singular = true;
                break;
            }
            std::swap(a[piv], a[col]);
            const double d = a[col][col];
            for (double& v : a[col]) v /= d;
            for (std::size_t r = 0; r < np; ++r) {
                if (r == col) continue;
                const double factor = a[r][col];
                for (std::size_t cc = 0; cc < 2 * np; ++cc) a[r][cc] -= factor * a[col][cc];
            }
        }
        best.uncertainties.assign(np, 0.0);
        if (!singular && m > np) {
            const double s2 = best.sum_sq / static_cast<double>(m - np);
            for (std::size_t i = 0; i < np; ++i) {
                const double var = a[i][np + i] * s2;
                best.uncertainties[i] = var > 0.0 ? std::sqrt(var) : 0.0;
            }
        }
    }
    return best;
}

void LorentzianFloorModel::validate() const {
    if (!(fwhm > 0.0)) throw std::invalid_argument("LorentzianFloorModel: fwhm must be positive");
    if (floor < 0.0 || peak < floor)
        throw std::invalid_argument("LorentzianFloorModel: requires peak >= floor >= 0");
}

double lorentzian_floor(double x, const LorentzianFloorModel& model) {
    const double hw = model.fwhm / 2.0;
    const double dx = x - model.center;
    return model.floor + (model.peak - model.floor) * hw * hw / (dx * dx + hw * hw);
}

SweepFitResult fit_sweep(const std::vector<std::pair<double, double>>& data_db, int max_evals) {
    if (data_db.size() < 5)
        throw std::invalid_argument("fit_sweep: need at least 5 points");

    std::vector<double> xs(data_db.size()), ys(data_db.size());
    for (std::size_t i = 0; i < data_db.size(); ++i) {
        xs[i] = data_db[i].first;
        ys[i] = db_to_linear(data_db[i].second);
    }
    const auto [ymin_it, ymax_it] = std::minmax_element(ys.begin(), ys.end());
    const double ymin = *ymin_it, ymax = *ymax_it;
    const auto [xmin_it, xmax_it] = std::minmax_element(xs.begin(), xs.end());
    const double span = *xmax_it - *xmin_it;

    SweepFitResult out;
    if (!(ymax - ymin > 1e-12 * ymax) || span == 0.0) {  // constant data: nothing to fit
        out.model = {xs[ys.size() / 2], span > 0.0 ? span : 1.0, ymax, ymin};
        out.fit.converged = false;
        return out;
    }

    const double center0 = xs[static_cast<std::size_t>(ymax_it - ys.begin())];
    // crude width guess: spread of points above half amplitude
    double lo_x = center0, hi_x = center0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (ys[i] - ymin > 0.5 * (ymax - ymin)) {
            lo_x = std::min(lo_x, xs[i]);
            hi_x = std::max(hi_x, xs[i]);
        }
    }
    double fwhm0 = hi_x - lo_x;
    if (fwhm0 <= 0.0) fwhm0 = span / 4.0;

    FitProblem prob;
    prob.initial = {center0, fwhm0, ymax, ymin};
    prob.lower = {*xmin_it - span, span / static_cast<double>(xs.size()) / 4.0, 0.0, 0.0};
    prob.upper = {*xmax_it + span, 4.0 * span, 10.0 * ymax, ymax};
    prob.max_evals = max_evals;
    prob.tolerance = 1e-12;
    prob.residual_fn = [&xs, &ys](std::span<const double> p, std::vector<double>& r) {
        LorentzianFloorModel m{p[0], p[1], p[2], p[3]};
        r.resize(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i)
            r[i] = lorentzian_floor(xs[i], m) - ys[i];
    };

    out.fit = minimize(prob);
    out.model = {out.fit.params[0], out.fit.params[1], out.fit.params[2], out.fit.params[3]};
    if (out.model.peak < out.model.floor) {  // degenerate: report a flat line
        out.model.peak = out.model.floor;
        out.peak_significant = false;
        return out;
    }
    // a peak counts only when it rises above the residual scatter AND is
    // resolved by the scan: wider than a couple of grid steps, narrower than
    // the scanned window (sub-step spikes and window-wide bulges are noise)
    const double rms = std::sqrt(out.fit.sum_sq / static_cast<double>(xs.size()));
    const double typical_dx = span / static_cast<double>(xs.size() - 1);
    out.peak_significant = (out.model.peak - out.model.floor) > 3.0 * rms &&
                           out.model.fwhm >= 2.0 * typical_dx && out.model.fwhm <= span;
    return out;
}

}  // namespace optorf
