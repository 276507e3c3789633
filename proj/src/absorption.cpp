#include "optorf/absorption.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace optorf {

void VoigtLine::validate() const {
    if (lorentz_fwhm_hz < 0.0 || gauss_fwhm_hz < 0.0)
        throw std::invalid_argument("VoigtLine: widths must be non-negative");
    if (lorentz_fwhm_hz == 0.0 && gauss_fwhm_hz == 0.0)
        throw std::invalid_argument("VoigtLine: both widths zero");
    if (peak_od < 0.0) throw std::invalid_argument("VoigtLine: peak_od must be non-negative");
}

void ZeemanQuartet::validate() const {
    VoigtLine{center_freq_hz, lorentz_fwhm_hz, gauss_fwhm_hz, od_direct}.validate();
    if (od_crossed < 0.0) throw std::invalid_argument("ZeemanQuartet: od_crossed negative");
    if (!(center_freq_hz > 0.0))
        throw std::invalid_argument("ZeemanQuartet: center frequency must be positive");
    if (!(g_ground > 0.0) || !(g_excited > 0.0))
        throw std::invalid_argument("ZeemanQuartet: g-factors must be positive");
    if (field_tesla < 0.0) throw std::invalid_argument("ZeemanQuartet: field negative");
    if (!(temperature_k > 0.0))
        throw std::invalid_argument("ZeemanQuartet: temperature must be positive");
}

double ZeemanQuartet::ground_splitting_hz() const {
    return g_ground * constants::mu_bohr * field_tesla / constants::h_planck;
}

double ZeemanQuartet::excited_splitting_hz() const {
    return g_excited * constants::mu_bohr * field_tesla / constants::h_planck;
}

std::array<double, 4> ZeemanQuartet::line_offsets_hz() const {
    const double ng = ground_splitting_hz();
    const double ne = excited_splitting_hz();
    return {(ng - ne) / 2.0, -(ng - ne) / 2.0, (ng + ne) / 2.0, -(ng + ne) / 2.0};
}

std::array<double, 4> ZeemanQuartet::line_amplitudes() const {
    const AngularFrequency omega_s = AngularFrequency::from_hz(ground_splitting_hz());
    const double rho_gg = thermal_ground_population(omega_s, temperature_k);
    const double rho_ss = 1.0 - rho_gg;
    // lines starting from the more populated (lower) ground level carry rho_gg
    return {od_direct * rho_gg, od_direct * rho_ss, od_crossed * rho_gg, od_crossed * rho_ss};
}

TransmissionSpectrum synthesize_transmission(const ZeemanQuartet& model,
                                             const std::vector<double>& detunings_hz) {
    model.validate();
    const auto offsets = model.line_offsets_hz();
    const auto amps = model.line_amplitudes();
    TransmissionSpectrum out;
    out.detunings_hz = detunings_hz;
    out.transmission.resize(detunings_hz.size());
    for (std::size_t i = 0; i < detunings_hz.size(); ++i) {
        double od = 0.0;
        for (int k = 0; k < 4; ++k) {
            if (amps[k] == 0.0) continue;
            od += amps[k] * voigt_peak_normalized(detunings_hz[i] - offsets[k],
                                                  model.lorentz_fwhm_hz, model.gauss_fwhm_hz);
        }
        out.transmission[i] = std::exp(-od);
    }
    return out;
}

std::vector<double> AbsorptionFitParams::to_vector() const {
    return {od_direct, od_crossed, lorentz_fwhm_hz, gauss_fwhm_hz,
            g_ground, g_excited, center_offset_hz, temperature_k};
}

AbsorptionFitParams AbsorptionFitParams::from_vector(const std::vector<double>& v) {
    if (v.size() != 8) throw std::invalid_argument("AbsorptionFitParams: expected 8 parameters");
    return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
}

AbsorptionFitResult fit_absorption(const TransmissionSpectrum& data, double field_tesla,
                                   const AbsorptionFitParams& initial_guess,
                                   const AbsorptionFitParams& lower,
                                   const AbsorptionFitParams& upper, int max_evals) {
    if (data.detunings_hz.size() != data.transmission.size())
        throw std::invalid_argument("fit_absorption: length mismatch");
    if (data.detunings_hz.size() < 8)
        throw std::invalid_argument("fit_absorption: too few points");
    for (double t : data.transmission)
        if (!std::isfinite(t)) throw std::invalid_argument("fit_absorption: non-finite data");

    // An arbitrary large carrier keeps the quartet valid; only the offsets
    // relative to it matter for the residuals.
    const double carrier_hz = 1e14;

    auto model_residual = [&](const AbsorptionFitParams& q, std::vector<double>& r) {
        ZeemanQuartet quartet{carrier_hz, q.g_ground, q.g_excited, field_tesla,
                              q.od_direct, q.od_crossed, q.temperature_k,
                              q.lorentz_fwhm_hz, q.gauss_fwhm_hz};
        const auto offsets = quartet.line_offsets_hz();
        const auto amps = quartet.line_amplitudes();
        r.resize(data.detunings_hz.size());
        for (std::size_t i = 0; i < r.size(); ++i) {
            double od = 0.0;
            const double x = data.detunings_hz[i] - q.center_offset_hz;
            for (int k = 0; k < 4; ++k) {
                if (amps[k] == 0.0) continue;
                od += amps[k] * voigt_peak_normalized(x - offsets[k], q.lorentz_fwhm_hz,
                                                      q.gauss_fwhm_hz);
            }
            r[i] = std::exp(-od) - data.transmission[i];
        }
    };

    // The spectrum is nearly symmetric under swapping the two g-factors (only
    // the thermal amplitude asymmetry breaks the tie), which plants a false
    // minimum in the wrong ordering. Each run is therefore confined to one
    // ordering family by folding the g pair in the model, and the better
    // residual wins.
    auto run_ordering = [&](bool ground_larger) {
        auto fold = [ground_larger](AbsorptionFitParams q) {
            const bool wrong = ground_larger ? q.g_ground < q.g_excited
                                             : q.g_ground > q.g_excited;
            if (wrong) std::swap(q.g_ground, q.g_excited);
            return q;
        };
        FitProblem prob;
        prob.initial = initial_guess.to_vector();
        prob.lower = lower.to_vector();
        prob.upper = upper.to_vector();
        prob.max_evals = max_evals / 2;
        prob.tolerance = 1e-14;
        prob.compute_uncertainties = true;
        prob.residual_fn = [&, fold](std::span<const double> p, std::vector<double>& r) {
            model_residual(fold(AbsorptionFitParams::from_vector(
                               std::vector<double>(p.begin(), p.end()))),
                           r);
        };
        FitResult fit = minimize(prob);
        fit.params = fold(AbsorptionFitParams::from_vector(fit.params)).to_vector();
        return fit;
    };

    AbsorptionFitResult out;
    const FitResult plain = run_ordering(true);
    const FitResult mirrored = run_ordering(false);
    out.fit = plain.sum_sq <= mirrored.sum_sq ? plain : mirrored;
    out.fit.n_evals = plain.n_evals + mirrored.n_evals;
    out.params = AbsorptionFitParams::from_vector(out.fit.params);
    return out;
}

}  // namespace optorf
