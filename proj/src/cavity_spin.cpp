#include "optorf/cavity_spin.hpp"

#include <cmath>
#include <stdexcept>

namespace optorf {

void CavityParams::validate() const {
    if (!(kappa_c.rad_per_s > 0.0))
        throw std::invalid_argument("CavityParams: kappa_c must be positive");
    if (!(kappa_c.rad_per_s <= kappa_t.rad_per_s))
        throw std::invalid_argument("CavityParams: kappa_c cannot exceed kappa_t");
    if (!(quality_factor() > 1.0))
        throw std::invalid_argument("CavityParams: quality factor must exceed 1");
}

void SpinEnsembleParams::validate() const {
    if (!(g_factor > 0.0))
        throw std::invalid_argument("SpinEnsembleParams: g_factor must be positive");
    if (!(gamma.rad_per_s > 0.0))
        throw std::invalid_argument("SpinEnsembleParams: gamma must be positive");
    if (cooperativity < 0.0)
        throw std::invalid_argument("SpinEnsembleParams: cooperativity must be non-negative");
}

cplx spin_term(AngularFrequency omega_rf, AngularFrequency omega_s,
               const CavityParams& cavity, const SpinEnsembleParams& spins) {
    if (!(spins.gamma.rad_per_s > 0.0))
        throw std::domain_error("spin_term: gamma must be positive");
    const cplx numerator(0.0, cavity.kappa_t.rad_per_s / 2.0);
    const cplx denominator(-1.0,
                           2.0 * (omega_rf.rad_per_s - omega_s.rad_per_s) / spins.gamma.rad_per_s);
    return spins.cooperativity * numerator / denominator;
}

cplx s11(AngularFrequency omega_rf, AngularFrequency omega_s,
         const CavityParams& cavity, const SpinEnsembleParams& spins) {
    const cplx w = spins.cooperativity != 0.0 ? spin_term(omega_rf, omega_s, cavity, spins)
                                              : cplx(0.0, 0.0);
    const cplx denom =
        cplx(omega_rf.rad_per_s - cavity.omega_c.rad_per_s, cavity.kappa_t.rad_per_s / 2.0) - w;
    if (denom == cplx(0.0, 0.0))
        throw std::domain_error("s11: singular denominator (zero damping on resonance)");
    return 1.0 - cplx(0.0, cavity.kappa_c.rad_per_s) / denom;
}

S11Map synthesize_s11_map(const CavityParams& cavity, const SpinEnsembleParams& spins,
                          const std::vector<double>& frequencies_hz,
                          const std::vector<double>& fields_tesla,
                          double attenuation_db) {
    auto check_axis = [](const std::vector<double>& axis, const char* name) {
        if (axis.empty())
            throw std::invalid_argument(std::string("synthesize_s11_map: empty axis ") + name);
        for (std::size_t i = 1; i < axis.size(); ++i)
            if (!(axis[i] > axis[i - 1]) && !(axis[i] < axis[i - 1]))
                throw std::invalid_argument(
                    std::string("synthesize_s11_map: axis not strictly monotonic: ") + name);
        for (std::size_t i = 2; i < axis.size(); ++i)
            if ((axis[i] > axis[i - 1]) != (axis[1] > axis[0]))
                throw std::invalid_argument(
                    std::string("synthesize_s11_map: axis not strictly monotonic: ") + name);
    };
    check_axis(frequencies_hz, "frequencies");
    check_axis(fields_tesla, "fields");

    S11Map map;
    map.frequencies_hz = frequencies_hz;
    map.fields_tesla = fields_tesla;
    map.attenuation_db = attenuation_db;
    map.values.resize(frequencies_hz.size() * fields_tesla.size());
    const double amp = amplitude_factor_from_db(attenuation_db);
    for (std::size_t fi = 0; fi < fields_tesla.size(); ++fi) {
        const AngularFrequency omega_s = larmor_frequency(spins.g_factor, fields_tesla[fi]);
        for (std::size_t qi = 0; qi < frequencies_hz.size(); ++qi) {
            const AngularFrequency omega_rf = AngularFrequency::from_hz(frequencies_hz[qi]);
            map.values[map.index(fi, qi)] = amp * s11(omega_rf, omega_s, cavity, spins);
        }
    }
    return map;
}

std::vector<double> S11FitParams::to_vector() const {
    return {kappa_c_rad, kappa_t_rad, gamma_rad, cooperativity, g_factor, omega_c_rad,
            attenuation_db};
}

S11FitParams S11FitParams::from_vector(const std::vector<double>& v) {
    if (v.size() != 7) throw std::invalid_argument("S11FitParams: expected 7 parameters");
    return {v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
}

S11FitResult fit_s11_map(const S11Map& data, const S11FitParams& initial_guess,
                         const S11FitParams& lower, const S11FitParams& upper, int max_evals) {
    if (data.values.size() != data.frequencies_hz.size() * data.fields_tesla.size())
        throw std::invalid_argument("fit_s11_map: grid size mismatch");
    std::vector<double> magnitudes(data.values.size());
    for (std::size_t i = 0; i < data.values.size(); ++i) {
        magnitudes[i] = std::abs(data.values[i]);
        if (!std::isfinite(magnitudes[i]))
            throw std::invalid_argument("fit_s11_map: non-finite data");
    }

    FitProblem prob;
    prob.initial = initial_guess.to_vector();
    prob.lower = lower.to_vector();
    prob.upper = upper.to_vector();
    prob.max_evals = max_evals;
    prob.tolerance = 1e-14;
    prob.compute_uncertainties = true;
    prob.residual_fn = [&](std::span<const double> p, std::vector<double>& r) {
        const S11FitParams q{p[0], p[1], p[2], p[3], p[4], p[5], p[6]};
        CavityParams cavity{AngularFrequency::from_rad_per_s(q.omega_c_rad),
                            AngularFrequency::from_rad_per_s(q.kappa_c_rad),
                            AngularFrequency::from_rad_per_s(q.kappa_t_rad)};
        SpinEnsembleParams spins{q.g_factor, AngularFrequency::from_rad_per_s(q.gamma_rad),
                                 q.cooperativity};
        const double amp = amplitude_factor_from_db(q.attenuation_db);
        r.resize(magnitudes.size());
        for (std::size_t fi = 0; fi < data.fields_tesla.size(); ++fi) {
            const AngularFrequency omega_s =
                larmor_frequency(spins.g_factor, data.fields_tesla[fi]);
            for (std::size_t qi = 0; qi < data.frequencies_hz.size(); ++qi) {
                const std::size_t idx = data.index(fi, qi);
                const AngularFrequency omega_rf =
                    AngularFrequency::from_hz(data.frequencies_hz[qi]);
                r[idx] = amp * std::abs(s11(omega_rf, omega_s, cavity, spins)) - magnitudes[idx];
            }
        }
    };

    S11FitResult out;
    out.fit = minimize(prob);
    out.params = S11FitParams::from_vector(out.fit.params);
    return out;
}

}  // namespace optorf
