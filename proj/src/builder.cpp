#include "hardyrep/builder.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hardyrep/boundary.hpp"
#include "hardyrep/error.hpp"
#include "hardyrep/kernel.hpp"

namespace hardyrep {

std::vector<std::int64_t> admissible_frequencies(const GammaSet& gamma, std::int64_t freq_bound) {
    if (freq_bound < 1) throw ValidationError("frequency bound must be ≥ 1");
    const auto diffs = difference_set(gamma, freq_bound);
    std::vector<std::int64_t> out;
    for (std::int64_t n = 1; n <= freq_bound; ++n)
        if (!std::binary_search(diffs.begin(), diffs.end(), n)) out.push_back(n);
    return out;
}

MeasureSpec build_ac_representing_measure(const GammaSet& gamma, std::int64_t freq_bound, double mass_budget,
                                          double decay) {
    if (!(mass_budget > 0.0 && mass_budget < 1.0)) throw ValidationError("mass budget must lie in (0,1)");
    if (!(decay > 0.0 && decay < 1.0)) throw ValidationError("decay must lie in (0,1)");
    const auto admissible = admissible_frequencies(gamma, freq_bound);
    if (admissible.empty())
        throw ConstructionError("no admissible frequency ≤ " + std::to_string(freq_bound) + ": 𝒟(Γ) covers [1, " +
                                std::to_string(freq_bound) + "]");
    TrigDensity t;
    double coeff = mass_budget * (1.0 - decay);
    for (auto n : admissible) {
        if (coeff == 0.0) break; // underflow: the remaining terms add nothing
        t.b.emplace(n, coeff);
        coeff *= decay;
    }
    MeasureSpec spec = t;
    require_valid(spec);
    return spec;
}

MeasureSpec build_from_coefficients(const GammaSet& gamma, std::map<std::int64_t, double> b) {
    MeasureSpec spec = TrigDensity{std::move(b)};
    require_valid(spec);
    const auto& t = std::get<TrigDensity>(spec);
    if (t.b.empty()) return spec;
    const auto top = t.b.rbegin()->first;
    const auto diffs = difference_set(gamma, top);
    for (const auto& [n, coeff] : t.b)
        if (coeff != 0.0 && std::binary_search(diffs.begin(), diffs.end(), n))
            throw ConstructionError("frequency " + std::to_string(n) + " lies in 𝒟(Γ); µ̂(" + std::to_string(n) +
                                    ") would not vanish");
    return spec;
}

Certificate certify(const MeasureSpec& measure, const GammaSet& gamma, std::int64_t window,
                    std::optional<double> tol) {
    if (window < 1) throw ValidationError("certificate window must be ≥ 1");
    Certificate cert;
    cert.window = window;
    cert.tolerance = tol.value_or(default_tolerance(measure));
    cert.validation = validate(measure);
    if (!cert.validation.ok()) {
        cert.failures.push_back("measure failed validation");
        return cert;
    }
    if (!is_probability(measure)) {
        cert.failures.push_back("measure is not a probability measure");
        return cert;
    }

    cert.vanishing = fourier_vanishing_check(measure, gamma, window - 1, cert.tolerance);
    if (!cert.vanishing.pass)
        cert.failures.push_back("µ̂ does not vanish at offset " + std::to_string(cert.vanishing.worst_offset.value_or(0)));

    const CoeffMatrix c = DiagonalCoeffs::indicator(gamma);
    const auto m = build_moment_matrix(measure, window);
    cert.cmc = cmc_residual(c, m, NormKind::EntrywiseMax, cert.tolerance);
    if (!cert.cmc->pass) cert.failures.push_back("C = CMC fails on the window");

    const Complex w{0.3, 0.0}, z{0.5, 0.0};
    const auto n = static_cast<std::size_t>(window);
    if (has_bounded_density(measure)) {
        cert.reproduce_route = "quadrature";
        cert.reproduce_residual =
            reproduce_residual_quadrature(c, measure, w, z, n, default_quadrature_nodes(n, measure));
    } else {
        cert.reproduce_route = "fourier";
        cert.reproduce_residual = reproduce_residual_fourier(c, measure, w, z, n);
    }
    // The spot check also carries the truncation of K_Γ beyond the window.
    const auto tail = DiagonalCoeffs::indicator(gamma).tail_sum_bound(window - 1, std::abs(w * z));
    if (cert.reproduce_residual > cert.tolerance + 2.0 * tail)
        cert.failures.push_back("boundary reproduction spot check fails");

    cert.residual = std::max(cert.vanishing.max_abs, cert.cmc->residual);
    cert.pass = cert.failures.empty();
    return cert;
}

} // namespace hardyrep
