#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hardyrep/gamma.hpp"
#include "hardyrep/measure.hpp"
#include "hardyrep/momenteq.hpp"

namespace hardyrep {

// Positive frequencies n ≤ freq_bound with n ∉ 𝒟(Γ).
std::vector<std::int64_t> admissible_frequencies(const GammaSet& gamma, std::int64_t freq_bound);

// Density 1 + Σ b_n cos(2πnθ) supported on the admissible frequencies, with
// b_n = budget·(1−decay)·decay^rank(n). Throws ConstructionError when 𝒟(Γ)
// covers [1, freq_bound].
MeasureSpec build_ac_representing_measure(const GammaSet& gamma, std::int64_t freq_bound,
                                          double mass_budget, double decay);

// User-chosen coefficients; every key must be admissible and Σ|b_n| < 1.
MeasureSpec build_from_coefficients(const GammaSet& gamma, std::map<std::int64_t, double> b);

struct Certificate {
    bool pass = false;
    double residual = 0.0; // max of the vanishing and CMC residuals
    double tolerance = 0.0;
    std::int64_t window = 0;
    ValidationReport validation;
    VanishingResult vanishing;
    std::optional<ResidualReport> cmc;
    std::string reproduce_route; // "quadrature" or "fourier"
    double reproduce_residual = 0.0;
    std::vector<std::string> failures;
};

// validate + vanishing check on 𝒟(Γ) ∩ [−(W−1), W−1] + C = CMC on [0,W)² +
// one reproduction spot check at (w,z) = (0.3, 0.5).
Certificate certify(const MeasureSpec& measure, const GammaSet& gamma, std::int64_t window,
                    std::optional<double> tol = std::nullopt);

} // namespace hardyrep
