#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "hardyrep/complex.hpp"

namespace hardyrep {

// Measures on [0,1) ≅ 𝕋, with Fourier coefficients
//
//     µ̂(k) = ∫₀¹ e^{−2πikx} dµ(x),
//
// so that ∫ e^{2πimx} e^{−2πinx} dµ = µ̂(n−m) and the moment matrix has
// entries M_mn = µ̂(n−m).

struct Lebesgue {};

// dµ/dλ(θ) = 1 + Σ_n b_n cos(2πnθ), keys are positive frequencies.
struct TrigDensity {
    std::map<std::int64_t, double> b;
};

// Self-similar measure µ = Σ p_i µ∘φ_i⁻¹ with φ_i(x) = (x + a_i)/R.
struct IfsMeasure {
    std::int64_t scale = 2;
    std::vector<std::int64_t> digits;
    std::vector<double> weights;
};

struct AtomicMeasure {
    std::vector<double> points;
    std::vector<double> weights;
};

using MeasureSpec = std::variant<Lebesgue, TrigDensity, IfsMeasure, AtomicMeasure>;

// Quaternary and ternary Cantor measures (two digits, equal weights).
MeasureSpec mu4();
MeasureSpec mu3();

struct FourierValue {
    Complex value;
    double error = 0.0; // |µ̂(k) − value| ≤ error
};

struct ValidationReport {
    std::vector<std::string> violations;
    // dµ/dλ exists and is in L∞; equivalent to M being bounded on ℓ²(ℕ₀).
    bool bounded_density = false;

    bool ok() const { return violations.empty(); }
};

ValidationReport validate(const MeasureSpec& spec);

// Throws ValidationError listing every violation.
void require_valid(const MeasureSpec& spec);

// IFS truncation threshold on the phase spread of the first omitted factor.
inline constexpr double kIfsEpsilon = 1e-14;

FourierValue fourier_coefficient(const MeasureSpec& spec, std::int64_t k);

// Same as fourier_coefficient but skips validation; callers must have validated.
FourierValue fourier_coefficient_unchecked(const MeasureSpec& spec, std::int64_t k);

double density_eval(const MeasureSpec& spec, double theta);

bool has_bounded_density(const MeasureSpec& spec);
double total_mass(const MeasureSpec& spec);
bool is_probability(const MeasureSpec& spec, double tol = 1e-12);

// Largest frequency present in the density (0 for Lebesgue).
std::int64_t density_top_frequency(const MeasureSpec& spec);

std::string family_name(const MeasureSpec& spec);

// Pass/fail threshold for checks that consume this measure's oracle:
// 1e−10 when the oracle is exact, 1e−8 when IFS truncation enters.
double default_tolerance(const MeasureSpec& spec);

} // namespace hardyrep
