#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hardyrep/kernel.hpp"
#include "hardyrep/measure.hpp"
#include "hardyrep/momenteq.hpp"

namespace hardyrep {

// Taylor coefficients a_n = Σ_m c_mn w̄^m (n < N) of K_C(w,·); these are also the
// Fourier coefficients of the boundary function K⋆(w,·).
struct BoundaryCoeffs {
    Complex w;
    std::vector<Complex> coeffs;
    double tail_bound = 0.0; // ℓ² norm of the omitted part
};

BoundaryCoeffs boundary_coeffs(const CoeffMatrix& c, Complex w, std::size_t n);

// ⟨a, b⟩_µ = Σ_{n,m} a_n conj(b_m) µ̂(m−n) for a_n, b_m indexed by freqs.
Complex mu_inner_product(std::span<const std::int64_t> freqs, std::span<const Complex> a,
                         std::span<const Complex> b, const MeasureSpec& measure);

// ‖Σ a_n e^{2πinθ}‖²_µ = ⟨N a, a⟩ with N = (µ̂(m−n)); a indexed by 0..len−1.
double mu_norm_sq(std::span<const Complex> a, const MeasureSpec& measure);

// Default quadrature node count: 4× the top frequency of the integrand.
std::size_t default_quadrature_nodes(std::size_t n, const MeasureSpec& measure);

// Trapezoidal rule on Q equispaced nodes, summed in fixed chunks so the result is
// independent of the thread count.
Complex boundary_integral_quadrature(const BoundaryCoeffs& kw, const BoundaryCoeffs& kz,
                                     const MeasureSpec& measure, std::size_t nodes);

double reproduce_residual_quadrature(const CoeffMatrix& c, const MeasureSpec& measure, Complex w,
                                     Complex z, std::size_t n, std::size_t nodes);

// Σ_{m,n<N} (CMC)_mn w̄^m zⁿ
Complex boundary_integral_fourier(const CoeffMatrix& c, const MomentMatrix& m, Complex w, Complex z);

double reproduce_residual_fourier(const CoeffMatrix& c, const MeasureSpec& measure, Complex w,
                                  Complex z, std::size_t n);

// |⟨N a, a⟩ − ‖a‖²| with a supported on freqs.
double norm_preservation_residual(std::span<const std::int64_t> freqs, std::span<const Complex> a,
                                  const MeasureSpec& measure);

// ‖Cᵀ − CᵀMCᵀ‖ for a projection C and a measure with bounded density.
ResidualReport transpose_identity_residual(const CoeffMatrix& c, const MeasureSpec& measure,
                                           Eigen::Index n, NormKind norm = NormKind::EntrywiseMax,
                                           std::optional<double> tol = std::nullopt);

} // namespace hardyrep
