#pragma once

// Serial reference versions of the OpenMP kernels. Kept for the parallel-vs-serial
// tests and the benchmark; not used on any production path.

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hardyrep/boundary.hpp"
#include "hardyrep/gamma.hpp"
#include "hardyrep/kernel.hpp"
#include "hardyrep/measure.hpp"

namespace hardyrep::serial {

// µ̂(−(N−1)), …, µ̂(N−1)
std::vector<Complex> moment_coefficients(const MeasureSpec& measure, Eigen::Index n);

// All |Γ|² pairs into an ordered set.
std::vector<std::int64_t> difference_set(const GammaSet& gamma, std::int64_t bound);

// Every entry evaluated directly, no Hermitian fill.
Eigen::MatrixXcd gram_at_points(const KernelFn& kernel, std::span<const Complex> points);

// Plain left-to-right trapezoidal sum.
Complex boundary_integral_quadrature(const BoundaryCoeffs& kw, const BoundaryCoeffs& kz,
                                     const MeasureSpec& measure, std::size_t nodes);

// C·M·C by explicit triple loops.
Eigen::MatrixXcd triple_product(const Eigen::MatrixXcd& c, const Eigen::MatrixXcd& m);

// max |µ̂(d)| over the difference set, one offset at a time.
double vanishing_max(const MeasureSpec& measure, const GammaSet& gamma, std::int64_t bound);

} // namespace hardyrep::serial
