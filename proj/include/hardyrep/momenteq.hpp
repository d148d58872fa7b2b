#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hardyrep/gamma.hpp"
#include "hardyrep/kernel.hpp"
#include "hardyrep/measure.hpp"

namespace hardyrep {

// Truncated Toeplitz moment matrix M_mn = µ̂(n−m), m,n < N. With the transpose
// flag set it holds N = Mᵀ, entries µ̂(m−n).
class MomentMatrix {
public:
    MomentMatrix(MeasureSpec measure, Eigen::Index n, bool transpose,
                 std::vector<Complex> coeffs, double max_error);

    Eigen::Index size() const { return n_; }
    bool transposed() const { return transpose_; }
    const MeasureSpec& measure() const { return measure_; }

    // µ̂(k) for |k| < N
    Complex coefficient(std::int64_t k) const { return coeffs_[static_cast<std::size_t>(k + n_ - 1)]; }
    Complex operator()(Eigen::Index m, Eigen::Index n) const {
        return transpose_ ? coefficient(m - n) : coefficient(n - m);
    }
    double max_oracle_error() const { return max_error_; }
    std::size_t oracle_calls() const { return coeffs_.size(); }

    Eigen::MatrixXcd dense() const;

private:
    MeasureSpec measure_;
    Eigen::Index n_;
    bool transpose_;
    std::vector<Complex> coeffs_; // µ̂(−(N−1)), …, µ̂(N−1)
    double max_error_;
};

// Evaluates the 2N−1 oracle values in parallel.
MomentMatrix build_moment_matrix(const MeasureSpec& measure, Eigen::Index n, bool transpose = false);

enum class NormKind { EntrywiseMax, Frobenius };

std::string norm_name(NormKind norm);
NormKind parse_norm(const std::string& name);

inline constexpr const char* kWindowNote =
    "truncated criterion on the computed window: necessary at every window, sufficient in the limit";

struct ResidualReport {
    double residual = 0.0;
    NormKind norm = NormKind::EntrywiseMax;
    Eigen::Index n = 0;
    double tolerance = 0.0;
    bool pass = false;
    std::pair<Eigen::Index, Eigen::Index> worst_entry{0, 0};
    std::string tail_note;
};

// Norm of an explicit residual matrix; worst_entry is the first entry of largest modulus.
ResidualReport matrix_residual(const Eigen::MatrixXcd& r, NormKind norm, double tol);

// ‖C − CMC‖ on the window. Diagonal C uses the closed form c_mm µ̂(n−m) c_nn;
// dense C requires a measure with bounded density.
ResidualReport cmc_residual(const CoeffMatrix& c, const MomentMatrix& m,
                            NormKind norm = NormKind::EntrywiseMax,
                            std::optional<double> tol = std::nullopt);

// ‖C − C²‖ on [0,N)².
ResidualReport projection_residual(const CoeffMatrix& c, Eigen::Index n,
                                   NormKind norm = NormKind::EntrywiseMax, double tol = 1e-10);

struct VanishingResult {
    double max_abs = 0.0;
    std::optional<std::int64_t> worst_offset;
    bool pass = false;
    std::size_t offsets_checked = 0;
};

// max |µ̂(d)| over d ∈ 𝒟(Γ)∖{0}, |d| ≤ bound.
VanishingResult fourier_vanishing_check(const MeasureSpec& measure, const GammaSet& gamma,
                                        std::int64_t bound, double tol);

// Indices m < N with c_mm ≠ mass·c_mm², the diagonal of C = CMC.
std::vector<std::int64_t> diag_nonexistence_certificate(const DiagonalCoeffs& c, std::int64_t n,
                                                        double total_mass, double rel_tol = 1e-12);

} // namespace hardyrep
