#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "hardyrep/complex.hpp"
#include "hardyrep/gamma.hpp"

namespace hardyrep {

// Diagonal coefficient matrix C = diag(c_nn), c_nn ≥ 0. Infinite diagonals must
// carry enough structure to bound Σ_{n>N} c_nn rⁿ: either sup c_nn ≤ 1 (digit
// indicators) or an explicit polynomial order (c_nn = (n+1)^p).
class DiagonalCoeffs {
public:
    enum class Kind { Finite, DigitIndicator, Polynomial };

    static DiagonalCoeffs finite(std::map<std::int64_t, double> entries);
    // 0/1 indicator of a finite Γ.
    static DiagonalCoeffs indicator(const GammaSet& gamma);
    // 0/1 indicator of the infinite digit set {Σ_j l_j B^j : l_j ∈ L}; requires L ⊂ [0,B).
    static DiagonalCoeffs digit_indicator(std::int64_t base, std::vector<std::int64_t> digits);
    // c_nn = (n+1)^order. Order 0 is the Szegő kernel, order 1 the Bergman kernel.
    static DiagonalCoeffs polynomial(int order);

    Kind kind() const { return kind_; }
    double at(std::int64_t n) const;
    std::vector<double> window(std::int64_t n) const;

    // Upper bound on Σ_{n>last} c_nn xⁿ for 0 ≤ x < 1.
    double tail_sum_bound(std::int64_t last, double x) const;
    // Upper bound on (Σ_{n≥first} c_nn² x^{2n})^{1/2}.
    double tail_l2_bound(std::int64_t first, double x) const;
    // Past this index every entry vanishes; −1 for infinite support.
    std::int64_t support_end() const;
    double sup() const; // +inf for polynomial growth of positive order

    const std::map<std::int64_t, double>& finite_entries() const { return entries_; }
    std::int64_t base() const { return base_; }
    const std::vector<std::int64_t>& digits() const { return digits_; }
    int order() const { return order_; }

private:
    Kind kind_ = Kind::Finite;
    std::map<std::int64_t, double> entries_;
    std::int64_t base_ = 0;
    std::vector<std::int64_t> digits_;
    std::vector<bool> digit_mask_;
    int order_ = 0;
};

// Finite N×N Hermitian PSD truncation of a coefficient matrix. Entries outside
// the window are bounded in modulus by tail_sup (0: the matrix is exactly finite).
struct DenseCoeffs {
    Eigen::MatrixXcd entries;
    double tail_sup = 0.0;

    Eigen::Index size() const { return entries.rows(); }
};

// Checks Hermitian symmetry and PSD (λ_min ≥ −tol·trace); throws ValidationError.
DenseCoeffs make_dense(Eigen::MatrixXcd entries, double tail_sup = 0.0, double tol = 1e-10);

using CoeffMatrix = std::variant<DiagonalCoeffs, DenseCoeffs>;

// C restricted to [0,n)×[0,n); dense entries outside their window are zero.
Eigen::MatrixXcd materialize(const CoeffMatrix& c, Eigen::Index n);

// |K(w,z) − value| ≤ tail_bound, truncation and rounding included.
struct KernelValue {
    Complex value;
    double tail_bound = 0.0;
    std::int64_t terms = 0;
};

// Hard cap on the adaptive truncation index.
inline constexpr std::int64_t kMaxSeriesTerms = std::int64_t{1} << 27;

// K_C(w,z) = Σ_n Σ_m c_mn w̄^m zⁿ with |K − value| ≤ tail_bound. tail_bound is the
// truncation bound (≤ tol whenever the coefficient structure allows it) plus a
// first-order floating-point rounding bound.
KernelValue eval_series(const CoeffMatrix& c, Complex w, Complex z, double tol);

// ∏_{j≥0} (1 + (w̄z)^{B^j}), the generating function of the {0,1}-digit set in base B.
KernelValue eval_product(std::int64_t base, Complex w, Complex z, double tol);

using KernelFn = std::function<KernelValue(Complex w, Complex z)>;

KernelFn series_kernel(CoeffMatrix c, double tol);
KernelFn product_kernel(std::int64_t base, double tol);

struct GramMatrix {
    Eigen::MatrixXcd values; // values(i,j) = K(ζ_j, ζ_i)
    double max_tail_bound = 0.0;
};

GramMatrix gram_at_points(const KernelFn& kernel, std::span<const Complex> points);

struct PsdResult {
    double min_eigenvalue = 0.0;
    bool pass = false;
};

// pass ⟺ λ_min(G) ≥ −tol·trace(G). Throws ValidationError unless G is Hermitian.
PsdResult psd_check(const Eigen::MatrixXcd& g, double tol);

// Σ_{n<N} |a_n|²
double h2_norm_sq(std::span<const Complex> coeffs, std::size_t n);

} // namespace hardyrep
