#include "hardyrep/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include <omp.h>

#include "hardyrep/error.hpp"

namespace hardyrep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Unit roundoff with slack; a complex product carries relative error ≤ √5·u.
constexpr double kRound = 1.01 * std::numeric_limits<double>::epsilon() / 2.0;
constexpr double kMulErr = 2.237;

Complex ipow(Complex u, std::int64_t n) {
    Complex result{1.0, 0.0};
    while (n > 0) {
        if (n & 1) result *= u;
        u *= u;
        n >>= 1;
    }
    return result;
}

void require_in_disc(Complex z, const char* what) {
    if (!(std::abs(z) < 1.0))
        throw DomainError(std::string(what) + " must lie in the open unit disc, got " + format_complex(z));
}

double hermitian_defect(const Eigen::MatrixXcd& g) {
    return (g - g.adjoint()).cwiseAbs().maxCoeff();
}

} // namespace

DiagonalCoeffs DiagonalCoeffs::finite(std::map<std::int64_t, double> entries) {
    for (const auto& [n, c] : entries) {
        if (n < 0) throw ValidationError("diagonal index must be ≥ 0");
        if (!(c >= 0.0) || !std::isfinite(c))
            throw ValidationError("diagonal entries must be finite and ≥ 0 (index " + std::to_string(n) + ")");
    }
    DiagonalCoeffs d;
    d.kind_ = Kind::Finite;
    d.entries_ = std::move(entries);
    return d;
}

DiagonalCoeffs DiagonalCoeffs::indicator(const GammaSet& gamma) {
    std::map<std::int64_t, double> m;
    for (auto g : gamma.elements()) m.emplace(g, 1.0);
    return finite(std::move(m));
}

DiagonalCoeffs DiagonalCoeffs::digit_indicator(std::int64_t base, std::vector<std::int64_t> digits) {
    if (base < 2) throw ValidationError("digit indicator base must be ≥ 2");
    if (digits.empty()) throw ValidationError("digit indicator needs at least one digit");
    if (base > (std::int64_t{1} << 20)) throw CapacityError("digit indicator base too large");
    DiagonalCoeffs d;
    d.kind_ = Kind::DigitIndicator;
    d.base_ = base;
    d.digit_mask_.assign(static_cast<std::size_t>(base), false);
    for (auto l : digits) {
        if (l < 0 || l >= base) throw ValidationError("digit indicator digits must lie in [0, base)");
        if (d.digit_mask_[static_cast<std::size_t>(l)]) throw ValidationError("digits not distinct");
        d.digit_mask_[static_cast<std::size_t>(l)] = true;
    }
    std::sort(digits.begin(), digits.end());
    d.digits_ = std::move(digits);
    return d;
}

DiagonalCoeffs DiagonalCoeffs::polynomial(int order) {
    if (order < 0 || order > 16) throw ValidationError("polynomial order must lie in [0, 16]");
    DiagonalCoeffs d;
    d.kind_ = Kind::Polynomial;
    d.order_ = order;
    return d;
}

double DiagonalCoeffs::at(std::int64_t n) const {
    if (n < 0) return 0.0;
    switch (kind_) {
    case Kind::Finite: {
        const auto it = entries_.find(n);
        return it == entries_.end() ? 0.0 : it->second;
    }
    case Kind::DigitIndicator: {
        do {
            if (!digit_mask_[static_cast<std::size_t>(n % base_)]) return 0.0;
            n /= base_;
        } while (n > 0);
        return 1.0;
    }
    case Kind::Polynomial:
        return std::pow(static_cast<double>(n) + 1.0, order_);
    }
    return 0.0;
}

std::vector<double> DiagonalCoeffs::window(std::int64_t n) const {
    std::vector<double> out(static_cast<std::size_t>(std::max<std::int64_t>(n, 0)));
    for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = at(i);
    return out;
}

std::int64_t DiagonalCoeffs::support_end() const {
    if (kind_ != Kind::Finite) return -1;
    return entries_.empty() ? 0 : entries_.rbegin()->first + 1;
}

double DiagonalCoeffs::sup() const {
    switch (kind_) {
    case Kind::Finite: {
        double s = 0.0;
        for (const auto& [n, c] : entries_) s = std::max(s, c);
        return s;
    }
    case Kind::DigitIndicator: return 1.0;
    case Kind::Polynomial: return order_ == 0 ? 1.0 : kInf;
    }
    return kInf;
}

double DiagonalCoeffs::tail_sum_bound(std::int64_t last, double x) const {
    if (x == 0.0) return 0.0;
    const auto next = static_cast<double>(last + 1);
    switch (kind_) {
    case Kind::Finite: {
        double s = 0.0;
        for (auto it = entries_.upper_bound(last); it != entries_.end(); ++it)
            s += it->second * std::pow(x, static_cast<double>(it->first));
        return s;
    }
    case Kind::DigitIndicator: return std::pow(x, next) / (1.0 - x);
    case Kind::Polynomial: {
        if (order_ == 0) return std::pow(x, next) / (1.0 - x);
        if (order_ == 1) return (next + 1.0) * std::pow(x, next) / ((1.0 - x) * (1.0 - x));
        // Terms t_n = (n+1)^p xⁿ decrease with ratio ≤ ρ beyond n = last+1.
        const double rho = std::pow((next + 2.0) / (next + 1.0), order_) * x;
        if (rho >= 1.0) return kInf;
        return std::pow(next + 1.0, order_) * std::pow(x, next) / (1.0 - rho);
    }
    }
    return kInf;
}

double DiagonalCoeffs::tail_l2_bound(std::int64_t first, double x) const {
    if (x == 0.0) return first == 0 ? at(0) : 0.0;
    const auto f = static_cast<double>(first);
    switch (kind_) {
    case Kind::Finite: {
        double s = 0.0;
        for (auto it = entries_.lower_bound(first); it != entries_.end(); ++it)
            s += it->second * it->second * std::pow(x, 2.0 * static_cast<double>(it->first));
        return std::sqrt(s);
    }
    case Kind::DigitIndicator: return std::pow(x, f) / std::sqrt(1.0 - x * x);
    case Kind::Polynomial: {
        if (order_ == 0) return std::pow(x, f) / std::sqrt(1.0 - x * x);
        const double rho = std::pow((f + 2.0) / (f + 1.0), 2 * order_) * x * x;
        if (rho >= 1.0) return kInf;
        return std::sqrt(std::pow(f + 1.0, 2 * order_) * std::pow(x, 2.0 * f) / (1.0 - rho));
    }
    }
    return kInf;
}

DenseCoeffs make_dense(Eigen::MatrixXcd entries, double tail_sup, double tol) {
    if (entries.rows() != entries.cols() || entries.rows() == 0)
        throw ValidationError("dense coefficient matrix must be square and nonempty");
    if (!(tail_sup >= 0.0)) throw ValidationError("tailSup must be ≥ 0");
    const double scale = std::max(1.0, entries.cwiseAbs().maxCoeff());
    if (hermitian_defect(entries) > 1e-12 * scale)
        throw ValidationError("dense coefficient matrix is not Hermitian (c_nm ≠ conj c_mn)");
    const auto psd = psd_check(entries, tol);
    if (!psd.pass)
        throw ValidationError("dense coefficient matrix is not positive semidefinite (λ_min = " +
                              format_real(psd.min_eigenvalue) + ")");
    return DenseCoeffs{std::move(entries), tail_sup};
}

Eigen::MatrixXcd materialize(const CoeffMatrix& c, Eigen::Index n) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
    if (const auto* d = std::get_if<DiagonalCoeffs>(&c)) {
        const auto diag = d->window(n);
        for (Eigen::Index i = 0; i < n; ++i) out(i, i) = diag[static_cast<std::size_t>(i)];
    } else {
        const auto& dense = std::get<DenseCoeffs>(c).entries;
        const auto k = std::min(n, dense.rows());
        out.topLeftCorner(k, k) = dense.topLeftCorner(k, k);
    }
    return out;
}

namespace {

// Neumaier summation, componentwise: |result − Σ t| ≤ 2u·|Σ t| + O(N u²)·Σ|t|.
struct CompensatedSum {
    Complex sum{0.0, 0.0};
    double comp_re = 0.0, comp_im = 0.0;
    double abs_total = 0.0;
    std::int64_t count = 0;

    static void add(double& s, double& c, double t) {
        const double n = s + t;
        c += std::abs(s) >= std::abs(t) ? (s - n) + t : (t - n) + s;
        s = n;
    }
    void operator+=(Complex t) {
        double re = sum.real(), im = sum.imag();
        add(re, comp_re, t.real());
        add(im, comp_im, t.imag());
        sum = {re, im};
        abs_total += std::abs(t);
        ++count;
    }
    Complex value() const { return sum + Complex(comp_re, comp_im); }
    double error_bound() const {
        const double n = static_cast<double>(count);
        return 2.0 * kRound * std::abs(value()) + 4.0 * n * kRound * kRound * abs_total;
    }
};

KernelValue eval_diagonal(const DiagonalCoeffs& d, Complex w, Complex z, double tol) {
    const Complex u = std::conj(w) * z;
    const double x = std::abs(u);
    // A term c·ū formed with k complex products carries relative error ≤ (k·kMulErr + 1)·u.
    CompensatedSum acc;
    double term_err = 0.0;
    if (d.kind() == DiagonalCoeffs::Kind::Finite) {
        KernelValue kv{{0.0, 0.0}, 0.0, 0};
        for (const auto& [n, c] : d.finite_entries()) {
            const Complex t = c * ipow(u, n);
            acc += t;
            term_err += (kMulErr * static_cast<double>(2 * n + 2) + 1.0) * std::abs(t);
            ++kv.terms;
        }
        kv.value = acc.value();
        kv.tail_bound = acc.error_bound() + kRound * term_err;
        return kv;
    }
    if (x == 0.0) return {{d.at(0), 0.0}, 0.0, 1};

    KernelValue kv{{0.0, 0.0}, kInf, 0};
    Complex power{1.0, 0.0};
    for (std::int64_t n = 0; n < kMaxSeriesTerms; ++n) {
        const double c = d.at(n);
        if (c != 0.0) {
            const Complex t = c * power;
            acc += t;
            term_err += (kMulErr * static_cast<double>(n + 1) + 1.0) * std::abs(t);
        }
        power *= u;
        kv.terms = n + 1;
        // The bound is monotone in n; checking every 8 terms keeps pow() off the hot path.
        if ((n & 7) == 7 || n < 8) {
            kv.tail_bound = d.tail_sum_bound(n, x);
            if (kv.tail_bound <= tol) break;
        }
    }
    kv.value = acc.value();
    kv.tail_bound += acc.error_bound() + kRound * term_err;
    return kv;
}

KernelValue eval_dense(const DenseCoeffs& d, Complex w, Complex z) {
    const auto s = d.size();
    Eigen::VectorXcd wv(s), zv(s);
    Complex pw{1.0, 0.0}, pz{1.0, 0.0};
    for (Eigen::Index i = 0; i < s; ++i) {
        wv(i) = pw;
        zv(i) = pz;
        pw *= std::conj(w);
        pz *= z;
    }
    KernelValue kv;
    kv.value = wv.transpose() * d.entries * zv;
    kv.terms = s * s;
    const double mag = (wv.cwiseAbs().transpose() * d.entries.cwiseAbs() * zv.cwiseAbs()).value();
    // Each term takes ≤ 2s complex products and sits under ≤ 2s additions.
    const double ops = static_cast<double>(2 * s);
    kv.tail_bound = kRound * (kMulErr + 1.0) * ops * mag;
    if (d.tail_sup > 0.0) {
        const double a = std::abs(w), b = std::abs(z);
        const double as = std::pow(a, static_cast<double>(s)), bs = std::pow(b, static_cast<double>(s));
        kv.tail_bound += d.tail_sup * (as + bs - as * bs) / ((1.0 - a) * (1.0 - b));
    }
    return kv;
}

} // namespace

KernelValue eval_series(const CoeffMatrix& c, Complex w, Complex z, double tol) {
    require_in_disc(w, "w");
    require_in_disc(z, "z");
    if (!(tol > 0.0)) throw ValidationError("tolerance must be > 0");
    if (const auto* d = std::get_if<DiagonalCoeffs>(&c)) return eval_diagonal(*d, w, z, tol);
    return eval_dense(std::get<DenseCoeffs>(c), w, z);
}

KernelValue eval_product(std::int64_t base, Complex w, Complex z, double tol) {
    if (base < 2) throw ValidationError("product kernel base must be ≥ 2");
    require_in_disc(w, "w");
    require_in_disc(z, "z");
    if (!(tol > 0.0)) throw ValidationError("tolerance must be > 0");

    Complex term = std::conj(w) * z; // (w̄z)^{B^j}
    const double x = std::abs(term);
    // rel bounds the relative error of term; rounding collects the relative error of the product.
    const double step_mults = 2.0 * std::ceil(std::log2(static_cast<double>(base)));
    double rel = kMulErr * kRound;
    double rounding = 0.0;
    KernelValue kv{{1.0, 0.0}, 0.0, 0};
    while (term != Complex{0.0, 0.0}) {
        kv.value *= 1.0 + term;
        ++kv.terms;
        const double t = std::abs(term);
        rounding += (kMulErr + 1.0) * kRound + t * rel / (1.0 - t);
        // Σ_{i>j} |u|^{B^i} ≤ |u|^{B^{j+1}}/(1−|u|), and |∏(1+v_i) − 1| ≤ e^{Σ|v_i|} − 1.
        const double next = std::pow(t, static_cast<double>(base));
        kv.tail_bound = std::abs(kv.value) * std::expm1(next / (1.0 - x));
        if (kv.tail_bound <= tol) break;
        term = ipow(term, base);
        rel = static_cast<double>(base) * rel + step_mults * kMulErr * kRound;
    }
    kv.tail_bound += std::abs(kv.value) * rounding * 1.01;
    return kv;
}

KernelFn series_kernel(CoeffMatrix c, double tol) {
    return [c = std::move(c), tol](Complex w, Complex z) { return eval_series(c, w, z, tol); };
}

KernelFn product_kernel(std::int64_t base, double tol) {
    return [base, tol](Complex w, Complex z) { return eval_product(base, w, z, tol); };
}

GramMatrix gram_at_points(const KernelFn& kernel, std::span<const Complex> points) {
    for (const auto& p : points) require_in_disc(p, "sample point");
    const auto n = static_cast<Eigen::Index>(points.size());
    GramMatrix g{Eigen::MatrixXcd::Zero(n, n), 0.0};
    std::vector<double> tails(static_cast<std::size_t>(n * n), 0.0);
    const Eigen::Index pairs = n * (n + 1) / 2;

#pragma omp parallel for schedule(dynamic, 4)
    for (Eigen::Index p = 0; p < pairs; ++p) {
        // Unrank p into the upper triangle (i ≤ j).
        Eigen::Index i = 0, rem = p;
        while (rem >= n - i) {
            rem -= n - i;
            ++i;
        }
        const Eigen::Index j = i + rem;
        const auto kv = kernel(points[static_cast<std::size_t>(j)], points[static_cast<std::size_t>(i)]);
        Complex v = kv.value;
        if (i == j) v.imag(0.0);
        g.values(i, j) = v;
        g.values(j, i) = std::conj(v);
        tails[static_cast<std::size_t>(p)] = kv.tail_bound;
    }
    for (double t : tails) g.max_tail_bound = std::max(g.max_tail_bound, t);
    return g;
}

PsdResult psd_check(const Eigen::MatrixXcd& g, double tol) {
    if (g.rows() != g.cols() || g.rows() == 0) throw ValidationError("psd_check: matrix must be square and nonempty");
    const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    if (hermitian_defect(g) > 1e-12 * scale) throw ValidationError("psd_check: matrix is not Hermitian");
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    const double trace = g.trace().real();
    return {lmin, lmin >= -tol * trace};
}

double h2_norm_sq(std::span<const Complex> coeffs, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < std::min(n, coeffs.size()); ++i) s += std::norm(coeffs[i]);
    return s;
}

} // namespace hardyrep
