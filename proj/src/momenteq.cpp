#include "hardyrep/momenteq.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <omp.h>

#include "hardyrep/error.hpp"

namespace hardyrep {

MomentMatrix::MomentMatrix(MeasureSpec measure, Eigen::Index n, bool transpose,
                           std::vector<Complex> coeffs, double max_error)
    : measure_(std::move(measure)), n_(n), transpose_(transpose), coeffs_(std::move(coeffs)),
      max_error_(max_error) {
    if (coeffs_.size() != static_cast<std::size_t>(2 * n_ - 1))
        throw DimensionError("moment matrix needs 2N−1 coefficients");
}

Eigen::MatrixXcd MomentMatrix::dense() const {
    Eigen::MatrixXcd out(n_, n_);
#pragma omp parallel for
    for (Eigen::Index m = 0; m < n_; ++m)
        for (Eigen::Index n = 0; n < n_; ++n) out(m, n) = (*this)(m, n);
    return out;
}

MomentMatrix build_moment_matrix(const MeasureSpec& measure, Eigen::Index n, bool transpose) {
    if (n < 1) throw ValidationError("moment matrix size must be ≥ 1");
    require_valid(measure);
    const auto count = static_cast<std::size_t>(2 * n - 1);
    std::vector<Complex> coeffs(count);
    std::vector<double> errors(count);
    // Real measures satisfy µ̂(−k) = conj µ̂(k); mirroring keeps M exactly Hermitian.
    const auto mid = static_cast<std::size_t>(n - 1);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t k = 0; k < n; ++k) {
        const auto fv = fourier_coefficient_unchecked(measure, k);
        const auto up = mid + static_cast<std::size_t>(k), down = mid - static_cast<std::size_t>(k);
        coeffs[up] = k == 0 ? Complex(fv.value.real(), 0.0) : fv.value;
        coeffs[down] = std::conj(coeffs[up]);
        errors[up] = errors[down] = fv.error;
    }
    const double max_error = *std::max_element(errors.begin(), errors.end());
    return MomentMatrix(measure, n, transpose, std::move(coeffs), max_error);
}

std::string norm_name(NormKind norm) { return norm == NormKind::EntrywiseMax ? "entrywise-max" : "frobenius"; }

NormKind parse_norm(const std::string& name) {
    if (name == "max" || name == "entrywise-max") return NormKind::EntrywiseMax;
    if (name == "frobenius" || name == "fro") return NormKind::Frobenius;
    throw ValidationError("unknown norm '" + name + "' (expected max or frobenius)");
}

namespace {

struct RowStat {
    double max = 0.0;
    double sum_sq = 0.0;
    Eigen::Index arg = 0;
};

// Reduces per-row statistics in row order, so the result does not depend on scheduling.
ResidualReport reduce_rows(const std::vector<RowStat>& rows, NormKind norm, Eigen::Index n, double tol) {
    ResidualReport rep;
    rep.norm = norm;
    rep.n = n;
    rep.tolerance = tol;
    double best = -1.0, sum_sq = 0.0;
    for (std::size_t m = 0; m < rows.size(); ++m) {
        if (rows[m].max > best) {
            best = rows[m].max;
            rep.worst_entry = {static_cast<Eigen::Index>(m), rows[m].arg};
        }
        sum_sq += rows[m].sum_sq;
    }
    rep.residual = norm == NormKind::EntrywiseMax ? std::max(best, 0.0) : std::sqrt(sum_sq);
    rep.pass = rep.residual <= tol;
    return rep;
}

} // namespace

ResidualReport matrix_residual(const Eigen::MatrixXcd& r, NormKind norm, double tol) {
    std::vector<RowStat> rows(static_cast<std::size_t>(r.rows()));
    for (Eigen::Index m = 0; m < r.rows(); ++m) {
        auto& s = rows[static_cast<std::size_t>(m)];
        for (Eigen::Index n = 0; n < r.cols(); ++n) {
            const double a = std::abs(r(m, n));
            if (a > s.max) {
                s.max = a;
                s.arg = n;
            }
            s.sum_sq += a * a;
        }
    }
    return reduce_rows(rows, norm, r.rows(), tol);
}

namespace {

std::string oracle_note(const MomentMatrix& m) {
    if (m.max_oracle_error() == 0.0) return "";
    return "; Fourier oracle error ≤ " + format_real(m.max_oracle_error()) + " per entry";
}

} // namespace

ResidualReport cmc_residual(const CoeffMatrix& c, const MomentMatrix& m, NormKind norm,
                            std::optional<double> tol) {
    const double t = tol.value_or(default_tolerance(m.measure()));
    const auto n = m.size();

    if (const auto* d = std::get_if<DiagonalCoeffs>(&c)) {
        const auto diag = d->window(n);
        std::vector<RowStat> rows(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
        for (Eigen::Index i = 0; i < n; ++i) {
            const double ci = diag[static_cast<std::size_t>(i)];
            auto& s = rows[static_cast<std::size_t>(i)];
            for (Eigen::Index j = 0; j < n; ++j) {
                const double cj = diag[static_cast<std::size_t>(j)];
                // (CMC)_ij = c_ii M_ij c_jj
                const Complex lhs = i == j ? Complex{ci, 0.0} : Complex{0.0, 0.0};
                const double a = std::abs(lhs - ci * m(i, j) * cj);
                if (a > s.max) {
                    s.max = a;
                    s.arg = j;
                }
                s.sum_sq += a * a;
            }
        }
        auto rep = reduce_rows(rows, norm, n, t);
        rep.tail_note = std::string(kWindowNote) + "; diagonal closed form c_mm·µ̂(n−m)·c_nn, exact on the window" +
                        oracle_note(m);
        return rep;
    }

    const auto& dense = std::get<DenseCoeffs>(c);
    if (dense.size() != n)
        throw DimensionError("coefficient matrix is " + std::to_string(dense.size()) + "×" +
                             std::to_string(dense.size()) + " but the moment matrix is " + std::to_string(n) +
                             "×" + std::to_string(n));
    if (!has_bounded_density(m.measure()))
        throw UnsupportedError("C = CMC for a non-diagonal C is only decided for measures with bounded density; "
                               "a " + family_name(m.measure()) + " measure gives an unbounded M");
    const Eigen::MatrixXcd mm = m.dense();
    const Eigen::MatrixXcd r = dense.entries - dense.entries * mm * dense.entries;
    auto rep = matrix_residual(r, norm, t);
    rep.tail_note = std::string(kWindowNote) + "; dense triple product" +
                    (dense.tail_sup > 0.0 ? "; entries outside the window are not controlled" : "") + oracle_note(m);
    return rep;
}

ResidualReport projection_residual(const CoeffMatrix& c, Eigen::Index n, NormKind norm, double tol) {
    if (n < 1) throw ValidationError("window size must be ≥ 1");
    if (const auto* d = std::get_if<DiagonalCoeffs>(&c)) {
        const auto diag = d->window(n);
        std::vector<RowStat> rows(static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i) {
            const double ci = diag[static_cast<std::size_t>(i)];
            const double a = std::abs(ci - ci * ci);
            rows[static_cast<std::size_t>(i)] = {a, a * a, i};
        }
        auto rep = reduce_rows(rows, norm, n, tol);
        rep.tail_note = std::string(kWindowNote) + "; diagonal entries c − c²";
        return rep;
    }
    const auto& dense = std::get<DenseCoeffs>(c);
    if (dense.size() != n)
        throw DimensionError("projection window " + std::to_string(n) + " does not match the " +
                             std::to_string(dense.size()) + "×" + std::to_string(dense.size()) + " matrix");
    const Eigen::MatrixXcd r = dense.entries - dense.entries * dense.entries;
    auto rep = matrix_residual(r, norm, tol);
    rep.tail_note = std::string(kWindowNote) + "; dense C − C²";
    return rep;
}

VanishingResult fourier_vanishing_check(const MeasureSpec& measure, const GammaSet& gamma, std::int64_t bound,
                                        double tol) {
    require_valid(measure);
    if (!is_probability(measure, std::max(tol, 1e-12)))
        throw PreconditionError("vanishing check requires a probability measure (µ̂(0) = " +
                                format_real(total_mass(measure)) + ")");
    std::vector<std::int64_t> offsets;
    for (auto d : difference_set(gamma, bound))
        if (d > 0) offsets.push_back(d);

    std::vector<double> mags(offsets.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(offsets.size()); ++i)
        mags[static_cast<std::size_t>(i)] =
            std::abs(fourier_coefficient_unchecked(measure, offsets[static_cast<std::size_t>(i)]).value);

    VanishingResult res;
    res.offsets_checked = offsets.size();
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        if (mags[i] > res.max_abs) {
            res.max_abs = mags[i];
            res.worst_offset = offsets[i];
        }
    }
    res.pass = res.max_abs <= tol;
    return res;
}

std::vector<std::int64_t> diag_nonexistence_certificate(const DiagonalCoeffs& c, std::int64_t n, double total_mass,
                                                        double rel_tol) {
    std::vector<std::int64_t> bad;
    for (std::int64_t m = 0; m < n; ++m) {
        const double cm = c.at(m);
        const double rhs = total_mass * cm * cm;
        if (std::abs(cm - rhs) > rel_tol * std::max({1.0, cm, rhs})) bad.push_back(m);
    }
    return bad;
}

} // namespace hardyrep
