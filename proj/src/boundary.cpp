#include "hardyrep/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>

#include <omp.h>

#include "hardyrep/error.hpp"

namespace hardyrep {

namespace {

constexpr std::size_t kQuadratureChunks = 64;

void require_in_disc(Complex z, const char* what) {
    if (!(std::abs(z) < 1.0))
        throw DomainError(std::string(what) + " must lie in the open unit disc, got " + format_complex(z));
}

void require_density(const MeasureSpec& measure, const char* op) {
    if (!has_bounded_density(measure))
        throw UnsupportedError(std::string(op) + ": a " + family_name(measure) +
                               " measure has no density; use the Fourier route");
}

} // namespace

BoundaryCoeffs boundary_coeffs(const CoeffMatrix& c, Complex w, std::size_t n) {
    require_in_disc(w, "w");
    BoundaryCoeffs out{w, std::vector<Complex>(n), 0.0};
    const Complex wb = std::conj(w);

    if (const auto* d = std::get_if<DiagonalCoeffs>(&c)) {
        Complex power{1.0, 0.0};
        for (std::size_t k = 0; k < n; ++k) {
            out.coeffs[k] = d->at(static_cast<std::int64_t>(k)) * power;
            power *= wb;
        }
        out.tail_bound = d->tail_l2_bound(static_cast<std::int64_t>(n), std::abs(w));
        return out;
    }

    const auto& dense = std::get<DenseCoeffs>(c);
    const auto s = static_cast<std::size_t>(dense.size());
    std::vector<Complex> powers(s);
    Complex power{1.0, 0.0};
    for (std::size_t m = 0; m < s; ++m) {
        powers[m] = power;
        power *= wb;
    }
    double omitted = 0.0;
    for (std::size_t k = 0; k < s; ++k) {
        Complex a{0.0, 0.0};
        for (std::size_t m = 0; m < s; ++m)
            a += dense.entries(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k)) * powers[m];
        if (k < n) out.coeffs[k] = a;
        else omitted += std::norm(a);
    }
    out.tail_bound = dense.tail_sup > 0.0 ? std::numeric_limits<double>::infinity() : std::sqrt(omitted);
    return out;
}

Complex mu_inner_product(std::span<const std::int64_t> freqs, std::span<const Complex> a,
                         std::span<const Complex> b, const MeasureSpec& measure) {
    if (a.size() != freqs.size() || b.size() != freqs.size())
        throw DimensionError("coefficient and frequency lists differ in length");
    require_valid(measure);

    std::set<std::int64_t> needed;
    for (auto fj : freqs)
        for (auto fk : freqs) needed.insert(fk - fj);
    const std::vector<std::int64_t> diffs(needed.begin(), needed.end());
    std::vector<Complex> hat(diffs.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(diffs.size()); ++i)
        hat[static_cast<std::size_t>(i)] =
            fourier_coefficient_unchecked(measure, diffs[static_cast<std::size_t>(i)]).value;
    const auto lookup = [&](std::int64_t d) {
        const auto it = std::lower_bound(diffs.begin(), diffs.end(), d);
        return hat[static_cast<std::size_t>(it - diffs.begin())];
    };

    Complex sum{0.0, 0.0};
    for (std::size_t j = 0; j < freqs.size(); ++j)
        for (std::size_t k = 0; k < freqs.size(); ++k) sum += a[j] * std::conj(b[k]) * lookup(freqs[k] - freqs[j]);
    return sum;
}

double mu_norm_sq(std::span<const Complex> a, const MeasureSpec& measure) {
    std::vector<std::int64_t> freqs(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) freqs[i] = static_cast<std::int64_t>(i);
    return mu_inner_product(freqs, a, a, measure).real();
}

std::size_t default_quadrature_nodes(std::size_t n, const MeasureSpec& measure) {
    const auto top = (n == 0 ? 0 : n - 1) + static_cast<std::size_t>(density_top_frequency(measure));
    return std::max<std::size_t>(16, 4 * top);
}

Complex boundary_integral_quadrature(const BoundaryCoeffs& kw, const BoundaryCoeffs& kz,
                                     const MeasureSpec& measure, std::size_t nodes) {
    require_density(measure, "quadrature");
    require_valid(measure);
    if (nodes == 0) throw ValidationError("quadrature needs at least one node");

    // roots[r] = e^{2πi r/Q}
    std::vector<Complex> roots(nodes);
    for (std::size_t r = 0; r < nodes; ++r)
        roots[r] = std::conj(unit_phase(static_cast<__int128>(r), static_cast<__int128>(nodes)));

    const auto boundary_value = [&](const std::vector<Complex>& a, std::size_t q) {
        Complex v{0.0, 0.0};
        std::size_t idx = 0; // n·q mod Q
        for (std::size_t n = 0; n < a.size(); ++n) {
            v += a[n] * roots[idx];
            idx = (idx + q) % nodes;
        }
        return v;
    };

    const std::size_t chunks = std::min(kQuadratureChunks, nodes);
    std::vector<Complex> partial(chunks);
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * nodes / chunks;
        const std::size_t hi = (static_cast<std::size_t>(c) + 1) * nodes / chunks;
        Complex s{0.0, 0.0};
        for (std::size_t q = lo; q < hi; ++q) {
            const double x = static_cast<double>(q) / static_cast<double>(nodes);
            s += boundary_value(kw.coeffs, q) * std::conj(boundary_value(kz.coeffs, q)) * density_eval(measure, x);
        }
        partial[static_cast<std::size_t>(c)] = s;
    }
    Complex total{0.0, 0.0};
    for (const auto& p : partial) total += p;
    return total / static_cast<double>(nodes);
}

double reproduce_residual_quadrature(const CoeffMatrix& c, const MeasureSpec& measure, Complex w, Complex z,
                                     std::size_t n, std::size_t nodes) {
    require_density(measure, "reproduce_residual_quadrature");
    require_in_disc(w, "w");
    require_in_disc(z, "z");
    if (nodes == 0) nodes = default_quadrature_nodes(n, measure);
    const auto kw = boundary_coeffs(c, w, n);
    const auto kz = boundary_coeffs(c, z, n);
    const auto k = eval_series(c, w, z, 1e-15);
    return std::abs(k.value - boundary_integral_quadrature(kw, kz, measure, nodes));
}

Complex boundary_integral_fourier(const CoeffMatrix& c, const MomentMatrix& m, Complex w, Complex z) {
    require_in_disc(w, "w");
    require_in_disc(z, "z");
    const auto n = m.size();
    const auto un = static_cast<std::size_t>(n);

    std::vector<Complex> wv(un), zv(un);
    Complex pw{1.0, 0.0}, pz{1.0, 0.0};
    for (std::size_t i = 0; i < un; ++i) {
        wv[i] = pw;
        zv[i] = pz;
        pw *= std::conj(w);
        pz *= z;
    }

    if (const auto* d = std::get_if<DiagonalCoeffs>(&c)) {
        const auto diag = d->window(n);
        std::vector<Complex> rows(un);
#pragma omp parallel for schedule(static)
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto ui = static_cast<std::size_t>(i);
            if (diag[ui] == 0.0) continue;
            Complex s{0.0, 0.0};
            for (Eigen::Index j = 0; j < n; ++j) {
                const auto uj = static_cast<std::size_t>(j);
                if (diag[uj] != 0.0) s += m(i, j) * diag[uj] * zv[uj];
            }
            rows[ui] = diag[ui] * wv[ui] * s;
        }
        Complex total{0.0, 0.0};
        for (const auto& r : rows) total += r;
        return total;
    }

    if (!has_bounded_density(m.measure()))
        throw UnsupportedError("non-diagonal C is only supported for measures with bounded density; "
                               "a " + family_name(m.measure()) + " measure gives an unbounded M");
    const Eigen::MatrixXcd cm = materialize(c, n);
    const Eigen::MatrixXcd cmc = cm * m.dense() * cm;
    const Eigen::Map<const Eigen::VectorXcd> wvec(wv.data(), n), zvec(zv.data(), n);
    return (wvec.transpose() * cmc * zvec)(0, 0);
}

double reproduce_residual_fourier(const CoeffMatrix& c, const MeasureSpec& measure, Complex w, Complex z,
                                  std::size_t n) {
    require_in_disc(w, "w");
    require_in_disc(z, "z");
    if (n == 0) throw ValidationError("window size must be ≥ 1");
    const auto m = build_moment_matrix(measure, static_cast<Eigen::Index>(n));
    const auto k = eval_series(c, w, z, 1e-15);
    return std::abs(k.value - boundary_integral_fourier(c, m, w, z));
}

double norm_preservation_residual(std::span<const std::int64_t> freqs, std::span<const Complex> a,
                                  const MeasureSpec& measure) {
    if (std::set<std::int64_t>(freqs.begin(), freqs.end()).size() != freqs.size())
        throw ValidationError("frequencies must be distinct");
    const double mu_norm = mu_inner_product(freqs, a, a, measure).real();
    double lebesgue_norm = 0.0;
    for (const auto& x : a) lebesgue_norm += std::norm(x);
    return std::abs(mu_norm - lebesgue_norm);
}

ResidualReport transpose_identity_residual(const CoeffMatrix& c, const MeasureSpec& measure, Eigen::Index n,
                                           NormKind norm, std::optional<double> tol) {
    require_valid(measure);
    if (!has_bounded_density(measure))
        throw UnsupportedError("transpose identity requires dµ/dλ ∈ L∞; a " + family_name(measure) +
                               " measure has no bounded density");
    const auto proj = projection_residual(c, n, NormKind::EntrywiseMax, 1e-10);
    if (!proj.pass)
        throw PreconditionError("transpose identity requires C to be a projection on the window (‖C − C²‖ = " +
                                format_real(proj.residual) + ")");
    const Eigen::MatrixXcd ct = materialize(c, n).transpose();
    const Eigen::MatrixXcd mm = build_moment_matrix(measure, n).dense();
    const Eigen::MatrixXcd r = ct - ct * mm * ct;
    auto rep = matrix_residual(r, norm, tol.value_or(default_tolerance(measure)));
    rep.tail_note = std::string(kWindowNote) + "; ‖Cᵀ − CᵀMCᵀ‖ = ‖C − CNC‖ with N = Mᵀ";
    return rep;
}

} // namespace hardyrep
