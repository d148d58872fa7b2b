#include "hardyrep/reference.hpp"

#include <cmath>
#include <set>

#include "hardyrep/error.hpp"

namespace hardyrep::serial {

std::vector<Complex> moment_coefficients(const MeasureSpec& measure, Eigen::Index n) {
    require_valid(measure);
    std::vector<Complex> out(static_cast<std::size_t>(2 * n - 1));
    const auto mid = static_cast<std::size_t>(n - 1);
    for (std::int64_t k = 0; k < n; ++k) {
        const auto v = fourier_coefficient_unchecked(measure, k).value;
        out[mid + static_cast<std::size_t>(k)] = k == 0 ? Complex(v.real(), 0.0) : v;
        out[mid - static_cast<std::size_t>(k)] = std::conj(out[mid + static_cast<std::size_t>(k)]);
    }
    return out;
}

std::vector<std::int64_t> difference_set(const GammaSet& gamma, std::int64_t bound) {
    std::set<std::int64_t> diffs;
    for (auto x : gamma.elements())
        for (auto y : gamma.elements())
            if (x - y >= -bound && x - y <= bound) diffs.insert(x - y);
    return {diffs.begin(), diffs.end()};
}

Eigen::MatrixXcd gram_at_points(const KernelFn& kernel, std::span<const Complex> points) {
    const auto n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXcd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            g(i, j) = kernel(points[static_cast<std::size_t>(j)], points[static_cast<std::size_t>(i)]).value;
    return g;
}

Complex boundary_integral_quadrature(const BoundaryCoeffs& kw, const BoundaryCoeffs& kz,
                                     const MeasureSpec& measure, std::size_t nodes) {
    Complex total{0.0, 0.0};
    for (std::size_t q = 0; q < nodes; ++q) {
        const double x = static_cast<double>(q) / static_cast<double>(nodes);
        Complex fw{0.0, 0.0}, fz{0.0, 0.0};
        for (std::size_t n = 0; n < kw.coeffs.size(); ++n)
            fw += kw.coeffs[n] * std::conj(unit_phase(static_cast<__int128>(n * q), static_cast<__int128>(nodes)));
        for (std::size_t n = 0; n < kz.coeffs.size(); ++n)
            fz += kz.coeffs[n] * std::conj(unit_phase(static_cast<__int128>(n * q), static_cast<__int128>(nodes)));
        total += fw * std::conj(fz) * density_eval(measure, x);
    }
    return total / static_cast<double>(nodes);
}

Eigen::MatrixXcd triple_product(const Eigen::MatrixXcd& c, const Eigen::MatrixXcd& m) {
    const auto n = c.rows();
    if (c.cols() != n || m.rows() != n || m.cols() != n) throw DimensionError("triple_product: size mismatch");
    Eigen::MatrixXcd cm = Eigen::MatrixXcd::Zero(n, n), out = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < n; ++k)
            for (Eigen::Index j = 0; j < n; ++j) cm(i, j) += c(i, k) * m(k, j);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < n; ++k)
            for (Eigen::Index j = 0; j < n; ++j) out(i, j) += cm(i, k) * c(k, j);
    return out;
}

double vanishing_max(const MeasureSpec& measure, const GammaSet& gamma, std::int64_t bound) {
    require_valid(measure);
    double best = 0.0;
    for (auto d : serial::difference_set(gamma, bound))
        if (d > 0) best = std::max(best, std::abs(fourier_coefficient_unchecked(measure, d).value));
    return best;
}

} // namespace hardyrep::serial
