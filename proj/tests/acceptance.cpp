// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include <Eigen/QR>

#include "hardyrep/boundary.hpp"
#include "hardyrep/builder.hpp"
#include "hardyrep/gamma.hpp"
#include "hardyrep/kernel.hpp"
#include "hardyrep/momenteq.hpp"
#include "hardyrep/rng.hpp"

using namespace hardyrep;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

const GammaSet& gamma4_level5() {
    static const GammaSet g = generate_digit_set(4, {0, 1}, 5);
    return g;
}

const MeasureSpec& built_measure() {
    static const MeasureSpec m = build_ac_representing_measure(gamma4_level5(), 100, 0.5, 0.5);
    return m;
}

const CoeffMatrix kK4 = DiagonalCoeffs::digit_indicator(4, {0, 1});

Eigen::MatrixXcd random_vectors(SplitMix64& rng, int n, int k) {
    Eigen::MatrixXcd a(n, k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) a(i, j) = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    return a;
}

Eigen::MatrixXcd random_projection(SplitMix64& rng, int n, int rank) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(random_vectors(rng, n, rank));
    const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, rank);
    return q * q.adjoint();
}

void criterion1(Verdict& v) {
    const auto t0 = std::chrono::steady_clock::now();
    // Level 7 reaches 4^7 > 4096, so 𝒟(Γ₄) ∩ [−4096, 4096] is complete.
    const auto res = fourier_vanishing_check(mu4(), generate_digit_set(4, {0, 1}, 7), 4096, 1e-10);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    v.detail << "max|mu4^(d)| = " << res.max_abs << " over " << res.offsets_checked << " offsets, " << secs << " s";
    v.require(res.max_abs <= 1e-10, "max ≤ 1e-10");
    v.require(secs <= 10.0, "runtime ≤ 10 s");
}

void criterion2(Verdict& v) {
    const auto r = cmc_residual(kK4, build_moment_matrix(mu4(), 64));
    SplitMix64 rng(2);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const Complex w = rng.disc(0.8), z = rng.disc(0.8);
        worst = std::max(worst, reproduce_residual_fourier(kK4, mu4(), w, z, 64));
    }
    v.detail << "cmc = " << r.residual << ", reproduce(fourier) max = " << worst;
    v.require(r.residual <= 1e-9, "cmc ≤ 1e-9");
    v.require(worst <= 1e-8, "reproduce ≤ 1e-8");
}

void criterion3(Verdict& v) {
    const auto g3 = generate_digit_set(3, {0, 1}, 9);
    const auto cov = check_coverage(g3, 1000);
    const auto built = fourier_vanishing_check(built_measure(), g3, 100, 1e-10);
    const auto leb = fourier_vanishing_check(Lebesgue{}, g3, 100, 1e-10);
    v.detail << "coverage complete = " << cov.complete << ", built vs Gamma3 witness = "
             << (built.worst_offset ? std::to_string(*built.worst_offset) : "none") << " (|mu^| = " << built.max_abs
             << "), lebesgue residual = " << leb.max_abs;
    v.require(cov.complete, "coverage complete");
    v.require(!built.pass && built.worst_offset.has_value(), "built measure fails with witness");
    v.require(leb.pass && leb.max_abs == 0.0, "lebesgue exactly 0");
}

void criterion4(Verdict& v) {
    const int n = 32;
    const auto leb = build_moment_matrix(Lebesgue{}, n);
    SplitMix64 rng(4);
    double worst_proj = 0.0;
    for (int i = 0; i < 20; ++i) {
        std::vector<std::int64_t> e;
        for (std::int64_t k = 0; k < n; ++k)
            if (rng.uniform() < 0.5) e.push_back(k);
        worst_proj = std::max(worst_proj, cmc_residual(DiagonalCoeffs::indicator(GammaSet(e)), leb).residual);
    }
    for (int i = 0; i < 5; ++i) {
        const int rank = 1 + static_cast<int>(rng.next() % 16);
        worst_proj = std::max(worst_proj, cmc_residual(make_dense(random_projection(rng, n, rank)), leb).residual);
    }
    double best_nonproj = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 5; ++i) {
        const auto a = random_vectors(rng, n, 8);
        const Eigen::MatrixXcd psd = a * a.adjoint() / 8.0;
        best_nonproj = std::min(best_nonproj, cmc_residual(make_dense(psd), leb).residual);
    }
    v.detail << "projections max = " << worst_proj << ", non-projections min = " << best_nonproj;
    v.require(worst_proj <= 1e-12, "projections ≤ 1e-12");
    v.require(best_nonproj >= 1e-3, "non-projections ≥ 1e-3");
}

void criterion5(Verdict& v) {
    const auto& mu = built_measure();
    const bool valid = validate(mu).ok();
    const auto cert = certify(mu, gamma4_level5(), 64);
    SplitMix64 rng(5);
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
        const Complex w = rng.disc(0.8), z = rng.disc(0.8);
        worst = std::max(worst, reproduce_residual_quadrature(kK4, mu, w, z, 64, 1024));
    }
    v.detail << "valid = " << valid << ", certificate residual = " << cert.residual
             << ", reproduce(quadrature) max = " << worst;
    v.require(valid, "validates");
    v.require(cert.pass && cert.residual <= 1e-12, "certifies ≤ 1e-12");
    v.require(worst <= 1e-8, "reproduce ≤ 1e-8");
}

void criterion6(Verdict& v) {
    const auto bergman = DiagonalCoeffs::polynomial(1);
    const auto cert = diag_nonexistence_certificate(bergman, 16, 1.0);
    const double leb = reproduce_residual_fourier(bergman, Lebesgue{}, 0.5, 0.5, 64);
    const double built = reproduce_residual_fourier(bergman, built_measure(), 0.5, 0.5, 64);
    v.detail << "violations = " << cert.size() << ", reproduce vs lebesgue = " << leb << ", vs built = " << built;
    v.require(!cert.empty(), "certificate nonempty");
    v.require(leb >= 0.1 && built >= 0.1, "residuals ≥ 0.1");
}

void criterion7(Verdict& v) {
    SplitMix64 rng(7);
    double worst_excess = -std::numeric_limits<double>::infinity();
    for (std::int64_t base : {3, 4}) {
        const CoeffMatrix c = DiagonalCoeffs::digit_indicator(base, {0, 1});
        for (int i = 0; i < 100; ++i) {
            const Complex w = rng.disc(0.9), z = rng.disc(0.9);
            const auto p = eval_product(base, w, z, 1e-12);
            const auto s = eval_series(c, w, z, 1e-12);
            worst_excess = std::max(worst_excess, std::abs(p.value - s.value) - p.tail_bound - s.tail_bound);
        }
    }
    double szego_excess = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100; ++i) {
        const Complex w = rng.disc(0.9), z = rng.disc(0.9);
        const auto kv = eval_series(DiagonalCoeffs::polynomial(0), w, z, 1e-12);
        szego_excess = std::max(szego_excess, std::abs(kv.value - 1.0 / (1.0 - std::conj(w) * z)) - kv.tail_bound);
    }
    std::vector<Complex> pts;
    for (int i = 0; i < 20; ++i) pts.push_back(rng.disc(0.9));
    bool psd = true;
    double min_eig = std::numeric_limits<double>::infinity();
    for (const auto& k : {product_kernel(3, 1e-14), product_kernel(4, 1e-14),
                          series_kernel(DiagonalCoeffs::polynomial(0), 1e-14)}) {
        const auto r = psd_check(gram_at_points(k, pts).values, 1e-10);
        psd = psd && r.pass;
        min_eig = std::min(min_eig, r.min_eigenvalue);
    }
    v.detail << "product-series excess = " << worst_excess << ", szego excess = " << szego_excess
             << ", gram min eigenvalue = " << min_eig;
    v.require(worst_excess <= 0.0, "product = series within tails");
    v.require(szego_excess <= 0.0, "szego within tail");
    v.require(psd, "gram PSD");
}

void criterion8(Verdict& v) {
    const auto& freqs = gamma4_level5().elements();
    SplitMix64 rng(8);
    double worst = 0.0;
    for (const auto& mu : {mu4(), built_measure()}) {
        for (int i = 0; i < 20; ++i) {
            std::vector<Complex> a(freqs.size());
            for (auto& x : a) x = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
            worst = std::max(worst, norm_preservation_residual(freqs, a, mu));
        }
    }
    const std::vector<std::int64_t> f13{1, 3};
    const std::vector<Complex> ones(2, 1.0);
    const double counter = norm_preservation_residual(f13, ones, TrigDensity{{{2, 0.4}}});
    const auto tr = transpose_identity_residual(kK4, built_measure(), 32);
    v.detail << "norm residual max = " << worst << ", counterexample = " << counter
             << ", transpose = " << tr.residual;
    v.require(worst <= 1e-8, "norms ≤ 1e-8");
    v.require(std::abs(counter - 0.4) <= 1e-12, "counterexample 0.4");
    v.require(tr.residual <= 1e-9, "transpose ≤ 1e-9");
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria{
        {"1 gamma4 spectral orthogonality", criterion1},
        {"2 mu4 represents K4", criterion2},
        {"3 K3 admits only lebesgue", criterion3},
        {"4 lebesgue iff projection", criterion4},
        {"5 absolutely continuous constructor", criterion5},
        {"6 bergman obstruction", criterion6},
        {"7 kernel analytics", criterion7},
        {"8 norm preservation", criterion8},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Verdict v;
        try {
            run(v);
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail << " [exception: " << e.what() << "]";
        }
        std::printf("%s  %-38s %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.str().c_str());
        failures += v.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
