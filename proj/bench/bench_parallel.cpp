// Serial reference vs OpenMP kernels. Prints one line per workload:
//   name  threads  serial_ms  parallel_ms  speedup
// Usage: bench_parallel [repeats=3]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include <omp.h>

#include "hardyrep/boundary.hpp"
#include "hardyrep/builder.hpp"
#include "hardyrep/gamma.hpp"
#include "hardyrep/kernel.hpp"
#include "hardyrep/momenteq.hpp"
#include "hardyrep/reference.hpp"
#include "hardyrep/rng.hpp"

using namespace hardyrep;

namespace {

// Best of `repeats` wall-clock runs, in milliseconds.
double best_ms(int repeats, const std::function<void()>& f) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

volatile double g_sink = 0.0;

void row(const char* name, int repeats, const std::function<double()>& serial_fn,
         const std::function<double()>& parallel_fn) {
    const double s = best_ms(repeats, [&] { g_sink = g_sink + serial_fn(); });
    const double p = best_ms(repeats, [&] { g_sink = g_sink + parallel_fn(); });
    std::printf("%-22s %7d %12.3f %12.3f %8.2fx\n", name, omp_get_max_threads(), s, p, s / p);
}

} // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
    std::printf("%-22s %7s %12s %12s %9s\n", "workload", "threads", "serial_ms", "parallel_ms", "speedup");

    const auto g8 = generate_digit_set(4, {0, 1}, 8);
    row("difference_set", repeats,
        [&] { return double(serial::difference_set(g8, 1 << 16).size()); },
        [&] { return double(difference_set(g8, 1 << 16).size()); });

    row("moment_coefficients", repeats,
        [&] { return serial::moment_coefficients(mu4(), 2048).back().real(); },
        [&] { return build_moment_matrix(mu4(), 2048).coefficient(2047).real(); });

    SplitMix64 rng(1);
    std::vector<Complex> pts;
    for (int i = 0; i < 120; ++i) pts.push_back(rng.disc(0.9));
    const auto k4 = product_kernel(4, 1e-14);
    row("gram_at_points", repeats,
        [&] { return serial::gram_at_points(k4, pts)(0, 0).real(); },
        [&] { return gram_at_points(k4, pts).values(0, 0).real(); });

    const auto g5 = generate_digit_set(4, {0, 1}, 5);
    const auto built = build_ac_representing_measure(g5, 100, 0.5, 0.5);
    const CoeffMatrix c4 = DiagonalCoeffs::digit_indicator(4, {0, 1});
    const auto kw = boundary_coeffs(c4, Complex(0.3, 0.1), 256);
    const auto kz = boundary_coeffs(c4, Complex(-0.2, 0.6), 256);
    row("boundary_quadrature", repeats,
        [&] { return serial::boundary_integral_quadrature(kw, kz, built, 1 << 14).real(); },
        [&] { return boundary_integral_quadrature(kw, kz, built, 1 << 14).real(); });

    const auto g7 = generate_digit_set(4, {0, 1}, 7);
    row("vanishing_check", repeats,
        [&] { return serial::vanishing_max(mu3(), g7, 1 << 14); },
        [&] { return fourier_vanishing_check(mu3(), g7, 1 << 14, 1e-8).max_abs; });
    return 0;
}
