#include "hardyrep/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "hardyrep/error.hpp"

namespace hardyrep {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_trig(const TrigDensity& t, ValidationReport& rep) {
    double l1 = 0.0;
    for (const auto& [n, b] : t.b) {
        if (n < 1) rep.violations.push_back("frequency " + std::to_string(n) + " must be ≥ 1");
        if (!std::isfinite(b)) rep.violations.push_back("coefficient b_" + std::to_string(n) + " is not finite");
        l1 += std::abs(b);
    }
    if (!(l1 < 1.0)) rep.violations.push_back("Σ|b_n| ≥ 1");
}

void check_ifs(const IfsMeasure& f, ValidationReport& rep) {
    if (f.scale < 2) rep.violations.push_back("scale must be ≥ 2");
    if (f.digits.empty()) rep.violations.push_back("digit list is empty");
    std::set<std::int64_t> seen;
    for (auto a : f.digits) {
        if (f.scale >= 2 && (a < 0 || a >= f.scale))
            rep.violations.push_back("digit " + std::to_string(a) + " outside [0, scale)");
        if (!seen.insert(a).second) rep.violations.push_back("digits not distinct");
    }
    if (f.weights.size() != f.digits.size()) {
        rep.violations.push_back("weights and digits differ in length");
        return;
    }
    double sum = 0.0;
    for (double p : f.weights) {
        if (!(p > 0.0) || !std::isfinite(p)) rep.violations.push_back("weights must be positive");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) rep.violations.push_back("weights sum ≠ 1");
}

void check_atomic(const AtomicMeasure& a, ValidationReport& rep) {
    if (a.points.empty()) rep.violations.push_back("no atoms");
    if (a.points.size() != a.weights.size()) {
        rep.violations.push_back("points and weights differ in length");
        return;
    }
    std::set<double> seen;
    for (double x : a.points) {
        if (!(x >= 0.0 && x < 1.0)) rep.violations.push_back("point outside [0,1)");
        if (!seen.insert(x).second) rep.violations.push_back("points not distinct");
    }
    for (double w : a.weights)
        if (!(w > 0.0) || !std::isfinite(w)) rep.violations.push_back("weights must be positive");
}

// ∏_{j≥1} Σ_i p_i e^{−2πik a_i/R^j}, cut once 2π|k|·max a/R^d < ε.
FourierValue ifs_coefficient(const IfsMeasure& f, std::int64_t k) {
    if (k == 0) return {{1.0, 0.0}, 0.0};
    const std::int64_t amax = *std::max_element(f.digits.begin(), f.digits.end());
    if (amax == 0) return {{1.0, 0.0}, 0.0};

    const long double spread0 = kTwoPi * std::abs(static_cast<long double>(k)) * amax;
    const long double r = static_cast<long double>(f.scale);
    constexpr __int128 kPowLimit = (static_cast<__int128>(1) << 125) / 64;

    Complex prod{1.0, 0.0};
    __int128 pow = 1;
    bool exact_pow = true;
    long double pow_ld = 1.0L;
    int depth = 0;
    long double spread = spread0;
    while (spread >= kIfsEpsilon) {
        ++depth;
        if (exact_pow && pow > kPowLimit / f.scale) exact_pow = false;
        if (exact_pow) pow *= f.scale;
        pow_ld *= r;
        Complex factor{0.0, 0.0};
        for (std::size_t i = 0; i < f.digits.size(); ++i) {
            const __int128 num = static_cast<__int128>(k) * f.digits[i];
            const Complex e = exact_pow
                ? unit_phase(num, pow)
                : unit_phase(static_cast<double>(std::fmod(static_cast<long double>(num) / pow_ld, 1.0L)));
            factor += f.weights[i] * e;
        }
        prod *= factor;
        if (prod == Complex{0.0, 0.0}) return {prod, 0.0};
        spread = spread0 / pow_ld;
    }
    const double tail = static_cast<double>(spread0 / (pow_ld * (r - 1.0L)));
    const double rounding = 4.0 * kEps * (depth + 1) * static_cast<double>(f.digits.size());
    return {prod, tail + rounding};
}

FourierValue atomic_coefficient(const AtomicMeasure& a, std::int64_t k) {
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        const long double turns = std::fmod(static_cast<long double>(k) * a.points[i], 1.0L);
        sum += a.weights[i] * unit_phase(static_cast<double>(turns));
    }
    return {sum, 0.0};
}

} // namespace

MeasureSpec mu4() { return IfsMeasure{4, {0, 2}, {0.5, 0.5}}; }
MeasureSpec mu3() { return IfsMeasure{3, {0, 2}, {0.5, 0.5}}; }

ValidationReport validate(const MeasureSpec& spec) {
    ValidationReport rep;
    std::visit(overloaded{
                   [](const Lebesgue&) {},
                   [&](const TrigDensity& t) { check_trig(t, rep); },
                   [&](const IfsMeasure& f) { check_ifs(f, rep); },
                   [&](const AtomicMeasure& a) { check_atomic(a, rep); },
               },
               spec);
    // Finitely supported b with Σ|b_n| < 1 gives 0 < density < 2.
    rep.bounded_density = has_bounded_density(spec) && rep.ok();
    return rep;
}

void require_valid(const MeasureSpec& spec) {
    const auto rep = validate(spec);
    if (rep.ok()) return;
    std::ostringstream os;
    os << "invalid " << family_name(spec) << " measure:";
    for (const auto& v : rep.violations) os << ' ' << v << ';';
    throw ValidationError(os.str());
}

FourierValue fourier_coefficient_unchecked(const MeasureSpec& spec, std::int64_t k) {
    if (k == std::numeric_limits<std::int64_t>::min())
        throw DomainError("frequency outside the supported integer range");
    return std::visit(overloaded{
                          [&](const Lebesgue&) -> FourierValue {
                              return {{k == 0 ? 1.0 : 0.0, 0.0}, 0.0};
                          },
                          [&](const TrigDensity& t) -> FourierValue {
                              if (k == 0) return {{1.0, 0.0}, 0.0};
                              const auto it = t.b.find(k < 0 ? -k : k);
                              return {{it == t.b.end() ? 0.0 : 0.5 * it->second, 0.0}, 0.0};
                          },
                          [&](const IfsMeasure& f) { return ifs_coefficient(f, k); },
                          [&](const AtomicMeasure& a) { return atomic_coefficient(a, k); },
                      },
                      spec);
}

FourierValue fourier_coefficient(const MeasureSpec& spec, std::int64_t k) {
    require_valid(spec);
    return fourier_coefficient_unchecked(spec, k);
}

double density_eval(const MeasureSpec& spec, double theta) {
    if (!(theta >= 0.0 && theta < 1.0)) throw DomainError("density_eval: θ must lie in [0,1)");
    return std::visit(overloaded{
                          [](const Lebesgue&) { return 1.0; },
                          [&](const TrigDensity& t) {
                              double d = 1.0;
                              for (const auto& [n, b] : t.b) {
                                  const long double turns = std::fmod(static_cast<long double>(n) * theta, 1.0L);
                                  d += b * unit_phase(static_cast<double>(turns)).real();
                              }
                              return d;
                          },
                          [](const IfsMeasure&) -> double {
                              throw UnsupportedError("density_eval: IFS measures have no density");
                          },
                          [](const AtomicMeasure&) -> double {
                              throw UnsupportedError("density_eval: atomic measures have no density");
                          },
                      },
                      spec);
}

bool has_bounded_density(const MeasureSpec& spec) {
    return std::holds_alternative<Lebesgue>(spec) || std::holds_alternative<TrigDensity>(spec);
}

double total_mass(const MeasureSpec& spec) {
    if (const auto* a = std::get_if<AtomicMeasure>(&spec))
        return std::accumulate(a->weights.begin(), a->weights.end(), 0.0);
    if (const auto* f = std::get_if<IfsMeasure>(&spec))
        return std::accumulate(f->weights.begin(), f->weights.end(), 0.0);
    return 1.0;
}

bool is_probability(const MeasureSpec& spec, double tol) {
    return std::abs(total_mass(spec) - 1.0) <= tol;
}

std::int64_t density_top_frequency(const MeasureSpec& spec) {
    if (const auto* t = std::get_if<TrigDensity>(&spec); t && !t->b.empty()) return t->b.rbegin()->first;
    return 0;
}

std::string family_name(const MeasureSpec& spec) {
    return std::visit(overloaded{
                          [](const Lebesgue&) { return std::string("lebesgue"); },
                          [](const TrigDensity&) { return std::string("trig"); },
                          [](const IfsMeasure&) { return std::string("ifs"); },
                          [](const AtomicMeasure&) { return std::string("atomic"); },
                      },
                      spec);
}

double default_tolerance(const MeasureSpec& spec) {
    return std::holds_alternative<IfsMeasure>(spec) ? 1e-8 : 1e-10;
}

} // namespace hardyrep
