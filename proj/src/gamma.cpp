#include "hardyrep/gamma.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <set>
#include <string>

#include <omp.h>

#include "hardyrep/error.hpp"

namespace hardyrep {

GammaSet::GammaSet(std::vector<std::int64_t> elements) : elements_(std::move(elements)) {
    for (auto e : elements_)
        if (e < 0) throw ValidationError("Γ elements must be nonnegative, got " + std::to_string(e));
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool GammaSet::contains(std::int64_t n) const {
    return std::binary_search(elements_.begin(), elements_.end(), n);
}

std::int64_t GammaSet::max_element() const { return elements_.empty() ? -1 : elements_.back(); }

GammaSet generate_digit_set(std::int64_t base, const std::vector<std::int64_t>& digits, int max_level) {
    if (base < 2) throw ValidationError("digit set base must be ≥ 2");
    if (digits.empty()) throw ValidationError("digit set is empty");
    if (max_level < 0) throw ValidationError("maxLevel must be ≥ 0");
    if (std::set<std::int64_t>(digits.begin(), digits.end()).size() != digits.size())
        throw ValidationError("digits not distinct");
    for (auto d : digits)
        if (d < 0) throw ValidationError("digits must be nonnegative");

    constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();
    __int128 top = 1; // B^{maxLevel+1}
    for (int j = 0; j <= max_level; ++j) {
        top *= base;
        if (top > kMax)
            throw CapacityError("B^(maxLevel+1) = " + std::to_string(base) + "^" + std::to_string(max_level + 1) +
                                " exceeds 64-bit range");
    }
    const auto dmax = *std::max_element(digits.begin(), digits.end());
    if (static_cast<__int128>(dmax) * ((top - 1) / (base - 1)) > kMax)
        throw CapacityError("largest Γ element exceeds 64-bit range");
    long double count = 1.0L;
    for (int j = 0; j <= max_level; ++j) count *= static_cast<long double>(digits.size());
    if (count > static_cast<long double>(kMaxGammaSize))
        throw CapacityError("|L|^(maxLevel+1) exceeds the enumeration limit");

    std::vector<std::int64_t> cur{0};
    std::int64_t place = 1;
    for (int j = 0; j <= max_level; ++j) {
        std::vector<std::int64_t> next;
        next.reserve(cur.size() * digits.size());
        for (auto s : cur)
            for (auto l : digits) next.push_back(s + l * place);
        cur = std::move(next);
        if (j < max_level) place *= base;
    }
    GammaSet g(std::move(cur));
    g.generator_ = DigitGenerator{base, digits, max_level};
    return g;
}

namespace {

constexpr std::int64_t kBitmapLimit = std::int64_t{1} << 24;

// Sorted nonnegative differences x − y ≤ bound.
std::vector<std::int64_t> nonnegative_differences(const GammaSet& gamma, std::int64_t bound) {
    if (bound < 0) throw ValidationError("difference bound must be ≥ 0");
    const auto& e = gamma.elements();
    const auto n = static_cast<std::int64_t>(e.size());
    std::vector<std::int64_t> out;
    if (n == 0) return out;

    if (bound <= kBitmapLimit) {
        const auto width = static_cast<std::size_t>(bound) + 1;
        std::vector<unsigned char> hit(width, 0);
#pragma omp parallel
        {
            std::vector<unsigned char> local(width, 0);
#pragma omp for schedule(dynamic, 64) nowait
            for (std::int64_t i = 0; i < n; ++i) {
                const auto x = e[static_cast<std::size_t>(i)];
                const auto lo = std::lower_bound(e.begin(), e.begin() + i + 1, x - bound);
                for (auto it = lo; it != e.begin() + i + 1; ++it) local[static_cast<std::size_t>(x - *it)] = 1;
            }
#pragma omp critical(hardyrep_diff_merge)
            for (std::size_t d = 0; d < width; ++d) hit[d] |= local[d];
        }
        for (std::size_t d = 0; d < width; ++d)
            if (hit[d]) out.push_back(static_cast<std::int64_t>(d));
        return out;
    }

    for (std::int64_t i = 0; i < n; ++i) {
        const auto x = e[static_cast<std::size_t>(i)];
        const auto lo = std::lower_bound(e.begin(), e.begin() + i + 1, x - bound);
        for (auto it = lo; it != e.begin() + i + 1; ++it) out.push_back(x - *it);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

std::vector<std::int64_t> difference_set(const GammaSet& gamma, std::int64_t bound) {
    const auto pos = nonnegative_differences(gamma, bound);
    std::vector<std::int64_t> out;
    out.reserve(pos.empty() ? 0 : 2 * pos.size() - 1);
    for (auto it = pos.rbegin(); it != pos.rend(); ++it)
        if (*it != 0) out.push_back(-*it);
    out.insert(out.end(), pos.begin(), pos.end());
    return out;
}

Coverage check_coverage(const GammaSet& gamma, std::int64_t bound) {
    const auto pos = nonnegative_differences(gamma, bound);
    std::int64_t expect = 0;
    for (auto d : pos) {
        if (d != expect) return {false, expect};
        ++expect;
    }
    if (expect <= bound) return {false, expect};
    return {true, std::nullopt};
}

std::vector<std::int64_t> check_disjoint_difference(const GammaSet& a, const GammaSet& gamma,
                                                    std::int64_t bound) {
    const auto pos = nonnegative_differences(gamma, bound);
    std::vector<std::int64_t> out;
    for (auto x : a.elements()) {
        if (x > bound) break;
        if (std::binary_search(pos.begin(), pos.end(), x)) out.push_back(x);
    }
    return out;
}

} // namespace hardyrep
