#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace hardyrep {

struct DigitGenerator {
    std::int64_t base = 2;
    std::vector<std::int64_t> digits;
    int max_level = 0;
};

// Finite set of nonnegative integers, sorted and distinct.
class GammaSet {
public:
    GammaSet() = default;
    explicit GammaSet(std::vector<std::int64_t> elements);

    const std::vector<std::int64_t>& elements() const { return elements_; }
    const std::optional<DigitGenerator>& generator() const { return generator_; }
    std::size_t size() const { return elements_.size(); }
    bool contains(std::int64_t n) const;
    std::int64_t max_element() const;

    friend GammaSet generate_digit_set(std::int64_t, const std::vector<std::int64_t>&, int);

private:
    std::vector<std::int64_t> elements_;
    std::optional<DigitGenerator> generator_;
};

// Enumeration limit for |L|^{maxLevel+1}.
inline constexpr std::size_t kMaxGammaSize = std::size_t{1} << 24;

// {Σ_{j=0}^{maxLevel} l_j B^j : l_j ∈ L}
GammaSet generate_digit_set(std::int64_t base, const std::vector<std::int64_t>& digits,
                            int max_level);

// {x − y : x, y ∈ Γ} ∩ [−bound, bound], sorted.
std::vector<std::int64_t> difference_set(const GammaSet& gamma, std::int64_t bound);

struct Coverage {
    bool complete = false;
    // Smallest n ≥ 0 with n ∉ 𝒟(Γ); 𝒟(Γ) is symmetric so −n is missing too.
    std::optional<std::int64_t> first_missing;
};

Coverage check_coverage(const GammaSet& gamma, std::int64_t bound);

// A ∩ 𝒟(Γ) ∩ [0, bound], sorted.
std::vector<std::int64_t> check_disjoint_difference(const GammaSet& a, const GammaSet& gamma,
                                                    std::int64_t bound);

} // namespace hardyrep
