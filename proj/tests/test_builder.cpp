#include <doctest.h>

#include <cmath>

#include "hardyrep/builder.hpp"
#include "hardyrep/error.hpp"
#include "hardyrep/gamma.hpp"
#include "oracles.hpp"

using namespace hardyrep;
using V = std::vector<std::int64_t>;

namespace {

const auto kG4 = generate_digit_set(4, {0, 1}, 5);

const std::map<std::int64_t, double>& coeffs(const MeasureSpec& m) { return std::get<TrigDensity>(m).b; }

} // namespace

TEST_CASE("admissible frequencies are the complement of the difference set") {
    const auto adm = admissible_frequencies(kG4, 100);
    const auto diff = oracle::differences(kG4.elements(), 100);
    V expect;
    for (std::int64_t n = 1; n <= 100; ++n)
        if (!std::binary_search(diff.begin(), diff.end(), n)) expect.push_back(n);
    CHECK(adm == expect);
    CHECK(adm.front() == 2);
}

TEST_CASE("gamma4 builder") {
    const auto mu = build_ac_representing_measure(kG4, 100, 0.5, 0.5);
    const auto& b = coeffs(mu);
    const auto adm = admissible_frequencies(kG4, 100);
    REQUIRE(b.size() == adm.size());
    CHECK(b.at(2) == 0.25);
    CHECK(b.at(adm[1]) == 0.125);
    double total = 0.0;
    for (std::size_t r = 0; r < adm.size(); ++r) {
        CHECK(b.at(adm[r]) == 0.5 * 0.5 * std::pow(0.5, double(r)));
        total += std::abs(b.at(adm[r]));
    }
    CHECK(total <= 0.5);
    CHECK(validate(mu).ok());
    const auto v = fourier_vanishing_check(mu, kG4, 100, 0.0);
    CHECK(v.pass);
    CHECK(v.max_abs == 0.0);
}

TEST_CASE("gamma3 has no admissible frequency") {
    const auto g3 = generate_digit_set(3, {0, 1}, 9);
    try {
        build_ac_representing_measure(g3, 1000, 0.5, 0.5);
        FAIL("expected a construction error");
    } catch (const ConstructionError& e) {
        CHECK(std::string(e.what()).find("no admissible frequency ≤ 1000") != std::string::npos);
    }
}

TEST_CASE("singleton gamma admits every frequency") {
    const auto mu = build_ac_representing_measure(GammaSet({0}), 10, 0.9, 0.5);
    const auto& b = coeffs(mu);
    CHECK(b.size() == 10);
    double total = 0.0;
    for (const auto& [n, bn] : b) total += std::abs(bn);
    CHECK(total <= 0.9);
    CHECK(b.begin()->first == 1);
    CHECK(b.rbegin()->first == 10);
}

TEST_CASE("builder preconditions") {
    CHECK_THROWS_AS(build_ac_representing_measure(kG4, 100, 1.0, 0.5), ValidationError);
    CHECK_THROWS_AS(build_ac_representing_measure(kG4, 100, 0.5, 0.0), ValidationError);
    CHECK_THROWS_AS(build_ac_representing_measure(kG4, 0, 0.5, 0.5), ValidationError);
}

TEST_CASE("built densities stay positive") {
    for (auto [budget, decay] : {std::pair{0.5, 0.5}, std::pair{0.99, 0.9}, std::pair{0.3, 0.1}}) {
        const auto mu = build_ac_representing_measure(kG4, 200, budget, decay);
        double total = 0.0;
        for (const auto& [n, bn] : coeffs(mu)) total += std::abs(bn);
        CHECK(total < 1.0);
        for (int i = 0; i < 4096; ++i) CHECK(density_eval(mu, i / 4096.0) > 0.0);
    }
}

TEST_CASE("different decays give different measures") {
    const auto a = build_ac_representing_measure(kG4, 100, 0.5, 0.5);
    const auto b = build_ac_representing_measure(kG4, 100, 0.5, 0.7);
    CHECK(fourier_coefficient(a, 2).value != fourier_coefficient(b, 2).value);
}

TEST_CASE("user supplied coefficients") {
    const auto mu = build_from_coefficients(kG4, {{2, 0.3}, {6, -0.2}});
    CHECK(coeffs(mu).size() == 2);
    CHECK_THROWS_AS(build_from_coefficients(kG4, {{3, 0.3}}), ConstructionError);
    CHECK_THROWS_AS(build_from_coefficients(kG4, {{2, 0.7}, {6, 0.4}}), ValidationError);
}

TEST_CASE("certify") {
    const auto mu = build_ac_representing_measure(kG4, 100, 0.5, 0.5);
    const auto c = certify(mu, kG4, 64);
    CHECK(c.pass);
    CHECK(c.residual == 0.0);
    CHECK(c.failures.empty());
    CHECK(c.reproduce_route == "quadrature");
    CHECK(c.reproduce_residual <= 1e-10);
    REQUIRE(c.cmc);
    CHECK(c.cmc->residual == 0.0);

    CHECK(certify(Lebesgue{}, generate_digit_set(3, {0, 1}, 6), 40).pass);
    CHECK(certify(mu4(), kG4, 64).pass);
    CHECK(certify(mu4(), kG4, 64).reproduce_route == "fourier");

    const auto bad = certify(TrigDensity{{{2, 0.4}}}, generate_digit_set(3, {0, 1}, 3), 8);
    CHECK_FALSE(bad.pass);
    REQUIRE(bad.vanishing.worst_offset);
    CHECK(*bad.vanishing.worst_offset == 2);
    CHECK_FALSE(bad.failures.empty());
}

TEST_CASE("round trip: built measures certify at windows up to the bound") {
    for (std::int64_t bound : {20, 60, 100}) {
        const auto mu = build_ac_representing_measure(kG4, bound, 0.5, 0.5);
        for (std::int64_t w : {std::int64_t{8}, std::int64_t{32}, bound}) {
            const auto c = certify(mu, kG4, w);
            CHECK(c.pass);
            CHECK(c.residual <= 1e-12);
        }
    }
}
