#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "hardyrep/complex.hpp"
#include "hardyrep/error.hpp"
#include "hardyrep/gamma.hpp"
#include "hardyrep/io.hpp"

using namespace hardyrep;
using nlohmann::json;

TEST_CASE("complex literals") {
    CHECK(parse_complex("1+2i") == Complex(1, 2));
    CHECK(parse_complex("-0.5-0.25i") == Complex(-0.5, -0.25));
    CHECK(parse_complex("3") == Complex(3, 0));
    CHECK(parse_complex("-i") == Complex(0, -1));
    CHECK(parse_complex("i") == Complex(0, 1));
    CHECK(parse_complex("2.5i") == Complex(0, 2.5));
    CHECK(parse_complex("1e-3+4E+2i") == Complex(1e-3, 400));
    CHECK(parse_complex("+1-i") == Complex(1, -1));
    CHECK(parse_complex(" 0.3 ") == Complex(0.3, 0));
    for (const char* bad : {"", "abc", "1+", "1+2", "1+2j", "1++2i", "i2"})
        CHECK_THROWS_AS(parse_complex(bad), ValidationError);
}

TEST_CASE("complex rendering round-trips") {
    for (Complex z : {Complex(0.1, -0.7), Complex(1.0 / 3.0, 2e-300), Complex(-5, 0), Complex(0, 0)})
        CHECK(parse_complex(format_complex(z)) == z);
    CHECK(format_complex(Complex(-0.0, -0.0)) == "0+0i");
    CHECK(format_complex(Complex(1, -2)) == "1-2i");
}

TEST_CASE("measure json") {
    CHECK(std::holds_alternative<Lebesgue>(io::measure_from_json(json::parse(R"({"type":"lebesgue"})"))));
    const auto t = io::measure_from_json(json::parse(R"({"type":"trig","b":{"3":0.4}})"));
    CHECK(std::get<TrigDensity>(t).b.at(3) == 0.4);
    const auto f = io::measure_from_json(json::parse(R"({"type":"ifs","scale":4,"digits":[0,2],"weights":[0.5,0.5]})"));
    CHECK(std::get<IfsMeasure>(f).scale == 4);
    const auto a = io::measure_from_json(json::parse(R"({"type":"atomic","points":[0.1,0.5],"weights":[0.5,0.5]})"));
    CHECK(std::get<AtomicMeasure>(a).points.size() == 2);
    CHECK(std::holds_alternative<Lebesgue>(io::measure_from_json(json::parse(R"({"type":"trig","b":{}})"))));
    for (const auto& m : {t, f, a}) CHECK(io::measure_to_json(io::measure_from_json(io::measure_to_json(m))) == io::measure_to_json(m));
    CHECK_THROWS_AS(io::measure_from_json(json::parse(R"({"type":"gauss"})")), ValidationError);
    CHECK_THROWS_AS(io::measure_from_json(json::parse(R"({"type":"trig","b":{"x":1}})")), ValidationError);
    CHECK_THROWS_AS(io::measure_from_json(json::parse(R"({"type":"ifs","scale":"4"})")), ValidationError);
    CHECK_THROWS_AS(io::load_measure("{not json"), ValidationError);
    CHECK_THROWS_AS(io::load_measure("/nonexistent/file.json"), ValidationError);
}

TEST_CASE("named measures") {
    CHECK(std::holds_alternative<Lebesgue>(io::load_measure("lebesgue")));
    CHECK(std::get<IfsMeasure>(io::load_measure("mu4")).scale == 4);
    CHECK(std::get<IfsMeasure>(io::load_measure("mu3")).scale == 3);
}

TEST_CASE("gamma json") {
    const auto g = io::gamma_from_json(json::parse(R"({"base":4,"digits":[0,1],"maxLevel":2})"));
    CHECK(g.elements() == std::vector<std::int64_t>{0, 1, 4, 5, 16, 17, 20, 21});
    const auto e = io::gamma_from_json(json::parse(R"({"elements":[5,1,3]})"));
    CHECK(e.elements() == std::vector<std::int64_t>{1, 3, 5});
    const auto j = io::gamma_to_json(g);
    CHECK(j["base"] == 4);
    CHECK(j["maxLevel"] == 2);
    CHECK(io::gamma_from_json(j).elements() == g.elements());
    CHECK_THROWS_AS(io::gamma_from_json(json::parse(R"({"base":4})")), ValidationError);
}

TEST_CASE("coefficient matrices by name") {
    CHECK(std::get<DiagonalCoeffs>(io::load_coeff_matrix("szego")).kind() == DiagonalCoeffs::Kind::Polynomial);
    CHECK(std::get<DiagonalCoeffs>(io::load_coeff_matrix("bergman")).order() == 1);
    CHECK(std::get<DiagonalCoeffs>(io::load_coeff_matrix("k4")).base() == 4);
    CHECK(std::get<DiagonalCoeffs>(io::load_coeff_matrix("k3")).base() == 3);
    CHECK_THROWS_AS(io::load_coeff_matrix("hilbert"), ValidationError);

    const std::string path = "io_test_gamma.json";
    std::ofstream(path) << R"({"base":4,"digits":[0,1],"maxLevel":3})";
    const auto d = std::get<DiagonalCoeffs>(io::load_coeff_matrix("diag:" + path));
    CHECK(d.at(5) == 1.0);
    CHECK(d.at(2) == 0.0);
    const auto g = std::get<DiagonalCoeffs>(io::load_coeff_matrix("gamma:" + path));
    CHECK(g.at(85) == 1.0);
    std::remove(path.c_str());

    const auto m = io::diagonal_from_json(json::parse(R"({"0":1.0,"3":0.5})"));
    CHECK(m.at(3) == 0.5);
    CHECK(m.at(1) == 0.0);
}

TEST_CASE("dense matrices") {
    const auto d = io::dense_from_json(json::parse(R"({"entries":[[1,"0+0.5i"],[[0,-0.5],1]],"tailSup":0})"));
    CHECK(d.entries(0, 1) == Complex(0, 0.5));
    CHECK(d.entries(1, 0) == Complex(0, -0.5));
    const auto csv = io::dense_to_csv(d.entries);
    const auto back = io::dense_from_csv(csv);
    CHECK(back.entries == d.entries);
    CHECK(io::dense_from_json(io::dense_to_json(d)).entries == d.entries);
    CHECK_THROWS_AS(io::dense_from_csv("1,2\n3\n"), ValidationError);
    CHECK_THROWS_AS(io::dense_from_json(json::parse(R"({"entries":[[1,2],[0,1]]})")), ValidationError);
}

TEST_CASE("residual report json carries the window note") {
    ResidualReport r;
    r.residual = 0.5;
    r.n = 8;
    r.tolerance = 1e-10;
    r.worst_entry = {1, 3};
    r.tail_note = "note";
    const auto j = io::residual_to_json(r);
    CHECK(j["residual"] == 0.5);
    CHECK(j["norm"] == "entrywise-max");
    CHECK(j["N"] == 8);
    CHECK(j["pass"] == false);
    CHECK(j["worstEntry"] == json::array({1, 3}));
    CHECK(j["tailNote"] == "note");
}
