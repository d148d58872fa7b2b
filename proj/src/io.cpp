#include "hardyrep/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "hardyrep/error.hpp"

namespace hardyrep::io {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

std::int64_t parse_index(const std::string& key) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), v);
    if (ec != std::errc{} || ptr != key.data() + key.size())
        throw ValidationError("expected an integer key, got '" + key + "'");
    return v;
}

Complex complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
    if (j.is_string()) return parse_complex(j.get<std::string>());
    throw ValidationError("expected a complex number (number, [re, im] or \"a+bi\")");
}

// Runs a parser, turning nlohmann's type errors into ValidationError.
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed ") + what + " JSON: " + e.what());
    }
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

json parse_inline_or_file(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
        try {
            return json::parse(arg);
        } catch (const json::parse_error& e) {
            throw ValidationError(std::string("malformed inline JSON: ") + e.what());
        }
    }
    return read_json_file(arg);
}

} // namespace

MeasureSpec measure_from_json(const json& j) {
    return guarded("measure", [&]() -> MeasureSpec {
        const auto type = j.at("type").get<std::string>();
        if (type == "lebesgue") return Lebesgue{};
        if (type == "trig") {
            TrigDensity t;
            if (j.contains("b"))
                for (const auto& [key, value] : j.at("b").items()) t.b[parse_index(key)] = value.get<double>();
            if (t.b.empty()) return Lebesgue{};
            return t;
        }
        if (type == "ifs")
            return IfsMeasure{j.at("scale").get<std::int64_t>(), j.at("digits").get<std::vector<std::int64_t>>(),
                              j.at("weights").get<std::vector<double>>()};
        if (type == "atomic")
            return AtomicMeasure{j.at("points").get<std::vector<double>>(), j.at("weights").get<std::vector<double>>()};
        throw ValidationError("unknown measure type '" + type + "'");
    });
}

json measure_to_json(const MeasureSpec& spec) {
    return std::visit(overloaded{
                          [](const Lebesgue&) { return json{{"type", "lebesgue"}}; },
                          [](const TrigDensity& t) {
                              json b = json::object();
                              for (const auto& [n, v] : t.b) b[std::to_string(n)] = v;
                              return json{{"type", "trig"}, {"b", b}};
                          },
                          [](const IfsMeasure& f) {
                              return json{{"type", "ifs"}, {"scale", f.scale}, {"digits", f.digits}, {"weights", f.weights}};
                          },
                          [](const AtomicMeasure& a) {
                              return json{{"type", "atomic"}, {"points", a.points}, {"weights", a.weights}};
                          },
                      },
                      spec);
}

GammaSet gamma_from_json(const json& j) {
    return guarded("gamma", [&]() -> GammaSet {
        if (j.contains("base"))
            return generate_digit_set(j.at("base").get<std::int64_t>(), j.at("digits").get<std::vector<std::int64_t>>(),
                                      j.at("maxLevel").get<int>());
        if (j.contains("elements")) return GammaSet(j.at("elements").get<std::vector<std::int64_t>>());
        throw ValidationError("gamma JSON needs either base/digits/maxLevel or elements");
    });
}

json gamma_to_json(const GammaSet& gamma) {
    json j;
    if (const auto& g = gamma.generator()) {
        j["base"] = g->base;
        j["digits"] = g->digits;
        j["maxLevel"] = g->max_level;
    }
    j["count"] = gamma.size();
    j["elements"] = gamma.elements();
    return j;
}

DiagonalCoeffs diagonal_from_json(const json& j) {
    return guarded("diagonal", [&]() -> DiagonalCoeffs {
        if (!j.is_object()) throw ValidationError("diagonal JSON must be an object");
        if (j.contains("type")) {
            const auto type = j.at("type").get<std::string>();
            if (type == "polynomial") return DiagonalCoeffs::polynomial(j.at("order").get<int>());
            if (type == "digits")
                return DiagonalCoeffs::digit_indicator(j.at("base").get<std::int64_t>(),
                                                       j.at("digits").get<std::vector<std::int64_t>>());
            if (type == "diag") return diagonal_from_json(j.at("entries"));
            throw ValidationError("unknown diagonal type '" + type + "'");
        }
        if (j.contains("base") || j.contains("elements")) return DiagonalCoeffs::indicator(gamma_from_json(j));
        std::map<std::int64_t, double> m;
        for (const auto& [key, value] : j.items()) m[parse_index(key)] = value.get<double>();
        return DiagonalCoeffs::finite(std::move(m));
    });
}

DenseCoeffs dense_from_json(const json& j) {
    return guarded("dense matrix", [&]() -> DenseCoeffs {
        const json& rows = j.is_array() ? j : j.at("entries");
        const double tail_sup = j.is_object() ? j.value("tailSup", 0.0) : 0.0;
        const auto n = static_cast<Eigen::Index>(rows.size());
        Eigen::MatrixXcd m(n, n);
        for (Eigen::Index r = 0; r < n; ++r) {
            const auto& row = rows.at(static_cast<std::size_t>(r));
            if (static_cast<Eigen::Index>(row.size()) != n) throw ValidationError("dense matrix must be square");
            for (Eigen::Index c = 0; c < n; ++c) m(r, c) = complex_from_json(row.at(static_cast<std::size_t>(c)));
        }
        return make_dense(std::move(m), tail_sup);
    });
}

json dense_to_json(const DenseCoeffs& d) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < d.entries.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < d.entries.cols(); ++c) row.push_back(format_complex(d.entries(r, c)));
        rows.push_back(row);
    }
    return json{{"entries", rows}, {"tailSup", d.tail_sup}};
}

DenseCoeffs dense_from_csv(std::string_view text) {
    std::vector<std::vector<Complex>> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<Complex> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(parse_complex(cell));
        rows.push_back(std::move(row));
    }
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(r)].size()) != n)
            throw ValidationError("CSV matrix must be square");
        for (Eigen::Index c = 0; c < n; ++c) m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
    return make_dense(std::move(m));
}

std::string dense_to_csv(const Eigen::MatrixXcd& m) {
    std::string out;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) out += ',';
            out += format_complex(m(r, c));
        }
        out += '\n';
    }
    return out;
}

json complex_to_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json residual_to_json(const ResidualReport& r) {
    return json{{"residual", r.residual},
                {"norm", norm_name(r.norm)},
                {"N", r.n},
                {"tolerance", r.tolerance},
                {"pass", r.pass},
                {"worstEntry", {r.worst_entry.first, r.worst_entry.second}},
                {"tailNote", r.tail_note}};
}

json vanishing_to_json(const VanishingResult& v, std::int64_t bound) {
    json j{{"maxAbs", v.max_abs}, {"pass", v.pass}, {"offsetsChecked", v.offsets_checked}, {"bound", bound}};
    j["worstOffset"] = v.worst_offset ? json(*v.worst_offset) : json(nullptr);
    return j;
}

json certificate_to_json(const Certificate& c) {
    json j{{"pass", c.pass},
           {"residual", c.residual},
           {"tolerance", c.tolerance},
           {"window", c.window},
           {"validation",
            {{"ok", c.validation.ok()},
             {"violations", c.validation.violations},
             {"boundedDensity", c.validation.bounded_density}}},
           {"vanishing", vanishing_to_json(c.vanishing, c.window - 1)},
           {"reproduce", {{"route", c.reproduce_route}, {"residual", c.reproduce_residual}}},
           {"failures", c.failures}};
    j["cmc"] = c.cmc ? residual_to_json(*c.cmc) : json(nullptr);
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json_file(const std::string& path) {
    const auto text = read_file(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError("malformed JSON in '" + path + "': " + e.what());
    }
}

MeasureSpec load_measure(const std::string& arg) {
    if (arg == "lebesgue") return Lebesgue{};
    if (arg == "mu4") return mu4();
    if (arg == "mu3") return mu3();
    return measure_from_json(parse_inline_or_file(arg));
}

GammaSet load_gamma(const std::string& arg) { return gamma_from_json(parse_inline_or_file(arg)); }

CoeffMatrix load_coeff_matrix(const std::string& arg) {
    if (arg == "szego") return DiagonalCoeffs::polynomial(0);
    if (arg == "bergman") return DiagonalCoeffs::polynomial(1);
    if (arg == "k3") return DiagonalCoeffs::digit_indicator(3, {0, 1});
    if (arg == "k4") return DiagonalCoeffs::digit_indicator(4, {0, 1});
    const auto colon = arg.find(':');
    if (colon == std::string::npos) throw ValidationError("unknown coefficient matrix '" + arg + "'");
    const auto kind = arg.substr(0, colon);
    const auto rest = arg.substr(colon + 1);
    if (kind == "gamma") return DiagonalCoeffs::indicator(load_gamma(rest));
    if (kind == "diag") return diagonal_from_json(parse_inline_or_file(rest));
    if (kind == "dense") {
        if (ends_with(rest, ".csv")) return dense_from_csv(read_file(rest));
        return dense_from_json(parse_inline_or_file(rest));
    }
    throw ValidationError("unknown coefficient matrix kind '" + kind + "'");
}

} // namespace hardyrep::io
