#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hardyrep/boundary.hpp"
#include "hardyrep/builder.hpp"
#include "hardyrep/error.hpp"
#include "hardyrep/gamma.hpp"
#include "hardyrep/io.hpp"
#include "hardyrep/kernel.hpp"
#include "hardyrep/measure.hpp"
#include "hardyrep/momenteq.hpp"
#include "hardyrep/rng.hpp"

namespace hardyrep::cli {

namespace {

using nlohmann::json;

std::vector<Complex> parse_complex_list(const std::string& text) {
    std::vector<Complex> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(parse_complex(item));
    return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &pos);
        } catch (const std::exception&) {
            pos = std::string::npos;
        }
        if (pos != item.size()) throw ValidationError("malformed integer '" + item + "'");
        out.push_back(v);
    }
    return out;
}

json complex_json(Complex z) { return format_complex(z); }

struct GammaSource {
    std::string spec;
    std::int64_t base = 0;
    std::string digits;
    int max_level = -1;

    void attach(CLI::App* sub) {
        sub->add_option("--gamma", spec, "Gamma JSON file or inline JSON");
        sub->add_option("--base", base, "Digit-set base");
        sub->add_option("--digits", digits, "Comma-separated digit set");
        sub->add_option("--max-level", max_level, "Highest digit position");
    }

    GammaSet load() const {
        if (!spec.empty()) return io::load_gamma(spec);
        if (base == 0 || digits.empty() || max_level < 0)
            throw ValidationError("give either --gamma or all of --base, --digits, --max-level");
        return generate_digit_set(base, parse_int_list(digits), max_level);
    }
};

// Option storage for one invocation. Only one leaf subcommand runs, so leaves share fields.
struct State {
    std::optional<double> tol;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string out;

    GammaSource gamma;
    std::string set_a;
    std::int64_t bound = 0;
    std::string measure;
    std::string ks;
    std::string kernel;
    std::string w, z, points;
    int count = 0;
    double radius = 0.9;
    std::string matrix;
    std::string norm = "max";
    std::string route = "auto";
    std::string freqs, coeffs;
    std::int64_t size = 64;
    std::size_t nodes = 0;
    int samples = 0;
    std::int64_t freq_bound = 100;
    std::int64_t window = 64;
    double budget = 0.5;
    double decay = 0.5;
};

struct Outcome {
    json report;
    int code = kExitPass;
    bool annotate = true;
};

using Handler = std::function<Outcome()>;
using Handlers = std::map<const CLI::App*, Handler>;

void add_common(CLI::App* sub, State& st) {
    sub->add_option("--tol", st.tol, "Pass/fail tolerance");
    sub->add_option("--seed", st.seed, "Seed for sampled points and coefficients");
    sub->add_option("--format", st.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_option("--out", st.out, "Write the report here instead of standard output");
}

// Flattens nested objects/arrays into dotted key/value rows.
void flatten(const json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
    } else if (j.is_array()) {
        if (j.empty()) rows.emplace_back(prefix, "");
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
    } else if (j.is_string()) {
        rows.emplace_back(prefix, j.get<std::string>());
    } else {
        rows.emplace_back(prefix, j.dump());
    }
}

std::string render(const json& report, const std::string& format) {
    if (format == "json") return report.dump(2) + "\n";
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(report, "", rows);
    std::ostringstream os;
    if (format == "csv") {
        os << "key,value\n";
        for (const auto& [k, v] : rows) {
            if (v.find_first_of(",\"\n") == std::string::npos) {
                os << k << ',' << v << '\n';
                continue;
            }
            std::string esc;
            for (char ch : v) esc += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            os << k << ",\"" << esc << "\"\n";
        }
        return os.str();
    }
    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.first.size());
    for (const auto& [k, v] : rows)
        os << std::left << std::setw(static_cast<int>(width)) << k << "  " << v << '\n';
    return os.str();
}

// k3/k4 use the closed product form; everything else goes through the series.
KernelFn kernel_by_name(const std::string& name, double tol) {
    if (name == "k3") return product_kernel(3, tol);
    if (name == "k4") return product_kernel(4, tol);
    return series_kernel(io::load_coeff_matrix(name), tol);
}

Outcome graded(json report, bool pass) { return Outcome{std::move(report), pass ? kExitPass : kExitFail}; }

void register_gamma(CLI::App& app, State& st, Handlers& handlers) {
    auto* gamma = app.add_subcommand("gamma", "Digit-set spectra and difference sets");
    gamma->require_subcommand(1);

    auto* gen = gamma->add_subcommand("gen", "Enumerate {Σ l_j B^j : l_j ∈ L, j ≤ maxLevel}");
    gen->add_option("--base", st.gamma.base, "Digit-set base")->required();
    gen->add_option("--digits", st.gamma.digits, "Comma-separated digit set")->required();
    gen->add_option("--max-level", st.gamma.max_level, "Highest digit position")->required();
    add_common(gen, st);
    handlers[gen] = [&st] { return Outcome{io::gamma_to_json(st.gamma.load())}; };

    auto* diff = gamma->add_subcommand("diff", "Difference set within [-bound, bound]");
    st.gamma.attach(diff);
    diff->add_option("--bound", st.bound, "Window half-width")->required();
    add_common(diff, st);
    handlers[diff] = [&st] {
        const auto d = difference_set(st.gamma.load(), st.bound);
        return Outcome{json{{"bound", st.bound}, {"count", d.size()}, {"differences", d}}};
    };

    auto* cov = gamma->add_subcommand("coverage", "Does the difference set fill [-bound, bound]");
    st.gamma.attach(cov);
    cov->add_option("--bound", st.bound, "Window half-width")->required();
    add_common(cov, st);
    handlers[cov] = [&st] {
        const auto c = check_coverage(st.gamma.load(), st.bound);
        json j{{"bound", st.bound}, {"complete", c.complete}};
        j["firstMissing"] = c.first_missing ? json(*c.first_missing) : json(nullptr);
        return Outcome{j};
    };

    auto* dis = gamma->add_subcommand("disjoint", "A ∩ 𝒟(Γ) ∩ [0, bound]");
    st.gamma.attach(dis);
    dis->add_option("--set", st.set_a, "Gamma JSON for A")->required();
    dis->add_option("--bound", st.bound, "Upper end of the window")->required();
    add_common(dis, st);
    handlers[dis] = [&st] {
        const auto inter = check_disjoint_difference(io::load_gamma(st.set_a), st.gamma.load(), st.bound);
        return Outcome{json{{"bound", st.bound}, {"intersection", inter}}};
    };
}

void register_measure(CLI::App& app, State& st, Handlers& handlers) {
    auto* measure = app.add_subcommand("measure", "Fourier oracle and validation");
    measure->require_subcommand(1);
    const std::string measure_help = "lebesgue | mu3 | mu4 | JSON file | inline JSON";

    auto* fourier = measure->add_subcommand("fourier", "µ̂(k) with error bound");
    fourier->add_option("--measure", st.measure, measure_help)->required();
    fourier->add_option("--k", st.ks, "Comma-separated frequencies")->required();
    add_common(fourier, st);
    handlers[fourier] = [&st] {
        const auto mu = io::load_measure(st.measure);
        json coeffs = json::array();
        for (auto k : parse_int_list(st.ks)) {
            const auto fv = fourier_coefficient(mu, k);
            coeffs.push_back({{"k", k}, {"value", complex_json(fv.value)}, {"error", fv.error}});
        }
        return Outcome{json{{"measure", io::measure_to_json(mu)}, {"coefficients", coeffs}}};
    };

    auto* val = measure->add_subcommand("validate", "Check positivity and normalization");
    val->add_option("--measure", st.measure, measure_help)->required();
    add_common(val, st);
    handlers[val] = [&st] {
        const auto mu = io::load_measure(st.measure);
        const auto rep = validate(mu);
        return graded(json{{"family", family_name(mu)},
                           {"ok", rep.ok()},
                           {"violations", rep.violations},
                           {"boundedDensity", rep.bounded_density},
                           {"totalMass", total_mass(mu)}},
                      rep.ok());
    };
}

void register_kernel(CLI::App& app, State& st, Handlers& handlers) {
    auto* kernel = app.add_subcommand("kernel", "Kernel evaluation and Gram matrices");
    kernel->require_subcommand(1);
    const std::string kernel_help = "szego | bergman | k3 | k4 | gamma:<f> | diag:<f> | dense:<f>";

    auto* ev = kernel->add_subcommand("eval", "K(w,z) with certified tail bound");
    ev->add_option("--kernel", st.kernel, kernel_help)->required();
    ev->add_option("--w", st.w, "Complex literal a+bi")->required();
    ev->add_option("--z", st.z, "Complex literal a+bi")->required();
    add_common(ev, st);
    handlers[ev] = [&st] {
        const double tol = st.tol.value_or(1e-12);
        const Complex w = parse_complex(st.w);
        const Complex z = parse_complex(st.z);
        const auto kv = kernel_by_name(st.kernel, tol)(w, z);
        return Outcome{json{{"kernel", st.kernel},
                            {"w", complex_json(w)},
                            {"z", complex_json(z)},
                            {"value", complex_json(kv.value)},
                            {"tailBound", kv.tail_bound},
                            {"terms", kv.terms},
                            {"tol", tol}}};
    };

    auto* gram = kernel->add_subcommand("gram", "Gram matrix (K(ζ_j, ζ_i))_ij and PSD check");
    gram->add_option("--kernel", st.kernel, kernel_help)->required();
    gram->add_option("--points", st.points, "Comma-separated complex points");
    gram->add_option("--count", st.count, "Number of seeded random points");
    gram->add_option("--radius", st.radius, "Sampling radius for random points");
    add_common(gram, st);
    handlers[gram] = [&st] {
        std::vector<Complex> pts = st.points.empty() ? std::vector<Complex>{} : parse_complex_list(st.points);
        SplitMix64 rng(st.seed);
        for (int i = 0; i < st.count; ++i) pts.push_back(rng.disc(st.radius));
        if (pts.empty()) throw ValidationError("give --points or --count");
        const double tol = st.tol.value_or(1e-10);
        const auto g = gram_at_points(kernel_by_name(st.kernel, 1e-14), pts);
        const auto psd = psd_check(g.values, tol);
        json rows = json::array();
        for (Eigen::Index i = 0; i < g.values.rows(); ++i) {
            json row = json::array();
            for (Eigen::Index j = 0; j < g.values.cols(); ++j) row.push_back(complex_json(g.values(i, j)));
            rows.push_back(row);
        }
        json pj = json::array();
        for (auto p : pts) pj.push_back(complex_json(p));
        return graded(json{{"kernel", st.kernel},
                           {"points", pj},
                           {"gram", rows},
                           {"maxTailBound", g.max_tail_bound},
                           {"minEigenvalue", psd.min_eigenvalue},
                           {"tolerance", tol},
                           {"pass", psd.pass}},
                      psd.pass);
    };
}

void register_check(CLI::App& app, State& st, Handlers& handlers) {
    auto* check = app.add_subcommand("check", "Criterion checks");
    check->require_subcommand(1);

    auto* cmc = check->add_subcommand("cmc", "‖C − CMC‖ on the window [0,N)");
    cmc->add_option("--matrix", st.matrix, "Coefficient matrix")->required();
    cmc->add_option("--measure", st.measure, "Measure")->required();
    cmc->add_option("--size", st.size, "Window size N");
    cmc->add_option("--norm", st.norm, "max | frobenius");
    add_common(cmc, st);
    handlers[cmc] = [&st] {
        const auto mu = io::load_measure(st.measure);
        const auto m = build_moment_matrix(mu, st.size);
        const auto r = cmc_residual(io::load_coeff_matrix(st.matrix), m, parse_norm(st.norm), st.tol);
        auto j = io::residual_to_json(r);
        j["matrix"] = st.matrix;
        j["measure"] = family_name(mu);
        return graded(j, r.pass);
    };

    auto* proj = check->add_subcommand("projection", "‖C − C²‖ on the window [0,N)");
    proj->add_option("--matrix", st.matrix, "Coefficient matrix")->required();
    proj->add_option("--size", st.size, "Window size N");
    proj->add_option("--norm", st.norm, "max | frobenius");
    add_common(proj, st);
    handlers[proj] = [&st] {
        const auto r = projection_residual(io::load_coeff_matrix(st.matrix), st.size, parse_norm(st.norm),
                                           st.tol.value_or(1e-10));
        auto j = io::residual_to_json(r);
        j["matrix"] = st.matrix;
        return graded(j, r.pass);
    };

    auto* van = check->add_subcommand("vanishing", "max |µ̂(d)| over d ∈ 𝒟(Γ)∖{0}, |d| ≤ bound");
    van->add_option("--measure", st.measure, "Measure")->required();
    st.gamma.attach(van);
    van->add_option("--bound", st.bound, "Offset bound")->required();
    add_common(van, st);
    handlers[van] = [&st] {
        const auto mu = io::load_measure(st.measure);
        const double tol = st.tol.value_or(default_tolerance(mu));
        const auto v = fourier_vanishing_check(mu, st.gamma.load(), st.bound, tol);
        auto j = io::vanishing_to_json(v, st.bound);
        j["tolerance"] = tol;
        j["measure"] = family_name(mu);
        return graded(j, v.pass);
    };

    auto* rep = check->add_subcommand("reproduce", "|K(w,z) − ∫ K*(w,x) conj K*(z,x) dµ(x)|");
    rep->add_option("--matrix", st.matrix, "Coefficient matrix")->required();
    rep->add_option("--measure", st.measure, "Measure")->required();
    rep->add_option("--w", st.w, "Complex literal a+bi");
    rep->add_option("--z", st.z, "Complex literal a+bi");
    rep->add_option("--samples", st.samples, "Number of seeded random (w,z) pairs");
    rep->add_option("--radius", st.radius, "Sampling radius");
    rep->add_option("--size", st.size, "Boundary truncation N");
    rep->add_option("--nodes", st.nodes, "Quadrature nodes, 0 for the default");
    rep->add_option("--route", st.route, "auto | quadrature | fourier")
        ->check(CLI::IsMember({"auto", "quadrature", "fourier"}));
    add_common(rep, st);
    handlers[rep] = [&st] {
        const auto mu = io::load_measure(st.measure);
        const auto c = io::load_coeff_matrix(st.matrix);
        std::vector<std::pair<Complex, Complex>> pairs;
        if (!st.w.empty() || !st.z.empty())
            pairs.emplace_back(parse_complex(st.w.empty() ? "0" : st.w), parse_complex(st.z.empty() ? "0" : st.z));
        SplitMix64 rng(st.seed);
        for (int i = 0; i < st.samples; ++i) {
            const Complex a = rng.disc(st.radius);
            pairs.emplace_back(a, rng.disc(st.radius));
        }
        if (pairs.empty()) throw ValidationError("give --w/--z or --samples");
        const std::string route =
            st.route == "auto" ? (has_bounded_density(mu) ? "quadrature" : "fourier") : st.route;
        const double tol = st.tol.value_or(default_tolerance(mu));
        const auto n = static_cast<std::size_t>(st.size);
        json pts = json::array();
        double worst = 0.0;
        for (const auto& [pw, pz] : pairs) {
            const double res = route == "quadrature" ? reproduce_residual_quadrature(c, mu, pw, pz, n, st.nodes)
                                                     : reproduce_residual_fourier(c, mu, pw, pz, n);
            worst = std::max(worst, res);
            pts.push_back({{"w", complex_json(pw)}, {"z", complex_json(pz)}, {"residual", res}});
        }
        const bool pass = worst <= tol;
        return graded(json{{"route", route},
                           {"N", st.size},
                           {"points", pts},
                           {"maxResidual", worst},
                           {"tolerance", tol},
                           {"pass", pass}},
                      pass);
    };

    auto* norms = check->add_subcommand("norms", "|‖Σ a_n e_n‖²_µ − Σ|a_n|²| on a frequency set");
    norms->add_option("--measure", st.measure, "Measure")->required();
    norms->add_option("--freqs", st.freqs, "Comma-separated frequencies");
    norms->add_option("--coeffs", st.coeffs, "Comma-separated complex coefficients");
    norms->add_option("--samples", st.samples, "Number of seeded random coefficient vectors");
    st.gamma.attach(norms);
    add_common(norms, st);
    handlers[norms] = [&st] {
        const auto mu = io::load_measure(st.measure);
        std::vector<std::int64_t> f = st.freqs.empty() ? st.gamma.load().elements() : parse_int_list(st.freqs);
        std::vector<std::vector<Complex>> vectors;
        if (!st.coeffs.empty()) vectors.push_back(parse_complex_list(st.coeffs));
        SplitMix64 rng(st.seed);
        for (int i = 0; i < st.samples; ++i) {
            std::vector<Complex> a(f.size());
            for (auto& x : a) x = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
            vectors.push_back(std::move(a));
        }
        if (vectors.empty()) throw ValidationError("give --coeffs or --samples");
        const double tol = st.tol.value_or(default_tolerance(mu));
        json results = json::array();
        double worst = 0.0;
        for (const auto& a : vectors) {
            const double r = norm_preservation_residual(f, a, mu);
            worst = std::max(worst, r);
            results.push_back(r);
        }
        const bool pass = worst <= tol;
        return graded(json{{"freqs", f},
                           {"residuals", results},
                           {"maxResidual", worst},
                           {"tolerance", tol},
                           {"pass", pass}},
                      pass);
    };

    auto* tr = check->add_subcommand("transpose", "‖Cᵀ − CᵀMCᵀ‖ for a projection C");
    tr->add_option("--matrix", st.matrix, "Coefficient matrix")->required();
    tr->add_option("--measure", st.measure, "Measure with bounded density")->required();
    tr->add_option("--size", st.size, "Window size N");
    tr->add_option("--norm", st.norm, "max | frobenius");
    add_common(tr, st);
    handlers[tr] = [&st] {
        const auto r = transpose_identity_residual(io::load_coeff_matrix(st.matrix), io::load_measure(st.measure),
                                                   st.size, parse_norm(st.norm), st.tol);
        auto j = io::residual_to_json(r);
        j["matrix"] = st.matrix;
        return graded(j, r.pass);
    };
}

void register_build(CLI::App& app, State& st, Handlers& handlers) {
    auto* build = app.add_subcommand("build", "Absolutely continuous representing measures");
    build->require_subcommand(1);

    auto* bm = build->add_subcommand("measure", "Trigonometric density with spectrum off 𝒟(Γ)");
    st.gamma.attach(bm);
    bm->add_option("--freq-bound", st.freq_bound, "Largest frequency considered");
    bm->add_option("--mass-budget", st.budget, "Σ|b_n| budget in (0,1)");
    bm->add_option("--decay", st.decay, "Geometric decay in (0,1)");
    add_common(bm, st);
    handlers[bm] = [&st] {
        try {
            const auto mu = build_ac_representing_measure(st.gamma.load(), st.freq_bound, st.budget, st.decay);
            return Outcome{io::measure_to_json(mu), kExitPass, false};
        } catch (const ConstructionError& e) {
            return Outcome{json{{"pass", false}, {"error", e.what()}}, kExitFail};
        }
    };

    auto* cert = build->add_subcommand("certify", "Validation, vanishing, C = CMC and a reproduction spot check");
    cert->add_option("--measure", st.measure, "Measure")->required();
    st.gamma.attach(cert);
    cert->add_option("--window", st.window, "Window size");
    add_common(cert, st);
    handlers[cert] = [&st] {
        const auto c = certify(io::load_measure(st.measure), st.gamma.load(), st.window, st.tol);
        return graded(io::certificate_to_json(c), c.pass);
    };
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Boundary representations of positive matrices on the Hardy space", "hardyrep"};
    app.require_subcommand(1);
    State st;
    Handlers handlers;
    register_gamma(app, st, handlers);
    register_measure(app, st, handlers);
    register_kernel(app, st, handlers);
    register_check(app, st, handlers);
    register_build(app, st, handlers);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "hardyrep: " << e.what() << '\n';
        return kExitUsage;
    }

    const CLI::App* leaf = &app;
    std::string command;
    while (!leaf->get_subcommands().empty()) {
        leaf = leaf->get_subcommands().front();
        command += (command.empty() ? "" : " ") + leaf->get_name();
    }
    const auto it = handlers.find(leaf);
    if (it == handlers.end()) {
        err << "hardyrep: incomplete command '" << command << "'\n";
        return kExitUsage;
    }

    Outcome outcome;
    try {
        outcome = it->second();
    } catch (const std::exception& e) {
        err << "hardyrep " << command << ": " << e.what() << '\n';
        return kExitUsage;
    }
    if (outcome.annotate) {
        outcome.report["command"] = command;
        outcome.report["seed"] = st.seed;
    }
    const auto text = render(outcome.report, st.format);
    if (st.out.empty()) {
        out << text;
    } else {
        std::ofstream file(st.out, std::ios::binary);
        if (!file) {
            err << "hardyrep: cannot write '" << st.out << "'\n";
            return kExitUsage;
        }
        file << text;
    }
    return outcome.code;
}

} // namespace hardyrep::cli
