#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "hardyrep/builder.hpp"
#include "hardyrep/gamma.hpp"
#include "hardyrep/kernel.hpp"
#include "hardyrep/measure.hpp"
#include "hardyrep/momenteq.hpp"

namespace hardyrep::io {

using nlohmann::json;

// {"type":"lebesgue"} | {"type":"trig","b":{"3":0.4}} |
// {"type":"ifs","scale":4,"digits":[0,2],"weights":[0.5,0.5]} |
// {"type":"atomic","points":[...],"weights":[...]}
MeasureSpec measure_from_json(const json& j);
json measure_to_json(const MeasureSpec& spec);

// {"base":4,"digits":[0,1],"maxLevel":8} or {"elements":[...]}
GammaSet gamma_from_json(const json& j);
json gamma_to_json(const GammaSet& gamma);

// A Gamma document becomes its 0/1 indicator; otherwise a map {"n": c_nn}.
DiagonalCoeffs diagonal_from_json(const json& j);

// {"entries":[[z00, z01, ...], ...], "tailSup": s}; each z is a number,
// [re, im] or an "a+bi" string.
DenseCoeffs dense_from_json(const json& j);
json dense_to_json(const DenseCoeffs& d);

// Row-major, one matrix row per line, entries as "a+bi".
DenseCoeffs dense_from_csv(std::string_view text);
std::string dense_to_csv(const Eigen::MatrixXcd& m);

json complex_to_json(Complex z);
json residual_to_json(const ResidualReport& r);
json vanishing_to_json(const VanishingResult& v, std::int64_t bound);
json certificate_to_json(const Certificate& c);

std::string read_file(const std::string& path);
json read_json_file(const std::string& path);

// "lebesgue", "mu3", "mu4", inline JSON starting with '{', or a JSON file path.
MeasureSpec load_measure(const std::string& arg);

// Inline JSON or a file path.
GammaSet load_gamma(const std::string& arg);

// szego | bergman | k3 | k4 | gamma:<file> | diag:<file> | dense:<file>
// (dense files ending in .csv are read as CSV, anything else as JSON).
CoeffMatrix load_coeff_matrix(const std::string& arg);

} // namespace hardyrep::io
