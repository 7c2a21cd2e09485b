#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "stripcalc/geometry.hpp"
#include "stripcalc/harmonic.hpp"
#include "stripcalc/measures.hpp"
#include "stripcalc/model_spaces.hpp"
#include "stripcalc/rational.hpp"
#include "stripcalc/transference.hpp"

namespace stripcalc {

using json = nlohmann::json;

cplx complex_from_json(const json& j);  // number or [re, im]
json to_json(cplx z);

// {"kind": "translation" | "shifted-translation" | "random-diagonalizable" | "jordan" | "spectral", ...}
// or the explicit form {"dim", "p", "eigenvalues", "basis", "omega0", "M", "thetaU"}
GroupGenerator model_from_json(const json& j);
json model_to_json(const GroupGenerator& A);

// {"atoms": [[s, w], ...], "gammas": [{"coeff", "theta", "lambda", "shift"}, ...]}
WeightedMeasure measure_from_json(const json& j);
json measure_to_json(const WeightedMeasure& mu);

json to_json(const GeometryEstimate& e);
json to_json(const BenchReport& r);
json to_json(const RateReport& r);
json to_json(const CayleyReport& r);
json to_json(const SchemeReport& r);
json to_json(const StabilityReport& r);
json to_json(const BoundReport& r);
json to_json(const FactorizationReport& r);
json to_json(const GroupRReport& r);

// FNV-1a over the canonical dump
std::string config_digest(const json& cfg);

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};
void write_csv(const Table& t, const std::string& path);
std::string format_number(double v);

}  // namespace stripcalc
