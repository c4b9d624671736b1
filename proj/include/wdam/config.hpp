#pragma once

#include "wdam/bounds.hpp"
#include "wdam/instance.hpp"

#include <json.hpp>

#include <string>

namespace wdam {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Problem instance as ingested from JSON:
//   {
//     "d": 1, "m": 1,
//     "taus": ["3/2", "1/2"],
//     "domain": [["0", "1"]],
//     "components": [[["1", [2]]]]        // f_1(x) = x^2
//   }
// Coefficients and endpoints accept fraction ("p/q") or decimal strings.
// "domain"/"components" may be omitted for weight-only commands.
struct ProblemConfig {
    WeightVector weights;
    std::optional<ManifoldSpec> manifold;
};

ProblemConfig load_problem(const nlohmann::json& j);
ProblemConfig load_problem_file(const std::string& path);

nlohmann::json rational_json(const Rat& value);

}  // namespace wdam
