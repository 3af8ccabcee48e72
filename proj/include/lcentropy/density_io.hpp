#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "lcentropy/density.hpp"

namespace lcentropy {

/// Malformed density spec (unknown type, missing field, invariant violation).
struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parse {"type": "piecewise_exp_affine"|"step"|"grid", ...}.
Density parse_density_spec(const nlohmann::json& spec);

/// Read a spec from a file path, or from stdin when path is "-".
Density load_density(const std::string& path);

nlohmann::json to_json(const Density& d);

/// ScalarStats plus the gap and the log-concavity flags.
nlohmann::json stats_json(const Density& d);

}  // namespace lcentropy
