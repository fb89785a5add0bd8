// config.hpp
// Run configuration: JSON schema, parsing with field-level validation,
// and the canonical serialization used for echoing and hashing.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qfock/errors.hpp"

namespace qfock {

// Inclusive linear grid; steps = 1 collapses to {min}.
struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    int steps = 1;
};

std::vector<double> grid_points(const GridSpec& g);

struct MomentumCfg {
    int label = 0;
    double omega = 1.0;
    double epsilon = 0.0;
};

struct RunConfig {
    std::vector<MomentumCfg> momenta;
    std::optional<int> cutoff;
    double tolerance = 1e-8;
    GridSpec beta_grid{0.2, 5.0, 5};
    GridSpec epsilon_grid{0.1, 1.0, 10};
    int n_pairs_max = 10;
    double epsilon_prime = 0.0;
    std::uint64_t seed = 0;
};

// Parses the JSON config document; throws validation_error naming the
// offending field. Unknown keys are rejected.
RunConfig parse_config(const std::string& text);

// Reads the file and parses it; I/O failures become validation_error.
RunConfig load_config(const std::string& path);

// Canonical JSON form with fixed key order; identical RunConfig values
// produce identical bytes. Basis of the config hash.
std::string canonical_config_json(const RunConfig& cfg);

} // namespace qfock
