#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "netvuln/result.hpp"

namespace netvuln::cli {

// A validated experiment: one op, scalar or list-valued parameters, a master
// seed. List-valued parameters expand to a Cartesian sweep; list-typed
// fields that are semantically a single value (e.g. n_schedule) never sweep.
struct ExperimentConfig {
    std::string op;
    nlohmann::json params;
    std::uint64_t seed = 0;
    std::uint32_t replicas = 1;
    std::string out;                        // empty: stdout
    OutputFormat format = OutputFormat::JsonLines;
    bool with_timing = false;
};

// Validates field-by-field and throws ConfigError naming the offending
// field, its constraint and the value seen.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig parse_config_file(const std::string& path);

// Expands sweeps, derives one sub-seed per cell, dispatches each cell to the
// owning module, and never aborts the sweep on a per-cell failure.
std::vector<ResultRecord> run(const ExperimentConfig& config);

// Per-k CSV for the degrees op: k, mu_theory, x_empirical, abs_diff.
std::string degrees_csv(const std::vector<ResultRecord>& records);

}  // namespace netvuln::cli
