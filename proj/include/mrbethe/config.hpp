// config.hpp — Run configuration for the command-line front end: flat
// key = value config files with section headers, CLI flags overriding.

#pragma once

#include "mrbethe/types.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mrbethe::cli {

enum class ModelId { BS, JC, TI, QBS, QJC, QTI, RawMR };

std::string to_string(ModelId id);
std::optional<ModelId> model_from_string(const std::string& name);

struct RunConfig {
    ModelId model = ModelId::BS;
    int n_atoms = 2;
    double spin = 0.5;
    double omega_f = 3.02;
    double alpha = 1.0;
    std::optional<double> delta{};
    std::optional<std::vector<double>> omega_a{};
    std::optional<std::vector<double>> raw_c{}; // c10 c20 c11 c21 c_1..c_Na
    int boson_cutoff = 24;
    std::optional<double> q{};
    std::vector<int> sectors{1};
    double t_max = 7.0;
    int t_steps = 2048;
    std::string out = "out.csv";
    std::uint64_t seed = 12345;
    // sweep-specific
    double delta_min = -0.5;
    double delta_max = 0.5;
    int delta_steps = 41;

    // Throws std::invalid_argument naming the violated invariant.
    void validate() const;
};

// Flat key=value text with [section] headers; '#' starts a comment.
std::map<std::string, std::string> parse_config_file(const std::string& path);

// Apply file entries onto a config (unknown keys are an error).
void apply_entries(RunConfig& cfg, const std::map<std::string, std::string>& entries);

// Locale-independent numeric formatting used by every writer.
std::string format_double(double v);

} // namespace mrbethe::cli
