#include "mrbethe/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mrbethe::cli {

std::string to_string(ModelId id) {
    switch (id) {
        case ModelId::BS:    return "bs";
        case ModelId::JC:    return "jc";
        case ModelId::TI:    return "ti";
        case ModelId::QBS:   return "qbs";
        case ModelId::QJC:   return "qjc";
        case ModelId::QTI:   return "qti";
        case ModelId::RawMR: return "raw-mr";
    }
    return "unknown";
}

std::optional<ModelId> model_from_string(const std::string& name) {
    if (name == "bs") return ModelId::BS;
    if (name == "jc") return ModelId::JC;
    if (name == "ti") return ModelId::TI;
    if (name == "qbs") return ModelId::QBS;
    if (name == "qjc") return ModelId::QJC;
    if (name == "qti") return ModelId::QTI;
    if (name == "raw-mr") return ModelId::RawMR;
    return std::nullopt;
}

void RunConfig::validate() const {
    int provided = 0;
    if (delta) ++provided;
    if (omega_a) ++provided;
    if (raw_c) ++provided;
    require(provided == 1,
            "config: exactly one of {delta, omega_a list, raw c-parameters} must be provided");
    require(n_atoms >= 1, "config: na must be >= 1");
    require(boson_cutoff >= 2, "config: cutoff must be >= 2");
    const double two_s = 2.0 * spin;
    require(spin > 0.0 && std::abs(two_s - std::round(two_s)) < 1e-12,
            "config: spin must be a positive half-integer");
    int max_m = 0;
    for (int m : sectors) {
        require(m >= 0, "config: sectors must be >= 0");
        max_m = std::max(max_m, m);
    }
    require(boson_cutoff >= 2 * max_m + 4,
            "config: cutoff must satisfy cutoff >= 2*max(sectors)+4");
    if (omega_a)
        require(static_cast<int>(omega_a->size()) == n_atoms,
                "config: omega_a list length must equal na");
    if (raw_c)
        require(static_cast<int>(raw_c->size()) == 4 + n_atoms,
                "config: raw c-parameters must be c10 c20 c11 c21 followed by na inhomogeneities");
    const bool q_model = model == ModelId::QBS || model == ModelId::QJC || model == ModelId::QTI;
    require(!q_model || q.has_value(), "config: q models require the q parameter");
    require(t_steps >= 2, "config: steps must be >= 2");
    require(delta_steps >= 1, "config: delta-steps must be >= 1");
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open file " + path);
    std::map<std::string, std::string> entries;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto ltrim = line.find_first_not_of(" \t\r\n");
        if (ltrim == std::string::npos) continue;
        auto rtrim = line.find_last_not_of(" \t\r\n");
        line = line.substr(ltrim, rtrim - ltrim + 1);
        if (line.empty() || line.front() == '[') continue; // section headers are cosmetic
        const auto eq = line.find('=');
        require(eq != std::string::npos, "config: lines must be 'key = value'");
        auto strip = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        entries[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
    }
    return entries;
}

namespace {

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::string piece;
    std::stringstream ss(text);
    while (std::getline(ss, piece, ',')) {
        if (!piece.empty()) out.push_back(std::stod(piece));
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (double v : parse_double_list(text)) out.push_back(static_cast<int>(v));
    return out;
}

} // namespace

void apply_entries(RunConfig& cfg, const std::map<std::string, std::string>& entries) {
    for (const auto& [key, value] : entries) {
        if (key == "model") {
            auto id = model_from_string(value);
            require(id.has_value(), "config: unknown model name");
            cfg.model = *id;
        } else if (key == "na") {
            cfg.n_atoms = std::stoi(value);
        } else if (key == "spin") {
            cfg.spin = std::stod(value);
        } else if (key == "omega_f") {
            cfg.omega_f = std::stod(value);
        } else if (key == "alpha") {
            cfg.alpha = std::stod(value);
        } else if (key == "delta") {
            cfg.delta = std::stod(value);
        } else if (key == "omega_a") {
            cfg.omega_a = parse_double_list(value);
        } else if (key == "raw_c") {
            cfg.raw_c = parse_double_list(value);
        } else if (key == "cutoff") {
            cfg.boson_cutoff = std::stoi(value);
        } else if (key == "q") {
            cfg.q = std::stod(value);
        } else if (key == "sectors") {
            cfg.sectors = parse_int_list(value);
        } else if (key == "t_max") {
            cfg.t_max = std::stod(value);
        } else if (key == "steps") {
            cfg.t_steps = std::stoi(value);
        } else if (key == "out") {
            cfg.out = value;
        } else if (key == "seed") {
            cfg.seed = std::stoull(value);
        } else if (key == "delta_min") {
            cfg.delta_min = std::stod(value);
        } else if (key == "delta_max") {
            cfg.delta_max = std::stod(value);
        } else if (key == "delta_steps") {
            cfg.delta_steps = std::stoi(value);
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace mrbethe::cli
