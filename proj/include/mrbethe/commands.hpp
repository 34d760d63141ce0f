// commands.hpp — CLI subcommand implementations. Each returns a process exit
// code: 0 success, 2 config error, 3 numerical failure.

#pragma once

#include "mrbethe/bethe.hpp"
#include "mrbethe/config.hpp"
#include "mrbethe/dynamics.hpp"

#include <optional>
#include <string>

namespace mrbethe::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr const char* kVersion = "0.1.0";

struct ModelInstance {
    models::OperatorMatrix H;
    hilbert::SpaceSpec space;
    hilbert::ModeKind kind = hilbert::ModeKind::Su11Boson;
    std::optional<models::MRParams> params{}; // rational models only
    double kappa0 = 0.0;
    bool bethe_solvable = false;
    bool sectored = true; // canonical-mode models have no charge sectors
};

ModelInstance build_model(const RunConfig& cfg);

// Vacuum pair + calibrated energy map for a Bethe-solvable instance.
struct BetheEngine {
    lax::VacuumEigenPair vac;
    bethe::EnergyMap emap;
};
BetheEngine make_bethe_engine(const ModelInstance& inst);

int cmd_spectrum(const RunConfig& cfg);
int cmd_bethe(const RunConfig& cfg);
int cmd_rabi(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);
int cmd_sweep(const RunConfig& cfg);
int cmd_compare(const RunConfig& cfg);

// Dispatch by subcommand name; validates the config first.
int run_command(const std::string& name, const RunConfig& cfg);

} // namespace mrbethe::cli
