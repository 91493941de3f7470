#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "gwp/potentials.hpp"
#include "gwp/wavepacket.hpp"

namespace gwp {

inline constexpr const char* kLibraryVersion = "1.0.0";

/// One experiment document: scalar parameters, potential spec, initial data
/// and an optional sweep over hbar and/or dt. Unknown keys are rejected.
struct RunConfig {
  SimulationConfig sim;
  nlohmann::json potential;
  Vec q0, p0;
  Mat A0, B0;
  std::vector<double> sweep_hbar;
  std::vector<double> sweep_dt;

  bool has_sweep() const { return !sweep_hbar.empty() || !sweep_dt.empty(); }
};

RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::string& path);

/// Instantiates the potential named by a spec object:
///   {"type": "harmonic", "k": scalar | [diag] | [[matrix]]}
///   {"type": "quartic_radial"}
///   {"type": "polynomial", "terms": [{"coeff": c, "exponents": [...]}, ...]}
std::shared_ptr<const PotentialModel> make_potential(const nlohmann::json& spec, int dim);

/// Initial reduced state of the run (validates the width matrices).
ReducedState initial_state(const RunConfig& cfg);

/// Canonical echo of the configuration with all defaults filled in; object
/// keys serialize in sorted order, so the dump is deterministic.
nlohmann::json resolved_config(const RunConfig& cfg);

}  // namespace gwp
