#pragma once

#include <string>
#include <vector>

#include "gwp/config.hpp"
#include "gwp/conservation.hpp"
#include "gwp/integrators.hpp"

namespace gwp {

/// A finished run: column-labeled records plus the metadata document that
/// accompanies the CSV. Column order is a stable interface:
/// t, q1..qd, p1..pd, A row-major, B row-major, H1, Jh_<ij>..., J0_<ij>...
struct SimulationTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::json metadata;

  int column_index(const std::string& name) const;  // -1 when absent
  std::vector<double> column(const std::string& name) const;
};

std::vector<std::string> reduced_columns(int dim);

/// Runs the reduced dynamics described by the config (no sweep expansion).
SimulationTable run_reduced_simulation(const RunConfig& cfg);

/// Builds the stepper selected by cfg (splitting, or RK4 on the chosen
/// dynamics variant).
std::function<ReducedState(const ReducedState&, double)> make_reduced_stepper(
    const RunConfig& cfg, std::shared_ptr<const PotentialModel> model);

/// Serializes with 17 significant digits; byte-identical for identical input.
std::string to_csv(const SimulationTable& table);

std::uint64_t fnv1a64(std::string_view data);
std::string run_hash(const nlohmann::json& resolved);

/// Executes a config file into out_dir. Plain runs write trajectory.csv and
/// metadata.json; sweeps write run-<hash>.csv / run-<hash>.meta.json per grid
/// point, at most GWP_THREADS trajectories in flight.
void simulate_to_dir(const std::string& config_path, const std::string& out_dir);

int thread_cap_from_env();

}  // namespace gwp
