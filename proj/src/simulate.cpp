#include "gwp/simulate.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <thread>

namespace gwp {

namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::config, "cannot open output file " + path.string());
  out << data;
  if (!out) throw Error(ErrorCode::config, "failed writing " + path.string());
}

}  // namespace

int SimulationTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<double> SimulationTable::column(const std::string& name) const {
  const int idx = column_index(name);
  if (idx < 0) throw Error(ErrorCode::config, "no column named \"" + name + "\"");
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[idx]);
  return out;
}

std::vector<std::string> reduced_columns(int dim) {
  std::vector<std::string> cols;
  cols.push_back("t");
  for (int i = 1; i <= dim; ++i) cols.push_back("q" + std::to_string(i));
  for (int i = 1; i <= dim; ++i) cols.push_back("p" + std::to_string(i));
  for (int i = 1; i <= dim; ++i)
    for (int j = 1; j <= dim; ++j) cols.push_back("A" + std::to_string(i) + std::to_string(j));
  for (int i = 1; i <= dim; ++i)
    for (int j = 1; j <= dim; ++j) cols.push_back("B" + std::to_string(i) + std::to_string(j));
  cols.push_back("H1");
  for (auto [i, j] : antisym_index_pairs(dim))
    cols.push_back("Jh_" + std::to_string(i + 1) + std::to_string(j + 1));
  for (auto [i, j] : antisym_index_pairs(dim))
    cols.push_back("J0_" + std::to_string(i + 1) + std::to_string(j + 1));
  return cols;
}

std::function<ReducedState(const ReducedState&, double)> make_reduced_stepper(
    const RunConfig& cfg, std::shared_ptr<const PotentialModel> model) {
  const SimulationConfig sim = cfg.sim;
  if (sim.integrator == IntegratorKind::variational_splitting) {
    return [sim, model](const ReducedState& w, double dt) {
      return variational_splitting_step(w, dt, *model, sim);
    };
  }
  if (sim.dynamics == DynamicsVariant::exact && !model->has_analytic_averages())
    throw Error(ErrorCode::config,
                "exact dynamics requires a potential with analytic Gaussian averages");
  const bool exact = sim.dynamics == DynamicsVariant::exact;
  return [sim, model, exact](const ReducedState& w, double dt) {
    std::function<TangentReduced(const ReducedState&)> rhs =
        [&](const ReducedState& s) {
          return exact ? heller_reduced_rhs(s, *model, sim)
                       : heller_asymptotic_rhs(s, *model, sim);
        };
    return rk4_step<ReducedState, TangentReduced>(rhs, w, dt);
  };
}

SimulationTable run_reduced_simulation(const RunConfig& cfg) {
  cfg.sim.validate();
  auto model = make_potential(cfg.potential, cfg.sim.dim);
  const ReducedState w0 = initial_state(cfg);
  const auto stepper = make_reduced_stepper(cfg, model);
  const long nsteps = step_count(cfg.sim);

  const Trajectory<ReducedState> traj =
      integrate<ReducedState>(w0, stepper, cfg.sim.dt, nsteps, cfg.sim.stride);

  SimulationTable table;
  table.columns = reduced_columns(cfg.sim.dim);
  table.rows.reserve(traj.records());
  const auto pairs = antisym_index_pairs(cfg.sim.dim);
  for (int r = 0; r < traj.records(); ++r) {
    const ReducedState& w = traj.states[r];
    std::vector<double> row;
    row.reserve(table.columns.size());
    row.push_back(traj.times[r]);
    for (int i = 0; i < cfg.sim.dim; ++i) row.push_back(w.q(i));
    for (int i = 0; i < cfg.sim.dim; ++i) row.push_back(w.p(i));
    for (int i = 0; i < cfg.sim.dim; ++i)
      for (int j = 0; j < cfg.sim.dim; ++j) row.push_back(w.A()(i, j));
    for (int i = 0; i < cfg.sim.dim; ++i)
      for (int j = 0; j < cfg.sim.dim; ++j) row.push_back(w.B()(i, j));
    row.push_back(reduced_hamiltonian(w, *model, cfg.sim, cfg.sim.dynamics));
    const Mat jh = semiclassical_angular_momentum(w, cfg.sim.hbar).mat();
    for (auto [i, j] : pairs) row.push_back(jh(i, j));
    const Mat j0 = classical_angular_momentum(w.q, w.p).mat();
    for (auto [i, j] : pairs) row.push_back(j0(i, j));
    table.rows.push_back(std::move(row));
  }

  const nlohmann::json resolved = resolved_config(cfg);
  table.metadata["config"] = resolved;
  table.metadata["library_version"] = kLibraryVersion;
  table.metadata["columns"] = table.columns;
  table.metadata["records"] = static_cast<int>(table.rows.size());
  table.metadata["hash"] = run_hash(resolved);
  return table;
}

std::string to_csv(const SimulationTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string run_hash(const nlohmann::json& resolved) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(resolved.dump())));
  return buf;
}

int thread_cap_from_env() {
  if (const char* env = std::getenv("GWP_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void simulate_to_dir(const std::string& config_path, const std::string& out_dir) {
  const RunConfig base = load_run_config(config_path);
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);

  if (!base.has_sweep()) {
    const SimulationTable table = run_reduced_simulation(base);
    write_file(dir / "trajectory.csv", to_csv(table));
    write_file(dir / "metadata.json", table.metadata.dump(2) + "\n");
    return;
  }

  std::vector<RunConfig> runs;
  const std::vector<double> hbars =
      base.sweep_hbar.empty() ? std::vector<double>{base.sim.hbar} : base.sweep_hbar;
  const std::vector<double> dts =
      base.sweep_dt.empty() ? std::vector<double>{base.sim.dt} : base.sweep_dt;
  for (double hb : hbars)
    for (double dt : dts) {
      RunConfig run = base;
      run.sweep_hbar.clear();
      run.sweep_dt.clear();
      run.sim.hbar = hb;
      run.sim.dt = dt;
      run.sim.validate();
      runs.push_back(std::move(run));
    }

  const int cap = thread_cap_from_env();
  std::vector<std::future<void>> inflight;
  auto drain = [&]() {
    for (auto& f : inflight) f.get();  // rethrows the first failure
    inflight.clear();
  };
  for (const RunConfig& run : runs) {
    inflight.push_back(std::async(std::launch::async, [run, dir]() {
      const SimulationTable table = run_reduced_simulation(run);
      const std::string hash = table.metadata["hash"].get<std::string>();
      write_file(dir / ("run-" + hash + ".csv"), to_csv(table));
      write_file(dir / ("run-" + hash + ".meta.json"), table.metadata.dump(2) + "\n");
    }));
    if (static_cast<int>(inflight.size()) >= cap) drain();
  }
  drain();
}

}  // namespace gwp
