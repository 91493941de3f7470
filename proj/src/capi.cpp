#include "gwp.h"

#include <cstring>
#include <fstream>
#include <memory>
#include <string>

#include "gwp/checks.hpp"
#include "gwp/config.hpp"
#include "gwp/plot.hpp"
#include "gwp/simulate.hpp"

namespace {

thread_local std::string g_last_error;

gwp_status to_status(const gwp::Error& e) {
  g_last_error = e.what();
  switch (e.code()) {
    case gwp::ErrorCode::numerical:
      return GWP_ERR_NUMERICAL;
    case gwp::ErrorCode::invariant:
      return GWP_ERR_INVARIANT;
    default:
      return GWP_ERR_CONFIG;
  }
}

gwp_status set_error(const std::exception& e) {
  g_last_error = e.what();
  return GWP_ERR_CONFIG;
}

template <class F>
gwp_status guarded(F&& f) {
  try {
    f();
    return GWP_OK;
  } catch (const gwp::Error& e) {
    return to_status(e);
  } catch (const std::exception& e) {
    return set_error(e);
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

struct gwp_model {
  std::shared_ptr<const gwp::PotentialModel> model;
  int dim;
};

struct gwp_trajectory {
  gwp::SimulationTable table;
};

extern "C" {

const char* gwp_version(void) { return gwp::kLibraryVersion; }

const char* gwp_last_error(void) { return g_last_error.c_str(); }

void gwp_string_free(char* s) { std::free(s); }

gwp_model* gwp_model_create(const char* spec_json, int dim) {
  if (!spec_json || dim <= 0) {
    g_last_error = "spec_json must be non-null and dim positive";
    return nullptr;
  }
  try {
    auto model = gwp::make_potential(nlohmann::json::parse(spec_json), dim);
    return new gwp_model{std::move(model), dim};
  } catch (const gwp::Error& e) {
    to_status(e);
  } catch (const std::exception& e) {
    set_error(e);
  }
  return nullptr;
}

void gwp_model_destroy(gwp_model* model) { delete model; }

int gwp_model_dim(const gwp_model* model) { return model ? model->dim : 0; }

gwp_status gwp_model_value(const gwp_model* model, const double* x, int dim, double* out) {
  if (!model || !x || !out || dim != model->dim) {
    g_last_error = "bad arguments to gwp_model_value";
    return GWP_ERR_CONFIG;
  }
  return guarded([&] { *out = model->model->value(Eigen::Map<const gwp::Vec>(x, dim)); });
}

gwp_status gwp_model_gradient(const gwp_model* model, const double* x, int dim, double* out) {
  if (!model || !x || !out || dim != model->dim) {
    g_last_error = "bad arguments to gwp_model_gradient";
    return GWP_ERR_CONFIG;
  }
  return guarded([&] {
    const gwp::Vec g = model->model->gradient(Eigen::Map<const gwp::Vec>(x, dim));
    for (int i = 0; i < dim; ++i) out[i] = g(i);
  });
}

gwp_status gwp_model_hessian(const gwp_model* model, const double* x, int dim, double* out) {
  if (!model || !x || !out || dim != model->dim) {
    g_last_error = "bad arguments to gwp_model_hessian";
    return GWP_ERR_CONFIG;
  }
  return guarded([&] {
    const gwp::Mat h = model->model->hessian(Eigen::Map<const gwp::Vec>(x, dim));
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) out[i * dim + j] = h(i, j);
  });
}

gwp_trajectory* gwp_simulate(const char* config_json) {
  if (!config_json) {
    g_last_error = "config_json must be non-null";
    return nullptr;
  }
  try {
    const gwp::RunConfig cfg = gwp::parse_run_config(nlohmann::json::parse(config_json));
    if (cfg.has_sweep())
      throw gwp::Error(gwp::ErrorCode::config,
                       "gwp_simulate runs a single trajectory; use gwp_run_simulate for sweeps");
    return new gwp_trajectory{gwp::run_reduced_simulation(cfg)};
  } catch (const gwp::Error& e) {
    to_status(e);
  } catch (const std::exception& e) {
    set_error(e);
  }
  return nullptr;
}

void gwp_trajectory_destroy(gwp_trajectory* traj) { delete traj; }

int gwp_trajectory_rows(const gwp_trajectory* traj) {
  return traj ? static_cast<int>(traj->table.rows.size()) : 0;
}

int gwp_trajectory_cols(const gwp_trajectory* traj) {
  return traj ? static_cast<int>(traj->table.columns.size()) : 0;
}

const char* gwp_trajectory_column_name(const gwp_trajectory* traj, int index) {
  if (!traj || index < 0 || index >= gwp_trajectory_cols(traj)) return nullptr;
  return traj->table.columns[index].c_str();
}

gwp_status gwp_trajectory_column(const gwp_trajectory* traj, const char* name, double* out,
                                 int capacity) {
  if (!traj || !name || !out) {
    g_last_error = "bad arguments to gwp_trajectory_column";
    return GWP_ERR_CONFIG;
  }
  return guarded([&] {
    const std::vector<double> col = traj->table.column(name);
    if (static_cast<int>(col.size()) > capacity)
      throw gwp::Error(gwp::ErrorCode::config, "output buffer too small");
    std::memcpy(out, col.data(), col.size() * sizeof(double));
  });
}

gwp_status gwp_trajectory_write_csv(const gwp_trajectory* traj, const char* path) {
  if (!traj || !path) {
    g_last_error = "bad arguments to gwp_trajectory_write_csv";
    return GWP_ERR_CONFIG;
  }
  return guarded([&] {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw gwp::Error(gwp::ErrorCode::config, std::string("cannot open ") + path);
    out << gwp::to_csv(traj->table);
  });
}

char* gwp_trajectory_metadata(const gwp_trajectory* traj) {
  if (!traj) return nullptr;
  return dup_string(traj->table.metadata.dump(2) + "\n");
}

gwp_status gwp_run_simulate(const char* config_path, const char* out_dir) {
  if (!config_path || !out_dir) {
    g_last_error = "config_path and out_dir must be non-null";
    return GWP_ERR_CONFIG;
  }
  return guarded([&] { gwp::simulate_to_dir(config_path, out_dir); });
}

gwp_status gwp_run_check(const char* suite, const char* fixture_path, char** report_json) {
  if (!suite) {
    g_last_error = "suite must be non-null";
    return GWP_ERR_CONFIG;
  }
  try {
    const gwp::CheckReport report =
        gwp::run_check_suite(suite, fixture_path ? fixture_path : "");
    if (report_json) *report_json = dup_string(report.to_json().dump(2) + "\n");
    if (!report.pass) {
      g_last_error = "suite \"" + report.suite + "\" reported an invariant violation";
      return GWP_ERR_INVARIANT;
    }
    return GWP_OK;
  } catch (const gwp::Error& e) {
    return to_status(e);
  } catch (const std::exception& e) {
    return set_error(e);
  }
}

gwp_status gwp_run_plot(const char* csv_path, const char* x_column, const char* columns,
                        const char* svg_path) {
  if (!csv_path || !columns || !svg_path) {
    g_last_error = "csv_path, columns and svg_path must be non-null";
    return GWP_ERR_CONFIG;
  }
  return guarded([&] {
    std::vector<std::string> cols;
    std::string current;
    for (const char* c = columns; *c; ++c) {
      if (*c == ',') {
        if (!current.empty()) cols.push_back(current);
        current.clear();
      } else {
        current += *c;
      }
    }
    if (!current.empty()) cols.push_back(current);
    const gwp::CsvTable table = gwp::read_csv(csv_path);
    const std::string svg =
        gwp::render_line_plot(table, x_column && *x_column ? x_column : "t", cols);
    std::ofstream out(svg_path, std::ios::binary);
    if (!out) throw gwp::Error(gwp::ErrorCode::config, std::string("cannot open ") + svg_path);
    out << svg;
  });
}

}  // extern "C"
