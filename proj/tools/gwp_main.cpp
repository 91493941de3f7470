// Command-line front end; talks to the library exclusively through the C API.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "gwp.h"

namespace {

int report_failure(gwp_status status) {
  std::fprintf(stderr, "error: %s\n", gwp_last_error());
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian wave packet dynamics: simulate, verify, plot"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gwp_version()));

  std::string config_path, out_dir;
  CLI::App* simulate = app.add_subcommand("simulate", "run a configured experiment");
  simulate->add_option("--config", config_path, "config JSON path")->required();
  simulate->add_option("--out", out_dir, "output directory")->required();

  std::string suite, fixture;
  CLI::App* check = app.add_subcommand("check", "run a verification suite");
  check->add_option("--suite", suite, "suite name")->required();
  check->add_option("--fixture", fixture, "fixture config path (suite default when omitted)");

  std::string csv_in, cols, svg_out, x_col = "t";
  CLI::App* plot = app.add_subcommand("plot", "render CSV columns as an SVG line plot");
  plot->add_option("--in", csv_in, "input CSV path")->required();
  plot->add_option("--cols", cols, "comma-separated column names")->required();
  plot->add_option("--out", svg_out, "output SVG path")->required();
  plot->add_option("--x", x_col, "x-axis column (default t)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (simulate->parsed()) {
    const gwp_status status = gwp_run_simulate(config_path.c_str(), out_dir.c_str());
    if (status != GWP_OK) return report_failure(status);
    std::printf("wrote %s\n", out_dir.c_str());
    return 0;
  }

  if (check->parsed()) {
    char* report = nullptr;
    const gwp_status status =
        gwp_run_check(suite.c_str(), fixture.empty() ? nullptr : fixture.c_str(), &report);
    if (report) {
      std::fputs(report, stdout);
      gwp_string_free(report);
    }
    if (status != GWP_OK && status != GWP_ERR_INVARIANT) return report_failure(status);
    return static_cast<int>(status);
  }

  const gwp_status status =
      gwp_run_plot(csv_in.c_str(), x_col.c_str(), cols.c_str(), svg_out.c_str());
  if (status != GWP_OK) return report_failure(status);
  std::printf("wrote %s\n", svg_out.c_str());
  return 0;
}
