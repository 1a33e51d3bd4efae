// su11: sweeps, figure data, table reproduction and oracle verification.

#include "su11/errors.hpp"
#include "su11/sweep.hpp"
#include "su11/tables.hpp"
#include "su11/verify.hpp"
#include "su11/version.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

int emit_sweep(const su11::SweepConfig& config, const std::string& out_path) {
  const auto rows = su11::run_sweep(config);
  if (out_path.empty()) {
    su11::write_csv(std::cout, rows);
  } else {
    su11::write_sweep_files(config, rows, out_path);
  }
  return 0;
}

template <typename Fn>
int with_output(const std::string& path, Fn&& fn) {
  if (path.empty()) return fn(std::cout);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw su11::Error("cannot write '" + path + "'");
  return fn(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SU(1,1) and Mach-Zehnder Gaussian interferometry workbench"};
  app.set_version_flag("--version", su11::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_path;
  auto* sweep = app.add_subcommand("sweep", "Run a key=value configured parameter sweep");
  sweep->add_option("config", config_path, "Configuration file")->required();
  sweep->add_option("--set", overrides, "Override a config entry (key=value), repeatable");
  sweep->add_option("--out", out_path, "CSV output path (overrides the config's output)");

  std::string figure_out;
  std::vector<CLI::App*> figures;
  for (const char* name : {"fig2a", "fig2b", "fig2c"}) {
    auto* fig = app.add_subcommand(name, std::string("Figure data preset ") + name);
    fig->add_option("--out", figure_out, "CSV output path (stdout if omitted)");
    figures.push_back(fig);
  }

  std::string tables_out;
  auto* tables = app.add_subcommand("tables", "Compare bound tables with numeric values");
  tables->add_option("--out", tables_out, "Report path (stdout if omitted)");

  std::string grid_name = "default";
  bool failures_only = false;
  auto* verify = app.add_subcommand("verify", "Check Gaussian results against the Fock oracle");
  verify->add_option("--grid", grid_name, "Parameter grid")
      ->check(CLI::IsMember({"default", "extended"}));
  verify->add_flag("--failures-only", failures_only, "Only list failing checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (sweep->parsed()) {
      su11::SweepConfig config = su11::load_config(config_path);
      for (const auto& o : overrides) su11::apply_override(config, o);
      su11::validate(config);
      return emit_sweep(config, out_path.empty() ? config.output : out_path);
    }
    for (auto* fig : figures) {
      if (!fig->parsed()) continue;
      const auto which = su11::parse_preset(fig->get_name());
      return emit_sweep(su11::preset(*which), figure_out);
    }
    if (tables->parsed()) {
      const auto report = su11::run_tables();
      return with_output(tables_out, [&](std::ostream& out) {
        su11::print_report(out, report);
        return report.failures() == 0 ? 0 : kExitFailure;
      });
    }
    if (verify->parsed()) {
      const auto report = su11::run_verify(*su11::parse_grid(grid_name));
      su11::print_verify(std::cout, report, failures_only);
      return report.failures() == 0 ? 0 : kExitFailure;
    }
  } catch (const su11::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
