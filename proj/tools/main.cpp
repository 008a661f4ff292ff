#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "freemin/errors.hpp"
#include "freemin/experiment.hpp"
#include "freemin/plot.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;

int run_config_text(const std::string& text, const std::string& out_override) {
  freemin::ExperimentConfig config;
  try {
    config = freemin::parse_config(text);
  } catch (const freemin::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  if (!out_override.empty()) config.output_dir = out_override;
  return freemin::run_experiment(config);
}

int cmd_run(const std::string& config_path) {
  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read config file " << config_path << '\n';
    return kExitConfig;
  }
  std::ostringstream text;
  text << in.rdbuf();
  return run_config_text(text.str(), "");
}

int cmd_preset(const std::string& name, const std::string& out_dir) {
  try {
    return run_config_text(freemin::preset_text(name), out_dir);
  } catch (const freemin::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

int cmd_plot(const std::string& trace_path, const std::string& kind, const std::string& out) {
  std::ifstream in(trace_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read trace file " << trace_path << '\n';
    return kExitIo;
  }
  try {
    freemin::EnergyTrace trace = freemin::read_trace_csv(in);
    freemin::PlotKind plot_kind =
        kind == "energy" ? freemin::PlotKind::energy : freemin::PlotKind::error;
    freemin::emit_svg_plot(trace, plot_kind, out);
    return 0;
  } catch (const freemin::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const freemin::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"freemin: mirror descent for interacting free energies"};
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "run an experiment from a config file");
  run->add_option("config", config_path, "path to a key = value config file")->required();

  std::string preset_name;
  std::string preset_out;
  CLI::App* preset = app.add_subcommand("preset", "run a shipped experiment by name");
  preset->add_option("name", preset_name, "preset name (see 'presets')")->required();
  preset->add_option("--out", preset_out, "output directory override");

  CLI::App* presets = app.add_subcommand("presets", "list the shipped experiments");

  std::string trace_path;
  std::string plot_kind = "energy";
  std::string plot_out;
  CLI::App* plot = app.add_subcommand("plot", "render a trace CSV as an SVG chart");
  plot->add_option("trace", trace_path, "path to a *_trace.csv file")->required();
  plot->add_option("--kind", plot_kind, "series to plot")
      ->check(CLI::IsMember({"energy", "error"}));
  plot->add_option("--out", plot_out, "output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (run->parsed()) return cmd_run(config_path);
  if (preset->parsed()) return cmd_preset(preset_name, preset_out);
  if (presets->parsed()) {
    std::cout << freemin::list_presets();
    return 0;
  }
  if (plot->parsed()) return cmd_plot(trace_path, plot_kind, plot_out);
  return kExitConfig;
}
