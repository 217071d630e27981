#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "catsim/config.hpp"
#include "catsim/presets.hpp"
#include "catsim/scenario.hpp"

namespace {

using catsim::Config;
using catsim::ConfigError;

struct Source {
  std::string config_path;
  std::string preset;
  std::vector<std::string> overrides;
};

void add_source_options(CLI::App* cmd, Source& src) {
  cmd->add_option("config", src.config_path, "scenario file");
  cmd->add_option("--preset", src.preset, "use a built-in preset instead of a file");
  cmd->add_option("--set", src.overrides, "override a key, e.g. --set reservoir.ns=2")->take_all();
}

Config load(const Source& src) {
  if (src.config_path.empty() == src.preset.empty()) throw ConfigError("give either a config file or --preset");
  Config c = src.preset.empty() ? Config::load(src.config_path) : catsim::preset_config(src.preset);
  for (const std::string& kv : src.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
    c.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return c;
}

std::string default_out(const Config& c) { return "runs/" + c.get_string("name", "scenario"); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cat-state formation in a degenerate parametric oscillator with squeezed reservoirs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", catsim::kVersion);

  Source run_src, sweep_src, validate_src;
  std::string run_out, sweep_out;
  bool quiet = false;
  std::size_t workers = 0;
  std::string preset_name;

  CLI::App* run = app.add_subcommand("run", "run one scenario");
  add_source_options(run, run_src);
  run->add_option("--out", run_out, "output directory (default runs/<name>)");
  run->add_flag("-q,--quiet", quiet, "no progress on stderr");

  CLI::App* sweep = app.add_subcommand("sweep", "run the sweep.<key> = [...] grid of a scenario");
  add_source_options(sweep, sweep_src);
  sweep->add_option("--out", sweep_out, "output directory (default runs/<name>)");
  sweep->add_option("--workers", workers, "concurrent points (default: CATSIM_WORKERS or 1)");
  sweep->add_flag("-q,--quiet", quiet, "no progress on stderr");

  CLI::App* list = app.add_subcommand("presets", "list presets, or print one as a config file");
  list->add_option("name", preset_name, "preset to print");

  CLI::App* validate = app.add_subcommand("validate", "check a scenario without running it");
  add_source_options(validate, validate_src);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const Config c = load(run_src);
      const std::string out = run_out.empty() ? default_out(c) : run_out;
      const catsim::RunResult r = catsim::run_scenario(c, out, {quiet});
      if (r.status != catsim::RunResult::Status::ok) std::cerr << "error: " << r.message << '\n';
      else if (!quiet) std::cerr << "wrote " << r.manifest.string() << '\n';
      return catsim::exit_code(r.status);
    }
    if (*sweep) {
      const Config c = load(sweep_src);
      const std::string out = sweep_out.empty() ? default_out(c) : sweep_out;
      const catsim::SweepResult r = catsim::run_sweep(c, out, workers, {quiet});
      for (const std::string& w : r.warnings) std::cerr << "warning: " << w << '\n';
      std::cerr << r.points << " points, " << r.failed << " failed; summary in " << out << "/summary.csv\n";
      return r.failed == 0 ? 0 : 3;
    }
    if (*list) {
      if (!preset_name.empty()) {
        const catsim::Preset* p = catsim::find_preset(preset_name);
        if (p == nullptr) throw ConfigError("unknown preset '" + preset_name + "'");
        std::cout << "# " << p->description << '\n' << p->text;
        return 0;
      }
      for (const catsim::Preset& p : catsim::presets()) std::cout << p.name << "\t" << p.description << '\n';
      return 0;
    }
    if (*validate) {
      Config c = load(validate_src);
      std::vector<std::string> sweep_keys;
      for (const auto& [key, e] : c.entries()) {
        if (key.rfind("sweep.", 0) == 0) sweep_keys.push_back(key);
      }
      // a sweep is checked at its first point
      for (const std::string& key : sweep_keys) {
        const catsim::ConfigEntry e = c.entry(key);
        if (!e.is_list) throw ConfigError("sweep values must be a list", e.line, key);
        if (!e.items.empty()) c.set(key.substr(6), e.items.front());
        c.erase(key);
      }
      const catsim::Scenario s = catsim::scenario_from_config(c);
      std::cout << "ok: " << s.name;
      if (s.kind == catsim::Scenario::Kind::dynamics) {
        std::cout << ", |alpha0| = " << std::abs(s.alpha0()) << ", N_c = " << s.effective_cutoff();
      }
      std::cout << '\n';
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
