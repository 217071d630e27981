#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "catsim/config.hpp"
#include "catsim/fock_states.hpp"
#include "catsim/integrator.hpp"
#include "catsim/liouvillian.hpp"
#include "catsim/reservoir.hpp"

namespace catsim {

inline constexpr const char* kVersion = "0.1.0";

/// Cutoffs above this need fock.allow_large = true.
inline constexpr std::size_t kLargeCutoff = 400;

enum class InitialKind { vacuum, coherent, cat_even, cat_odd, mixture, thermal };

struct InitialStateSpec {
  InitialKind kind = InitialKind::vacuum;
  cplx alpha{};  // coherent amplitude; unset (zero) for cats means alpha0
  double n_th = 0.0;
};

struct ReservoirSpec {
  ReservoirModel model = ReservoirModel::thermalized_squeezed;
  double n_s = 0.0;
  double n_th = 0.0;
  std::optional<double> r;      // squeeze parameter; overrides n_s when given
  double phi = 0.0;             // squeezing phase used with r
  std::optional<double> theta;  // squeezed quadrature; unset means arg(alpha0)
  ScheduleMode schedule = ScheduleMode::constant;
  double tau_on = 0.0;
};

struct SignatureSpec {
  std::optional<double> theta;  // cat axis; unset means arg(alpha0)
  bool negativity = true;
  bool c_l1_continuous = true;
  std::vector<double> quadrature_at;
  bool quadrature_all = false;
  std::vector<double> wigner_at;
  double wigner_step = 0.0;      // 0 picks the default
  double quadrature_step = 0.02;
  double l1_step = 0.02;
};

struct EtaSpec {
  std::vector<ReservoirModel> models{ReservoirModel::thermalized_squeezed};
  double n_th = 0.0;
  std::vector<double> r{0.0};
  double gamma_t_max = 3.0;
  std::size_t points = 300;
};

struct Scenario {
  std::string name = "scenario";
  enum class Kind { dynamics, eta } kind = Kind::dynamics;
  ModelParams model;
  InitialStateSpec initial;
  std::size_t cutoff = 0;  // 0 picks default_cutoff(alpha0)
  bool allow_large = false;
  ReservoirSpec reservoir;
  IntegrationPlan plan;
  double checkpoint_every = 0.0;
  SignatureSpec signatures;
  std::vector<double> rho_at;
  EtaSpec eta;

  cplx alpha0() const { return model.alpha0(); }
  std::size_t effective_cutoff() const;
  double axis_angle() const;     // signature quadrature angle
  double squeeze_angle() const;  // reservoir squeezed quadrature
  SqueezeSchedule schedule() const;
  FockDensityMatrix initial_state() const;
  /// Plan with the checkpoint list merged from every request.
  IntegrationPlan full_plan() const;
};

/// Builds a scenario from a parsed config. Throws ConfigError on unknown
/// keys, bad values, or inconsistent combinations.
Scenario scenario_from_config(const Config& config);

/// Every key accepted by scenario_from_config.
const std::vector<std::string>& known_config_keys();

struct CheckpointRow {
  double tau;
  double purity;
  double negativity;  // NaN when not requested
  double c_l1_cont;   // NaN when not requested
  double c_l1_fock;
  double odd_parity;
  double mean_n;
  double trace_err;
  double two_photon_phase;
};

struct RunResult {
  enum class Status { ok, config_error, numerical_failure } status = Status::ok;
  std::string message;
  std::vector<CheckpointRow> rows;
  std::filesystem::path manifest;
};

int exit_code(RunResult::Status status);

struct RunOptions {
  bool quiet = false;
};

/// Runs one scenario into `out_dir` (created if needed): trajectory.csv or
/// eta.csv, optional quadrature.csv / wigner.csv / rho CSVs, manifest.json.
/// Never throws for scenario failures; the status says what happened and a
/// partial manifest is still written.
RunResult run_scenario(const Config& config, const std::filesystem::path& out_dir, const RunOptions& options = {});

/// Expands the sweep.* keys of `config` into grid points and runs each in
/// out_dir/point_NNNN, writing out_dir/summary.csv. Duplicate points are
/// dropped with a warning. `workers` = 0 reads CATSIM_WORKERS (default 1).
struct SweepResult {
  std::size_t points = 0;
  std::size_t failed = 0;
  std::vector<std::string> warnings;
};

SweepResult run_sweep(const Config& config, const std::filesystem::path& out_dir, std::size_t workers = 0,
                      const RunOptions& options = {});

/// 64-bit FNV-1a over a file's bytes, as 16 hex digits.
std::string fnv1a_file(const std::filesystem::path& path);

}  // namespace catsim
