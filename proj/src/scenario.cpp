#include "catsim/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "catsim/decoherence.hpp"
#include "catsim/error.hpp"
#include "catsim/fock_io.hpp"
#include "catsim/signatures.hpp"

namespace catsim {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::string> kKnownKeys = {
    "name",
    "kind",
    "model.g",
    "model.g2",
    "model.lambda",
    "model.lambda_over_g2",
    "model.alpha0_abs",
    "model.chi_prime",
    "model.chi",
    "state.initial",
    "state.alpha_re",
    "state.alpha_im",
    "state.nth",
    "fock.cutoff",
    "fock.allow_large",
    "reservoir.model",
    "reservoir.ns",
    "reservoir.nth",
    "reservoir.r",
    "reservoir.phi",
    "reservoir.theta",
    "reservoir.schedule",
    "reservoir.tau_on",
    "plan.tau_end",
    "plan.checkpoint_every",
    "plan.checkpoints",
    "plan.dtau",
    "plan.method",
    "plan.rtol",
    "plan.atol",
    "plan.renorm_threshold",
    "plan.trace_abort",
    "signatures.theta",
    "signatures.negativity",
    "signatures.c_l1_cont",
    "signatures.quadrature_at",
    "signatures.wigner_at",
    "signatures.wigner_step",
    "signatures.quadrature_step",
    "signatures.l1_step",
    "output.rho_at",
    "eta.models",
    "eta.nth",
    "eta.r",
    "eta.gamma_t_max",
    "eta.points",
};

int line_of(const Config& c, const std::string& key) { return c.has(key) ? c.entry(key).line : 0; }

double positive(const Config& c, const std::string& key, double fallback) {
  const double v = c.get_double(key, fallback);
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("must be positive", line_of(c, key), key);
  return v;
}

double nonnegative(const Config& c, const std::string& key, double fallback) {
  const double v = c.get_double(key, fallback);
  if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("must be non-negative", line_of(c, key), key);
  return v;
}

std::optional<double> angle_or_auto(const Config& c, const std::string& key) {
  if (!c.has(key) || c.get_string(key, "auto") == "auto") return std::nullopt;
  return c.get_double(key, 0.0);
}

template <typename F>
auto wrap_enum(const Config& c, const std::string& key, F parse) {
  try {
    return parse(c.get_string(key, ""));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what(), line_of(c, key), key);
  }
}

ModelParams parse_model(const Config& c) {
  ModelParams p;
  if (c.has("model.g") && c.has("model.g2")) throw ConfigError("give model.g or model.g2, not both", line_of(c, "model.g2"), "model.g2");
  if (c.has("model.g")) {
    const double g = nonnegative(c, "model.g", 0.0);
    p.g2 = g * g;
  } else {
    p.g2 = nonnegative(c, "model.g2", 0.0);
  }
  if (c.has("model.chi") && c.has("model.chi_prime")) {
    throw ConfigError("give model.chi or model.chi_prime, not both", line_of(c, "model.chi"), "model.chi");
  }
  p.chi_prime = c.has("model.chi") ? c.get_double("model.chi", 0.0) * p.g2 : c.get_double("model.chi_prime", 0.0);

  const int pump_keys = c.has("model.lambda") + c.has("model.lambda_over_g2") + c.has("model.alpha0_abs");
  if (pump_keys > 1) {
    throw ConfigError("give exactly one of model.lambda, model.lambda_over_g2, model.alpha0_abs");
  }
  if (c.has("model.lambda")) {
    p.lambda = nonnegative(c, "model.lambda", 0.0);
  } else if (c.has("model.lambda_over_g2")) {
    p.lambda = nonnegative(c, "model.lambda_over_g2", 0.0) * p.g2;
  } else if (c.has("model.alpha0_abs")) {
    const double a = nonnegative(c, "model.alpha0_abs", 0.0);
    p.lambda = a * a * std::hypot(p.g2, p.chi_prime);
  }
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return p;
}

InitialKind parse_initial(const std::string& s) {
  if (s == "vacuum") return InitialKind::vacuum;
  if (s == "coherent") return InitialKind::coherent;
  if (s == "cat_even") return InitialKind::cat_even;
  if (s == "cat_odd") return InitialKind::cat_odd;
  if (s == "mixture") return InitialKind::mixture;
  if (s == "thermal") return InitialKind::thermal;
  throw std::invalid_argument("unknown initial state '" + s + "'");
}

std::vector<double> sorted_times(const Config& c, const std::string& key, double tau_end) {
  std::vector<double> t = c.get_doubles(key);
  for (double v : t) {
    if (!(v >= 0.0 && v <= tau_end)) throw ConfigError("times must lie in [0, plan.tau_end]", line_of(c, key), key);
  }
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

bool contains(const std::vector<double>& v, double t) { return std::find(v.begin(), v.end(), t) != v.end(); }

std::string fmt(double v) { return io::format_double(v); }

std::string short_fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string tau_label(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04zu", index);
  return buf;
}

void write_quadrature_rows(std::ostream& os, double tau, const QuadratureGrid& q) {
  for (std::size_t i = 0; i < q.x.size(); ++i) {
    os << fmt(tau) << ',' << fmt(q.theta) << ',' << fmt(q.x[i]) << ',' << fmt(q.density[i]) << '\n';
  }
}

void write_wigner_rows(std::ostream& os, double tau, const WignerGrid& w) {
  const std::size_t n = w.axis.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      os << fmt(tau) << ',' << fmt(w.axis.at(i)) << ',' << fmt(w.axis.at(j)) << ',' << fmt(w.at(i, j)) << '\n';
    }
  }
}

ReservoirState eta_bath(ReservoirModel model, double r, double n_th) {
  switch (model) {
    case ReservoirModel::squeezed_thermal: return squeezed_thermal(r, n_th, 0.0);
    case ReservoirModel::thermalized_squeezed: return thermalized_squeezed(r, n_th, 0.0);
    case ReservoirModel::vacuum_squeezed: {
      const double sh = std::sinh(r);
      return vacuum_squeezed(sh * sh, 0.0);
    }
  }
  return {};
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json row_json(const CheckpointRow& r) {
  return {{"tau", r.tau},           {"purity", r.purity},         {"negativity", r.negativity},
          {"c_l1_cont", r.c_l1_cont}, {"c_l1_fock", r.c_l1_fock}, {"odd_parity", r.odd_parity},
          {"mean_n", r.mean_n},     {"trace_err", r.trace_err},   {"two_photon_phase", r.two_photon_phase}};
}

// Outputs this runner may leave in a directory; cleared before each run so
// the manifest inventory matches the directory.
void clear_previous_outputs(const fs::path& dir) {
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const std::string n = e.path().filename().string();
    const bool ours = n == "trajectory.csv" || n == "quadrature.csv" || n == "wigner.csv" || n == "eta.csv" ||
                      n == "manifest.json" || (n.rfind("rho_", 0) == 0 && e.path().extension() == ".csv");
    if (ours) fs::remove(e.path());
  }
}

}  // namespace

const std::vector<std::string>& known_config_keys() { return kKnownKeys; }

std::size_t Scenario::effective_cutoff() const { return cutoff > 0 ? cutoff : default_cutoff(alpha0()); }

double Scenario::axis_angle() const { return signatures.theta ? *signatures.theta : std::arg(alpha0()); }

double Scenario::squeeze_angle() const { return reservoir.theta ? *reservoir.theta : std::arg(alpha0()); }

SqueezeSchedule Scenario::schedule() const {
  const ReservoirSpec& r = reservoir;
  ReservoirState base;
  switch (r.model) {
    case ReservoirModel::vacuum_squeezed: {
      double ns = r.n_s;
      if (r.r) ns = std::sinh(*r.r) * std::sinh(*r.r);
      base = vacuum_squeezed(ns, squeeze_angle());
      break;
    }
    case ReservoirModel::thermalized_squeezed:
      base = r.r ? thermalized_squeezed(*r.r, r.n_th, r.phi) : thermalized_squeezed_ns(r.n_s, r.n_th, squeeze_angle());
      break;
    case ReservoirModel::squeezed_thermal:
      base = squeezed_thermal(r.r.value_or(0.0), r.n_th, r.phi);
      break;
  }
  switch (r.schedule) {
    case ScheduleMode::constant: return SqueezeSchedule::constant(base);
    case ScheduleMode::step_on: return SqueezeSchedule::step_on(base, r.tau_on);
    case ScheduleMode::rotating: return SqueezeSchedule::rotating(base, squeeze_angle());
  }
  return SqueezeSchedule::constant(base);
}

FockDensityMatrix Scenario::initial_state() const {
  const std::size_t nc = effective_cutoff();
  const cplx a = initial.alpha == cplx{} ? alpha0() : initial.alpha;
  switch (initial.kind) {
    case InitialKind::vacuum: return vacuum(nc);
    case InitialKind::coherent: return coherent(initial.alpha, nc);
    case InitialKind::cat_even: return cat(a, Parity::even, nc);
    case InitialKind::cat_odd: return cat(a, Parity::odd, nc);
    case InitialKind::mixture: return coherent_mixture(a, nc);
    case InitialKind::thermal: return thermal_state(initial.n_th, nc);
  }
  return vacuum(nc);
}

IntegrationPlan Scenario::full_plan() const {
  IntegrationPlan p = plan;
  std::vector<double> t = p.checkpoints;
  t.push_back(0.0);
  if (checkpoint_every > 0.0) {
    const auto n = static_cast<std::size_t>(std::floor(p.tau_end / checkpoint_every * (1.0 + 1e-12)));
    for (std::size_t k = 1; k <= n; ++k) {
      double v = static_cast<double>(k) * checkpoint_every;
      if (std::abs(v - p.tau_end) <= 1e-12 * p.tau_end) v = p.tau_end;
      if (v <= p.tau_end) t.push_back(v);
    }
  }
  for (double v : signatures.quadrature_at) t.push_back(v);
  for (double v : signatures.wigner_at) t.push_back(v);
  for (double v : rho_at) t.push_back(v);
  t.push_back(p.tau_end);
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  p.checkpoints = t;
  return p;
}

Scenario scenario_from_config(const Config& c) {
  c.require_known(kKnownKeys, {"sweep."});
  Scenario s;
  s.name = c.get_string("name", "scenario");
  const std::string kind = c.get_string("kind", "dynamics");
  if (kind == "dynamics") {
    s.kind = Scenario::Kind::dynamics;
  } else if (kind == "eta") {
    s.kind = Scenario::Kind::eta;
  } else {
    throw ConfigError("expected dynamics or eta", line_of(c, "kind"), "kind");
  }

  if (s.kind == Scenario::Kind::eta) {
    s.eta.models.clear();
    for (const std::string& m : c.get_strings("eta.models")) {
      try {
        s.eta.models.push_back(parse_reservoir_model(m));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what(), line_of(c, "eta.models"), "eta.models");
      }
    }
    if (s.eta.models.empty()) s.eta.models = {ReservoirModel::thermalized_squeezed};
    s.eta.n_th = nonnegative(c, "eta.nth", 0.0);
    if (c.has("eta.r")) s.eta.r = c.get_doubles("eta.r");
    for (double r : s.eta.r) {
      if (!(r >= 0.0)) throw ConfigError("squeeze parameters must be non-negative", line_of(c, "eta.r"), "eta.r");
    }
    s.eta.gamma_t_max = nonnegative(c, "eta.gamma_t_max", 3.0);
    const long pts = c.get_int("eta.points", 300);
    if (pts < 1) throw ConfigError("must be at least 1", line_of(c, "eta.points"), "eta.points");
    s.eta.points = static_cast<std::size_t>(pts);
    return s;
  }

  s.model = parse_model(c);

  const std::string initial = c.get_string("state.initial", "vacuum");
  try {
    s.initial.kind = parse_initial(initial);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what(), line_of(c, "state.initial"), "state.initial");
  }
  s.initial.alpha = {c.get_double("state.alpha_re", 0.0), c.get_double("state.alpha_im", 0.0)};
  s.initial.n_th = nonnegative(c, "state.nth", 0.0);

  const long cutoff = c.get_int("fock.cutoff", 0);
  if (cutoff < 0) throw ConfigError("must be non-negative", line_of(c, "fock.cutoff"), "fock.cutoff");
  s.cutoff = static_cast<std::size_t>(cutoff);
  s.allow_large = c.get_bool("fock.allow_large", false);
  if (s.effective_cutoff() > kLargeCutoff && !s.allow_large) {
    std::ostringstream msg;
    msg << "cutoff " << s.effective_cutoff() << " exceeds " << kLargeCutoff
        << "; this run needs a lot of memory and time, set fock.allow_large = true to proceed";
    throw ConfigError(msg.str(), line_of(c, "fock.cutoff"), "fock.cutoff");
  }

  ReservoirSpec& r = s.reservoir;
  if (c.has("reservoir.model")) r.model = wrap_enum(c, "reservoir.model", parse_reservoir_model);
  r.n_s = nonnegative(c, "reservoir.ns", 0.0);
  r.n_th = nonnegative(c, "reservoir.nth", 0.0);
  if (c.has("reservoir.r")) r.r = nonnegative(c, "reservoir.r", 0.0);
  if (c.has("reservoir.r") && c.has("reservoir.ns")) {
    throw ConfigError("give reservoir.ns or reservoir.r, not both", line_of(c, "reservoir.r"), "reservoir.r");
  }
  if (r.model == ReservoirModel::squeezed_thermal && c.has("reservoir.ns")) {
    throw ConfigError("squeezed_thermal is parameterized by reservoir.r", line_of(c, "reservoir.ns"), "reservoir.ns");
  }
  if (r.model == ReservoirModel::vacuum_squeezed && r.n_th != 0.0) {
    throw ConfigError("vacuum_squeezed has no thermal part", line_of(c, "reservoir.nth"), "reservoir.nth");
  }
  r.phi = c.get_double("reservoir.phi", 0.0);
  r.theta = angle_or_auto(c, "reservoir.theta");
  if (c.has("reservoir.schedule")) r.schedule = wrap_enum(c, "reservoir.schedule", parse_schedule_mode);
  r.tau_on = nonnegative(c, "reservoir.tau_on", 0.0);
  if (c.has("reservoir.tau_on") && r.schedule != ScheduleMode::step_on) {
    throw ConfigError("only used with reservoir.schedule = step_on", line_of(c, "reservoir.tau_on"), "reservoir.tau_on");
  }

  IntegrationPlan& p = s.plan;
  p.tau_end = positive(c, "plan.tau_end", 0.02);
  s.checkpoint_every = nonnegative(c, "plan.checkpoint_every", 0.0);
  p.checkpoints = sorted_times(c, "plan.checkpoints", p.tau_end);
  p.dtau = nonnegative(c, "plan.dtau", 0.0);
  if (c.has("plan.method")) p.method = wrap_enum(c, "plan.method", parse_step_method);
  p.rtol = positive(c, "plan.rtol", p.rtol);
  p.atol = positive(c, "plan.atol", p.atol);
  p.renorm_threshold = positive(c, "plan.renorm_threshold", p.renorm_threshold);
  p.trace_abort = positive(c, "plan.trace_abort", p.trace_abort);

  SignatureSpec& g = s.signatures;
  g.theta = angle_or_auto(c, "signatures.theta");
  g.negativity = c.get_bool("signatures.negativity", true);
  g.c_l1_continuous = c.get_bool("signatures.c_l1_cont", true);
  if (c.has("signatures.quadrature_at") && c.get_strings("signatures.quadrature_at") == std::vector<std::string>{"all"}) {
    g.quadrature_all = true;
  } else {
    g.quadrature_at = sorted_times(c, "signatures.quadrature_at", p.tau_end);
  }
  g.wigner_at = sorted_times(c, "signatures.wigner_at", p.tau_end);
  g.wigner_step = nonnegative(c, "signatures.wigner_step", 0.0);
  g.quadrature_step = positive(c, "signatures.quadrature_step", 0.02);
  g.l1_step = positive(c, "signatures.l1_step", 0.02);
  s.rho_at = sorted_times(c, "output.rho_at", p.tau_end);

  // Surface parameter errors before any output is produced.
  try {
    (void)s.schedule();
    Liouvillian probe(s.model, s.schedule(), s.effective_cutoff());
    if (p.method == StepMethod::rk4) {
      const double dt = p.dtau > 0.0 ? p.dtau : default_step(probe);
      if (dt * probe.norm_estimate() >= 0.5) {
        std::ostringstream msg;
        msg << "plan.dtau violates the stability guard dtau * ||L|| < 0.5; use dtau <= " << 0.1 / probe.norm_estimate();
        throw ConfigError(msg.str(), line_of(c, "plan.dtau"), "plan.dtau");
      }
    }
    (void)s.initial_state();
  } catch (const UnphysicalReservoir& e) {
    throw ConfigError(e.what());
  } catch (const CutoffTooSmall& e) {
    throw ConfigError(e.what(), line_of(c, "fock.cutoff"), "fock.cutoff");
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return s;
}

int exit_code(RunResult::Status status) {
  switch (status) {
    case RunResult::Status::ok: return 0;
    case RunResult::Status::config_error: return 2;
    case RunResult::Status::numerical_failure: return 3;
  }
  return 3;
}

std::string fnv1a_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path.string());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (f) {
    f.read(buf, sizeof buf);
    const std::streamsize got = f.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

RunResult run_scenario(const Config& config, const fs::path& out_dir, const RunOptions& options) {
  using clock = std::chrono::steady_clock;
  const auto t_start = clock::now();
  double t_evolve = 0.0;
  double t_signatures = 0.0;

  RunResult result;
  json manifest;
  manifest["version"] = kVersion;
  manifest["started_utc"] = utc_timestamp();
  json echo = json::object();
  for (const auto& [key, e] : config.entries()) echo[key] = e.raw;
  manifest["scenario"] = echo;
  manifest["name"] = config.has("name") ? config.get_string("name", "") : "scenario";
  json warnings = json::array();
  std::vector<std::string> written;

  auto log = [&](const std::string& msg) {
    if (!options.quiet) std::cerr << "[" << manifest["name"].get<std::string>() << "] " << msg << '\n';
  };

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    result.status = RunResult::Status::config_error;
    result.message = "cannot create output directory " + out_dir.string() + ": " + ec.message();
    return result;
  }
  clear_previous_outputs(out_dir);

  auto open_csv = [&](const std::string& name, const std::string& header) {
    std::ofstream f(out_dir / name);
    if (!f) throw std::runtime_error("cannot write " + (out_dir / name).string());
    f << header << '\n';
    written.push_back(name);
    return f;
  };

  try {
    const Scenario s = scenario_from_config(config);
    manifest["name"] = s.name;

    if (s.kind == Scenario::Kind::eta) {
      std::vector<EtaRow> rows;
      const std::vector<double> grid = gamma_t_grid(s.eta.gamma_t_max, s.eta.points);
      for (ReservoirModel model : s.eta.models) {
        for (double r : s.eta.r) {
          const EtaScenario es{eta_bath(model, r, s.eta.n_th), std::nullopt};
          for (const EtaPoint& pt : eta_curve(es, grid)) {
            rows.push_back({std::string(to_string(model)), r, s.eta.n_th, pt.gamma_t, pt.eta});
          }
        }
      }
      std::ofstream f(out_dir / "eta.csv");
      write_eta_csv(f, rows);
      written.push_back("eta.csv");
      manifest["derived"] = {{"rows", rows.size()}};
    } else {
      const std::size_t nc = s.effective_cutoff();
      const cplx a0 = s.alpha0();
      const Liouvillian L(s.model, s.schedule(), nc);
      const IntegrationPlan plan = s.full_plan();
      const double dtau = plan.dtau > 0.0 ? plan.dtau : default_step(L);
      const double theta = s.axis_angle();
      const ReservoirState bath = s.schedule().base();
      manifest["derived"] = {
          {"alpha0", {{"re", a0.real()}, {"im", a0.imag()}, {"abs", std::abs(a0)}}},
          {"lambda", s.model.lambda},
          {"g2", s.model.g2},
          {"chi_prime", s.model.chi_prime},
          {"cutoff", nc},
          {"dtau", dtau},
          {"method", std::string(to_string(plan.method))},
          {"norm_estimate", L.norm_estimate()},
          {"kernel", std::string(L.kernel_set().name)},
          {"axis_theta", theta},
          {"squeeze_theta", s.squeeze_angle()},
          {"bath", {{"model", std::string(to_string(bath.model))}, {"n_total", bath.total_occupancy()},
                    {"n_th", bath.n_th}, {"m_re", bath.m.real()}, {"m_im", bath.m.imag()}}},
          {"schedule", std::string(to_string(s.reservoir.schedule))},
      };
      if (s.reservoir.schedule == ScheduleMode::step_on) manifest["derived"]["tau_on"] = s.reservoir.tau_on;

      std::ofstream traj = open_csv("trajectory.csv", "tau,purity,negativity,c_l1_cont,c_l1_fock,odd_parity,mean_n,trace_err");
      std::ofstream quad, wig;
      const bool want_quad = s.signatures.quadrature_all || !s.signatures.quadrature_at.empty();
      if (want_quad) quad = open_csv("quadrature.csv", "tau,theta,x,p_density");
      if (!s.signatures.wigner_at.empty()) wig = open_csv("wigner.csv", "tau,re_alpha,im_alpha,w");

      UniformGrid waxis = default_wigner_axis(a0);
      if (s.signatures.wigner_step > 0.0) waxis.step = s.signatures.wigner_step;
      UniformGrid qgrid = default_position_grid(a0);
      qgrid.step = s.signatures.quadrature_step;
      UniformGrid lgrid = default_position_grid(a0);
      lgrid.step = s.signatures.l1_step;
      std::size_t rho_index = 0;
      json rho_files = json::array();
      double boundary_worst = 0.0;

      log("N_c = " + std::to_string(nc) + ", |alpha0| = " + short_fmt(std::abs(a0)) + ", dtau = " + short_fmt(dtau) +
          ", kernels = " + std::string(L.kernel_set().name));

      FockDensityMatrix rho = s.initial_state();
      auto last = clock::now();
      const auto observer = [&](double tau, const FockDensityMatrix& r, double drift) {
        const auto t0 = clock::now();
        t_evolve += std::chrono::duration<double>(t0 - last).count();
        CheckpointRow row{};
        row.tau = tau;
        row.purity = purity(r);
        const NumberDistribution nd = number_distribution(r);
        row.odd_parity = nd.odd_weight;
        row.mean_n = nd.mean();
        row.trace_err = std::abs(drift);
        row.c_l1_fock = coherence_l1_number_basis(r);
        const cplx m2 = two_photon_moment(r);
        row.two_photon_phase = m2 == cplx{} ? 0.0 : std::arg(m2);
        row.negativity = kNaN;
        row.c_l1_cont = kNaN;
        const bool want_wigner = contains(s.signatures.wigner_at, tau);
        if (s.signatures.negativity || want_wigner) {
          const WignerGrid w = wigner(r, waxis);
          boundary_worst = std::max(boundary_worst, w.boundary_max());
          if (s.signatures.negativity) row.negativity = negativity(w);
          if (want_wigner) write_wigner_rows(wig, tau, w);
        }
        if (s.signatures.c_l1_continuous) row.c_l1_cont = coherence_l1_continuous(r, theta, lgrid);
        if (want_quad && (s.signatures.quadrature_all || contains(s.signatures.quadrature_at, tau))) {
          write_quadrature_rows(quad, tau, quadrature_distribution(r, theta, qgrid));
          write_quadrature_rows(quad, tau, quadrature_distribution(r, theta + 0.5 * std::numbers::pi, qgrid));
        }
        if (contains(s.rho_at, tau)) {
          const std::string name = "rho_" + tau_label(rho_index++) + ".csv";
          std::ofstream f(out_dir / name);
          io::write_csv(f, r);
          written.push_back(name);
          rho_files.push_back({{"name", name}, {"tau", tau}});
        }
        traj << fmt(row.tau) << ',' << fmt(row.purity) << ',' << fmt(row.negativity) << ',' << fmt(row.c_l1_cont)
             << ',' << fmt(row.c_l1_fock) << ',' << fmt(row.odd_parity) << ',' << fmt(row.mean_n) << ','
             << fmt(row.trace_err) << '\n';
        traj.flush();
        result.rows.push_back(row);
        if (r.tail_mass() > 1e-4) {
          warnings.push_back("tau = " + fmt(tau) + ": population above 0.9 N_c is " + fmt(r.tail_mass()) +
                             "; consider a larger cutoff");
        }
        last = clock::now();
        t_signatures += std::chrono::duration<double>(last - t0).count();
        log("tau = " + short_fmt(tau) + "  purity = " + short_fmt(row.purity) + "  odd = " + short_fmt(row.odd_parity));
        return true;
      };

      IntegrationStats stats;
      try {
        stats = evolve(L, rho, plan, observer);
      } catch (...) {
        json table = json::array();
        for (const CheckpointRow& row : result.rows) table.push_back(row_json(row));
        manifest["checkpoints"] = table;
        throw;
      }
      if (boundary_worst > 1e-8) {
        warnings.push_back("Wigner grid edge reaches |W| = " + fmt(boundary_worst) + "; enlarge the grid");
      }
      json table = json::array();
      for (const CheckpointRow& row : result.rows) table.push_back(row_json(row));
      manifest["checkpoints"] = table;
      if (!rho_files.empty()) manifest["density_matrices"] = rho_files;
      json renorms = json::array();
      for (const RenormEvent& e : stats.renorms) renorms.push_back({{"tau", e.tau}, {"drift", e.drift}});
      manifest["renormalizations"] = renorms;
      manifest["integration"] = {{"steps", stats.steps}, {"rejected", stats.rejected}, {"evaluations", stats.evaluations}};
    }
    result.status = RunResult::Status::ok;
  } catch (const ConfigError& e) {
    result.status = RunResult::Status::config_error;
    result.message = e.what();
  } catch (const NumericalFailure& e) {
    result.status = RunResult::Status::numerical_failure;
    result.message = e.what();
  } catch (const GridError& e) {
    result.status = RunResult::Status::numerical_failure;
    result.message = e.what();
  } catch (const CutoffTooSmall& e) {
    result.status = RunResult::Status::config_error;
    result.message = e.what();
  } catch (const UnphysicalReservoir& e) {
    result.status = RunResult::Status::config_error;
    result.message = e.what();
  } catch (const std::exception& e) {
    result.status = RunResult::Status::numerical_failure;
    result.message = e.what();
  }

  manifest["status"] = result.status == RunResult::Status::ok              ? "ok"
                       : result.status == RunResult::Status::config_error ? "config_error"
                                                                          : "numerical_failure";
  if (!result.message.empty()) manifest["error"] = result.message;
  manifest["warnings"] = warnings;
  json files = json::array();
  for (const std::string& name : written) {
    const fs::path p = out_dir / name;
    if (!fs::exists(p)) continue;
    files.push_back({{"name", name}, {"bytes", fs::file_size(p)}, {"fnv1a64", fnv1a_file(p)}});
  }
  manifest["files"] = files;
  manifest["timings"] = {{"total_s", std::chrono::duration<double>(clock::now() - t_start).count()},
                         {"evolve_s", t_evolve},
                         {"signatures_s", t_signatures}};
  result.manifest = out_dir / "manifest.json";
  std::ofstream(result.manifest) << manifest.dump(2) << '\n';
  if (result.status != RunResult::Status::ok) log("failed: " + result.message);
  return result;
}

SweepResult run_sweep(const Config& config, const fs::path& out_dir, std::size_t workers, const RunOptions& options) {
  SweepResult sweep;
  std::vector<std::string> keys;
  std::vector<std::vector<std::string>> values;
  Config base = config;
  for (const auto& [key, e] : config.entries()) {
    if (key.rfind("sweep.", 0) != 0) continue;
    const std::string target = key.substr(6);
    if (target.rfind("sweep.", 0) == 0 || target.empty()) throw ConfigError("malformed sweep key", e.line, key);
    if (!e.is_list) throw ConfigError("sweep values must be a list", e.line, key);
    keys.push_back(target);
    values.push_back(e.items);
    base.erase(key);
  }
  if (keys.empty()) throw ConfigError("no sweep.<key> = [...] entries");
  for (const std::string& k : keys) {
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), k) == kKnownKeys.end()) {
      throw ConfigError("sweep over unknown key", line_of(config, "sweep." + k), "sweep." + k);
    }
  }

  // Cartesian product, first key slowest.
  std::size_t total = 1;
  for (const auto& v : values) {
    total *= v.size();
    if (total > 1000000) throw ConfigError("sweep grid too large");
  }
  std::vector<std::vector<std::string>> points;
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::vector<std::string> p(keys.size());
    std::size_t rem = flat;
    for (std::size_t k = keys.size(); k-- > 0;) {
      p[k] = values[k][rem % values[k].size()];
      rem /= values[k].size();
    }
    points.push_back(std::move(p));
  }

  // Drop duplicates, comparing numeric values numerically.
  std::set<std::vector<std::string>> seen;
  std::vector<std::vector<std::string>> unique;
  for (const auto& p : points) {
    std::vector<std::string> canon;
    for (const std::string& v : p) {
      char* end = nullptr;
      const double d = std::strtod(v.c_str(), &end);
      canon.push_back(end != v.c_str() && *end == '\0' ? fmt(d) : v);
    }
    if (!seen.insert(canon).second) {
      std::string desc;
      for (std::size_t k = 0; k < keys.size(); ++k) desc += (k ? ", " : "") + keys[k] + " = " + p[k];
      sweep.warnings.push_back("duplicate sweep point dropped: " + desc);
      continue;
    }
    unique.push_back(p);
  }
  if (unique.size() > 10000) throw ConfigError("sweep grid exceeds 10000 points");
  sweep.points = unique.size();

  if (workers == 0) {
    const char* env = std::getenv("CATSIM_WORKERS");
    workers = env ? static_cast<std::size_t>(std::max(1L, std::strtol(env, nullptr, 10))) : 1;
  }
  workers = std::max<std::size_t>(1, std::min(workers, std::max<std::size_t>(1, unique.size())));

  fs::create_directories(out_dir);
  std::vector<RunResult> results(unique.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < unique.size(); i = next++) {
      Config point = base;
      for (std::size_t k = 0; k < keys.size(); ++k) point.set(keys[k], unique[i][k]);
      results[i] = run_scenario(point, out_dir / ("point_" + tau_label(i)), options);
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::ofstream summary(out_dir / "summary.csv");
  summary << "point";
  for (const std::string& k : keys) summary << ',' << k;
  summary << ",status,final_purity,peak_negativity,c_l1_cont\n";
  for (std::size_t i = 0; i < unique.size(); ++i) {
    const RunResult& r = results[i];
    if (r.status != RunResult::Status::ok) ++sweep.failed;
    double final_purity = kNaN, peak = kNaN, cl1 = kNaN;
    if (!r.rows.empty()) {
      final_purity = r.rows.back().purity;
      cl1 = r.rows.back().c_l1_cont;
      for (const CheckpointRow& row : r.rows) {
        if (!std::isnan(row.negativity)) peak = std::isnan(peak) ? row.negativity : std::max(peak, row.negativity);
      }
    }
    summary << i;
    for (const std::string& v : unique[i]) summary << ',' << v;
    summary << ',' << (r.status == RunResult::Status::ok ? "ok" : r.status == RunResult::Status::config_error ? "config_error" : "numerical_failure")
            << ',' << fmt(final_purity) << ',' << fmt(peak) << ',' << fmt(cl1) << '\n';
  }
  return sweep;
}

}  // namespace catsim
