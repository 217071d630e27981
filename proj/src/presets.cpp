#include "catsim/presets.hpp"

namespace catsim {

namespace {

// Shared blocks. lambda/g^2 = 100 with chi = 0 gives alpha0 = 10.
constexpr const char* kAlpha10 = R"(model.g = 2.5
model.lambda_over_g2 = 100
fock.cutoff = 160
)";

constexpr const char* kAlpha10Signatures = R"(plan.checkpoint_every = 0.0005
signatures.negativity = true
signatures.c_l1_cont = true
)";

std::string join(std::initializer_list<const char*> parts) {
  std::string s;
  for (const char* p : parts) s += p;
  return s;
}

std::vector<Preset> build() {
  std::vector<Preset> p;
  p.push_back({"fig1", "x/p quadrature formation at alpha0 = 10, squeezed bath N_s = 1",
               join({"name = fig1\n", kAlpha10, "reservoir.ns = 1\nplan.tau_end = 0.02\n", kAlpha10Signatures,
                     "signatures.quadrature_at = all\nsignatures.wigner_at = [0.015]\n"})});
  p.push_back({"fig1_unsqueezed", "as fig1 without squeezing",
               join({"name = fig1_unsqueezed\n", kAlpha10, "reservoir.ns = 0\nplan.tau_end = 0.02\n", kAlpha10Signatures,
                     "signatures.quadrature_at = all\nsignatures.wigner_at = [0.015]\n"})});
  p.push_back({"fig2", "photon-number distributions at tau = 0.0075 and 0.015, N_s in {0, 1} (sweep)",
               join({"name = fig2\n", kAlpha10,
                     "plan.tau_end = 0.015\nplan.checkpoint_every = 0.0025\noutput.rho_at = [0.0075, 0.015]\n"
                     "signatures.negativity = false\nsignatures.c_l1_cont = false\nsweep.reservoir.ns = [0, 1]\n"})});
  p.push_back({"fig3", "C_l1, negativity and purity for N_s in {0, 1, 2, 5} at alpha0 = 10 (sweep)",
               join({"name = fig3\n", kAlpha10, "plan.tau_end = 0.02\n", kAlpha10Signatures,
                     "sweep.reservoir.ns = [0, 1, 2, 5]\n"})});
  p.push_back({"fig5", "large-cat quadratures, reduced to g = 2, alpha0 = 10; N_s in {0, 2} (sweep)",
               "name = fig5\nmodel.g = 2\nmodel.lambda_over_g2 = 100\nfock.cutoff = 160\nplan.tau_end = 0.005\n"
               "plan.checkpoint_every = 0.00025\nsignatures.negativity = false\nsignatures.quadrature_at = all\n"
               "sweep.reservoir.ns = [0, 2]\n"});
  p.push_back({"fig5_full", "large cat, g = 2, lambda/g^2 = 400 (alpha0 = 20, N_c = 530); N_s in {0, 2} (sweep, slow)",
               "name = fig5_full\nmodel.g = 2\nmodel.lambda_over_g2 = 400\nfock.cutoff = 530\nfock.allow_large = true\n"
               "plan.tau_end = 0.005\nplan.checkpoint_every = 0.00025\nsignatures.negativity = false\n"
               "signatures.c_l1_cont = false\nsignatures.quadrature_at = all\nsweep.reservoir.ns = [0, 2]\n"});
  p.push_back({"fig6", "thermal noise N_th = 0.5, reduced to g = 2, alpha0 = 10; N_s in {0, 2} (sweep)",
               "name = fig6\nmodel.g = 2\nmodel.lambda_over_g2 = 100\nfock.cutoff = 160\nreservoir.nth = 0.5\n"
               "plan.tau_end = 0.005\nplan.checkpoint_every = 0.00025\nsignatures.quadrature_at = all\n"
               "output.rho_at = [0.005]\nsweep.reservoir.ns = [0, 2]\n"});
  p.push_back({"fig6_full", "thermal noise N_th = 0.5 at alpha0 = 20 (N_c = 530); N_s in {0, 2} (sweep, slow)",
               "name = fig6_full\nmodel.g = 2\nmodel.lambda_over_g2 = 400\nfock.cutoff = 530\nfock.allow_large = true\n"
               "reservoir.nth = 0.5\nplan.tau_end = 0.005\nplan.checkpoint_every = 0.00025\n"
               "signatures.negativity = false\nsignatures.c_l1_cont = false\nsignatures.quadrature_at = all\n"
               "output.rho_at = [0.005]\nsweep.reservoir.ns = [0, 2]\n"});
  p.push_back({"fig8", "Kerr chi = 5, N_th = 0: negativity and purity for N_s in {0, 1, 2, 5} (sweep)",
               join({"name = fig8\n", kAlpha10, "model.chi = 5\nplan.tau_end = 0.02\n", kAlpha10Signatures,
                     "sweep.reservoir.ns = [0, 1, 2, 5]\n"})});
  p.push_back({"fig8_nth1", "Kerr chi = 5, N_th = 1: negativity, purity, C_l1 for N_s in {0, 1, 2, 5} (sweep)",
               join({"name = fig8_nth1\n", kAlpha10, "model.chi = 5\nreservoir.nth = 1\nplan.tau_end = 0.02\n",
                     kAlpha10Signatures, "sweep.reservoir.ns = [0, 1, 2, 5]\n"})});
  p.push_back({"kerr_quadratures", "Kerr chi = 5 rotated x'/p' quadratures, N_s in {0, 2} (sweep)",
               join({"name = kerr_quadratures\n", kAlpha10, "model.chi = 5\nplan.tau_end = 0.02\n"
                     "plan.checkpoint_every = 0.0005\nsignatures.negativity = false\nsignatures.quadrature_at = all\n"
                     "sweep.reservoir.ns = [0, 2]\n"})});
  p.push_back({"fig9", "Kerr chi = 5, squeezing switched on at tau = 0.002, N_s in {0, 1, 2, 5} (sweep)",
               join({"name = fig9\n", kAlpha10, "model.chi = 5\nreservoir.schedule = step_on\nreservoir.tau_on = 0.002\n"
                     "plan.tau_end = 0.02\n", kAlpha10Signatures, "sweep.reservoir.ns = [0, 1, 2, 5]\n"})});
  p.push_back({"fig9_rotating", "Kerr chi = 5, squeezing axis following the cat amplitude, N_s = 2",
               join({"name = fig9_rotating\n", kAlpha10, "model.chi = 5\nreservoir.ns = 2\nreservoir.schedule = rotating\n"
                     "plan.tau_end = 0.02\n", kAlpha10Signatures})});
  const char* leghtas = R"(model.g = 1.41
model.chi_prime = 1.01
model.alpha0_abs = 2
fock.cutoff = 26
reservoir.nth = 0.02
reservoir.schedule = step_on
reservoir.tau_on = 0.1
plan.tau_end = 1
plan.checkpoint_every = 0.02
signatures.quadrature_at = all
)";
  p.push_back({"leghtas", "g = 1.41, chi' = 1.01, |alpha0| = 2, N_th = 0.02, N_s = 0.5 switched on at tau = 0.1",
               join({"name = leghtas\n", leghtas, "reservoir.ns = 0.5\n"})});
  p.push_back({"fig10", "alias of leghtas", join({"name = fig10\n", leghtas, "reservoir.ns = 0.5\n"})});
  p.push_back({"leghtas_unsqueezed", "leghtas without squeezing",
               join({"name = leghtas_unsqueezed\n", leghtas, "reservoir.ns = 0\n"})});
  p.push_back({"leghtas_ideal", "g = 1.41, chi' = 0, N_th = 0, |alpha0| = 2; N_s in {0, 0.5} (sweep)",
               "name = leghtas_ideal\nmodel.g = 1.41\nmodel.alpha0_abs = 2\nfock.cutoff = 26\n"
               "reservoir.schedule = step_on\nreservoir.tau_on = 0.1\nplan.tau_end = 1\nplan.checkpoint_every = 0.02\n"
               "sweep.reservoir.ns = [0, 0.5]\n"});
  p.push_back({"eta_fig11", "eta(gamma t), zero temperature, r in {0, 0.5, 1, 1.5, 2}",
               "name = eta_fig11\nkind = eta\neta.models = [thermalized_squeezed]\neta.nth = 0\n"
               "eta.r = [0, 0.5, 1, 1.5, 2]\neta.gamma_t_max = 3\neta.points = 300\n"});
  p.push_back({"eta_fig12", "eta(gamma t), squeezed thermal bath, N_th = 5",
               "name = eta_fig12\nkind = eta\neta.models = [squeezed_thermal]\neta.nth = 5\n"
               "eta.r = [0, 0.5, 1, 1.5, 2]\neta.gamma_t_max = 3\neta.points = 300\n"});
  p.push_back({"eta_fig13", "eta(gamma t), thermalized squeezed bath, N_th = 5",
               "name = eta_fig13\nkind = eta\neta.models = [thermalized_squeezed]\neta.nth = 5\n"
               "eta.r = [0, 0.5, 1, 1.5, 2]\neta.gamma_t_max = 3\neta.points = 300\n"});
  return p;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build();
  return all;
}

const Preset* find_preset(const std::string& name) {
  for (const Preset& p : presets()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

Config preset_config(const std::string& name) {
  const Preset* p = find_preset(name);
  if (p == nullptr) throw ConfigError("unknown preset '" + name + "' (see 'catsim presets')");
  return Config::parse_string(p->text);
}

}  // namespace catsim
