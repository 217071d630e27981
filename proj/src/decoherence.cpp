#include "catsim/decoherence.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "catsim/error.hpp"
#include "catsim/fock_io.hpp"

namespace catsim {

double EtaScenario::effective_noise() const {
  const double n = bath.total_occupancy();
  const double m = std::abs(bath.m);
  if (!theta) return n - m;
  return n + m * std::cos(2.0 * *theta + std::arg(bath.m));
}

double eta(const EtaScenario& s, double gamma_t) {
  if (!(gamma_t >= 0.0)) throw std::invalid_argument("eta: gamma t must be non-negative");
  double k = s.effective_noise();
  const double scale = 1.0 + s.bath.total_occupancy() + std::abs(s.bath.m);
  if (k < -0.5 - 1e-12 * scale) {
    std::ostringstream msg;
    msg << "eta: N + |M| cos(2 theta + Phi) = " << k << " < -1/2";
    throw UnphysicalReservoir(msg.str());
  }
  k = std::max(k, -0.5);
  const double e = std::exp(-2.0 * gamma_t);
  return 1.0 - e / (1.0 + 2.0 * k * (-std::expm1(-2.0 * gamma_t)));
}

std::vector<EtaPoint> eta_curve(const EtaScenario& s, const std::vector<double>& gamma_t) {
  std::vector<EtaPoint> out;
  out.reserve(gamma_t.size());
  for (double t : gamma_t) out.push_back({t, eta(s, t)});
  return out;
}

std::vector<double> gamma_t_grid(double gamma_t_max, std::size_t n) {
  if (!(gamma_t_max >= 0.0) || n == 0) throw std::invalid_argument("gamma_t_grid: need max >= 0 and n >= 1");
  std::vector<double> g(n + 1);
  for (std::size_t i = 0; i <= n; ++i) g[i] = gamma_t_max * static_cast<double>(i) / static_cast<double>(n);
  return g;
}

double fringe_attenuation(double alpha_abs, double eta_value) {
  return std::exp(-2.0 * alpha_abs * alpha_abs * eta_value);
}

void write_eta_csv(std::ostream& os, const std::vector<EtaRow>& rows) {
  os << "model,r,n_th,gamma_t,eta\n";
  for (const EtaRow& r : rows) {
    os << r.model << ',' << io::format_double(r.r) << ',' << io::format_double(r.n_th) << ','
       << io::format_double(r.gamma_t) << ',' << io::format_double(r.eta) << '\n';
  }
}

}  // namespace catsim
