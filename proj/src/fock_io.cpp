#include "catsim/fock_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace catsim::io {

namespace {

void put_u64(std::ostream& os, std::uint64_t v) {
  std::array<char, 8> bytes;
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
  os.write(bytes.data(), bytes.size());
}

std::uint64_t get_u64(std::istream& is) {
  std::array<unsigned char, 8> bytes;
  is.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!is) throw std::runtime_error("checkpoint: truncated stream");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return v;
}

void put_f64(std::ostream& os, double v) { put_u64(os, std::bit_cast<std::uint64_t>(v)); }
double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_checkpoint(std::ostream& os, const FockDensityMatrix& rho, double tau) {
  os.write(kCheckpointMagic.data(), kCheckpointMagic.size());
  put_u64(os, rho.cutoff());
  put_f64(os, tau);
  for (const cplx& v : rho.data()) {
    put_f64(os, v.real());
    put_f64(os, v.imag());
  }
  if (!os) throw std::runtime_error("checkpoint: write failed");
}

Checkpoint read_checkpoint(std::istream& is) {
  std::array<char, 8> magic{};
  is.read(magic.data(), magic.size());
  if (!is || std::string_view(magic.data(), magic.size()) != kCheckpointMagic) {
    throw std::runtime_error("checkpoint: bad magic");
  }
  const std::uint64_t cutoff = get_u64(is);
  if (cutoff > 100000) throw std::runtime_error("checkpoint: implausible cutoff");
  Checkpoint cp{FockDensityMatrix(static_cast<std::size_t>(cutoff)), 0.0};
  cp.tau = get_f64(is);
  for (cplx& v : cp.rho.data()) {
    const double re = get_f64(is);
    const double im = get_f64(is);
    v = {re, im};
  }
  return cp;
}

void write_csv(std::ostream& os, const FockDensityMatrix& rho) {
  os << "n,m,re,im\n";
  for (std::size_t n = 0; n < rho.dim(); ++n) {
    for (std::size_t m = 0; m < rho.dim(); ++m) {
      const cplx v = rho(n, m);
      if (std::abs(v) <= 1e-14) continue;
      os << n << ',' << m << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
    }
  }
}

FockDensityMatrix read_csv(std::istream& is, std::size_t cutoff) {
  std::string line;
  if (!std::getline(is, line) || line != "n,m,re,im") throw std::runtime_error("rho csv: bad header");
  std::vector<std::tuple<std::size_t, std::size_t, cplx>> entries;
  std::size_t max_index = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::size_t n = 0, m = 0;
    double re = 0, im = 0;
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(ss >> n >> c1 >> m >> c2 >> re >> c3 >> im) || c1 != ',' || c2 != ',' || c3 != ',') {
      throw std::runtime_error("rho csv: malformed line '" + line + "'");
    }
    max_index = std::max({max_index, n, m});
    entries.emplace_back(n, m, cplx{re, im});
  }
  if (cutoff == 0) cutoff = max_index;
  if (max_index > cutoff) throw std::runtime_error("rho csv: index exceeds cutoff");
  FockDensityMatrix rho(cutoff);
  for (const auto& [n, m, v] : entries) rho(n, m) = v;
  return rho;
}

}  // namespace catsim::io
