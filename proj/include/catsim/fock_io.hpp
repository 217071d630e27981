#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "catsim/fock_states.hpp"

namespace catsim::io {

/// Binary checkpoint layout (all little-endian):
///   8 bytes   magic "CATRHO1\0"
///   uint64    N_c
///   float64   tau
///   then (N_c+1)^2 entries, row-major, each as float64 re, float64 im.
inline constexpr std::string_view kCheckpointMagic{"CATRHO1\0", 8};

struct Checkpoint {
  FockDensityMatrix rho;
  double tau = 0.0;
};

void write_checkpoint(std::ostream& os, const FockDensityMatrix& rho, double tau);
Checkpoint read_checkpoint(std::istream& is);

/// CSV with header "n,m,re,im"; entries with |rho_nm| <= 1e-14 are omitted.
void write_csv(std::ostream& os, const FockDensityMatrix& rho);
/// Reads the CSV form back; the cutoff is the largest index present unless
/// `cutoff` is given explicitly.
FockDensityMatrix read_csv(std::istream& is, std::size_t cutoff = 0);

/// "%.17g" formatting used by every CSV writer.
std::string format_double(double v);

}  // namespace catsim::io
