#pragma once

#include <stdexcept>
#include <string>

namespace catsim {

// Number-basis truncation cannot hold the requested state.
class CutoffTooSmall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reservoir moments violate |M| <= sqrt(N(N+1)) or give negative variances.
class UnphysicalReservoir : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integration failed: stability guard, trace blowup, non-finite values.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sampling grid too small or too coarse for the requested quantity.
class GridError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace catsim
