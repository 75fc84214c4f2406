#pragma once

#include <vector>

#include "sphmax/loginterval.hpp"
#include "sphmax/setspec.hpp"

namespace sphmax::setgen {

inline constexpr int kDefaultGuardBits = 3;
// Refuse samples that would materialize more points than this.
inline constexpr std::size_t kMaxSamplePoints = 1u << 27;

// Finite stand-in for the set within `window` at covering scale 2^-j.
// Both directions of the Hausdorff guarantee hold at scale
// 2^-(resolution_j + guard_bits): every true point of the set inside the
// window is that close to a stored point, and every stored point is that
// close to a true point.
struct SampledSet {
  std::vector<double> points;  // strictly increasing log2 coordinates
  LogInterval window;
  int resolution_j = 0;
  int guard_bits = kDefaultGuardBits;
  bool empty_intersection = false;

  double subresolution() const { return std::exp2(-(resolution_j + guard_bits)); }
};

// window.diameter() must be <= 1 (+ small tolerance); j >= 0.
SampledSet sample(const SetSpec& spec, const LogInterval& window, int j,
                  int guard_bits = kDefaultGuardBits);

// Assembles a sample over an arbitrary bounded log-range by tiling unit
// windows; same guarantees as sample().
SampledSet sample_range(const SetSpec& spec, const LogInterval& range, int j,
                        int guard_bits = kDefaultGuardBits);

}  // namespace sphmax::setgen
