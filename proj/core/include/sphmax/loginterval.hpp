#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sphmax {

// Closed interval in log2 coordinates u = log2(t).  The multiplicative
// metric d_x(s,t) = |log2(s/t)| on (0,inf) is the Euclidean metric in these
// coordinates, so diameter() is the d_x-diameter of [2^lo, 2^hi].
struct LogInterval {
  double lo = 0.0;
  double hi = 0.0;

  LogInterval() = default;
  LogInterval(double l, double h) : lo(l), hi(h) {
    if (!(l <= h)) throw std::invalid_argument("LogInterval: lo > hi");
  }

  double diameter() const { return hi - lo; }
  bool contains(double u) const { return u >= lo && u <= hi; }
  LogInterval shifted(double s) const { return LogInterval(lo + s, hi + s); }

  bool intersects(const LogInterval& o) const { return lo <= o.hi && o.lo <= hi; }
  LogInterval clipped_to(const LogInterval& o) const {
    return LogInterval(std::max(lo, o.lo), std::min(hi, o.hi));
  }
};

inline double log2_of(double t) { return std::log2(t); }
inline double exp2_of(double u) { return std::exp2(u); }

}  // namespace sphmax
