#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace sphmax {

inline constexpr const char* kVersion = "0.1.0";

// Raised when a requested computation would exceed the configured
// desk-scale limits (sample sizes, quadrature node counts).
class ResourceCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  // s_j / j for every scale that entered the computation (j = j_lo..j_hi).
  std::vector<double> per_scale;
  int j_lo = 0;
  int j_hi = 0;
  // max - min of per-scale slopes over the regression window; convergence
  // diagnostic for limsup-type quantities.
  double spread = 0.0;
};

// Least-squares line through (xs[i], ys[i]).
inline void least_squares(std::span<const double> xs, std::span<const double> ys,
                          double& slope, double& intercept) {
  const std::size_t n = xs.size();
  if (n == 0) {
    slope = intercept = 0.0;
    return;
  }
  if (n == 1) {
    slope = 0.0;
    intercept = ys[0];
    return;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double dn = static_cast<double>(n);
  const double denom = dn * sxx - sx * sx;
  slope = denom != 0.0 ? (dn * sxy - sx * sy) / denom : 0.0;
  intercept = (sy - slope * sx) / dn;
}

// Chunked parallel map over [0, n). Results are combined by the caller in
// index order, so the outcome does not depend on the thread count.
inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t, std::size_t)>& chunk_fn) {
  if (threads <= 1 || n < 2) {
    chunk_fn(0, n);
    return;
  }
  const std::size_t nt = std::min<std::size_t>(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(nt);
  const std::size_t per = (n + nt - 1) / nt;
  for (std::size_t t = 0; t < nt; ++t) {
    const std::size_t lo = t * per;
    const std::size_t hi = std::min(n, lo + per);
    if (lo >= hi) break;
    pool.emplace_back(chunk_fn, lo, hi);
  }
  for (auto& th : pool) th.join();
}

// SplitMix64; used to derive independent, reproducible per-task RNG seeds.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace sphmax
