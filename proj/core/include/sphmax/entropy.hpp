#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "sphmax/sample.hpp"
#include "sphmax/setspec.hpp"
#include "sphmax/util.hpp"

namespace sphmax::entropy {

// Exact minimum number of closed d_x-intervals of diameter delta covering
// S.points within I; the left-to-right greedy sweep is optimal for points
// on a line.  Requires 2^-(resolution+guard) <= delta/4.
std::int64_t cover_count(const setgen::SampledSet& S, const LogInterval& I, double delta);

// Low-level form on a sorted point span (no resolution check).
std::int64_t cover_count_points(std::span<const double> sorted, double lo, double hi,
                                double delta);

// Exhaustive oracle for cover_count: minimum over all covers whose interval
// left endpoints are anchored at points of the set.  Capped at 16 points.
int brute_force_cover_count(std::span<const double> sorted_points, double delta);

// One row per window length 2^-i: the maximizing window of the two-phase
// dyadic family at that length, together with its covering count.
struct CoverScan {
  int j = 0;        // delta = 2^-j
  double rho = 0.0;
  struct Row {
    int level = 0;  // window length 2^-level
    LogInterval window;
    std::int64_t count = 0;
    double value = 0.0;  // |J|^-rho * N = 2^(level*rho) * count
  };
  std::vector<Row> rows;
  std::size_t argmax = 0;  // index into rows

  const Row& best() const { return rows[argmax]; }
  double max_value() const { return rows.empty() ? 0.0 : rows[argmax].value; }
};

// Caches the per-level maxima of N(E cap J, 2^-j) over the two-phase dyadic
// window family, reusing one sample and one sweep for every rho.
class ScanEngine {
 public:
  explicit ScanEngine(setgen::SetSpec spec,
                      std::optional<LogInterval> declared_range = std::nullopt,
                      int guard_bits = setgen::kDefaultGuardBits, int threads = 1);

  // Max count (and its window) per level i = 0..j.
  const std::vector<CoverScan::Row>& levels(int j);

  CoverScan scan(int j, double rho);

  const setgen::SetSpec& spec() const { return spec_; }

 private:
  setgen::SetSpec spec_;
  setgen::ScanDomain domain_;
  int guard_bits_;
  int threads_;
  std::map<int, std::vector<CoverScan::Row>> cache_;
};

// Convenience wrapper matching the one-shot operation.
CoverScan scan_sup(const setgen::SetSpec& spec, int j, double rho,
                   std::optional<LogInterval> declared_range = std::nullopt,
                   int threads = 1);

// Proposition-style hypothesis functional: for each j <= j_max the max over
// scanned windows I of N(E cap I, 2^-j) * delta^((d-1)(p-1)-eps)
// * |I|^(alpha+(d-1)(2-p)), and the running sup over j.
struct MainAssuReport {
  std::vector<double> per_j;      // index 0 <-> j = 1
  std::vector<double> cumulative; // running max
  double value = 0.0;             // cumulative.back()
};

MainAssuReport check_mainassu(ScanEngine& engine, int d, double p, double alpha, double eps,
                              int j_max);

}  // namespace sphmax::entropy
