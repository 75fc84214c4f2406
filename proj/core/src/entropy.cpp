#include "sphmax/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sphmax/util.hpp"

namespace sphmax::entropy {

namespace {

// Tolerance for window membership; counts are insensitive to it away from
// exact ties.
constexpr double kEdgeTol = 1e-12;

}  // namespace

std::int64_t cover_count_points(std::span<const double> pts, double lo, double hi,
                                double delta) {
  if (delta <= 0.0) throw std::invalid_argument("cover_count: delta must be > 0");
  const double* begin = std::lower_bound(pts.data(), pts.data() + pts.size(), lo - kEdgeTol);
  const double* end = std::upper_bound(begin, pts.data() + pts.size(), hi + kEdgeTol);
  std::int64_t count = 0;
  const double* it = begin;
  while (it != end) {
    ++count;
    const double right = *it + delta;
    // skip everything inside the interval anchored at the leftmost
    // uncovered point
    ++it;
    while (it != end && *it <= right) ++it;
  }
  return count;
}

std::int64_t cover_count(const setgen::SampledSet& S, const LogInterval& I, double delta) {
  if (S.subresolution() > delta / 4.0 + 1e-15)
    throw ResolutionError("cover_count: sample resolution too coarse for requested delta");
  return cover_count_points(S.points, I.lo, I.hi, delta);
}

int brute_force_cover_count(std::span<const double> pts, double delta) {
  const std::size_t n = pts.size();
  if (n > 16) throw std::invalid_argument("brute_force_cover_count: more than 16 points");
  if (n == 0) return 0;
  // An optimal cover exists whose intervals start at set points, so search
  // all anchor subsets by increasing cardinality.
  const std::uint32_t full = (n >= 32) ? 0xffffffffu : ((1u << n) - 1u);
  for (int k = 1; k <= static_cast<int>(n); ++k) {
    // iterate subsets of size k
    std::uint32_t subset = (1u << k) - 1u;
    while (subset <= full) {
      std::uint32_t covered = 0;
      for (std::size_t a = 0; a < n; ++a) {
        if (!(subset & (1u << a))) continue;
        for (std::size_t q = 0; q < n; ++q)
          if (pts[q] >= pts[a] - 1e-15 && pts[q] <= pts[a] + delta + 1e-15)
            covered |= (1u << q);
      }
      if (covered == full) return k;
      // Gosper's hack: next subset with k bits
      const std::uint32_t c = subset & (~subset + 1u);
      const std::uint32_t r = subset + c;
      if (r == 0) break;
      subset = (((r ^ subset) >> 2) / c) | r;
    }
  }
  return static_cast<int>(n);
}

ScanEngine::ScanEngine(setgen::SetSpec spec, std::optional<LogInterval> declared_range,
                       int guard_bits, int threads)
    : spec_(std::move(spec)),
      domain_(setgen::resolve_scan_domain(spec_, declared_range)),
      guard_bits_(guard_bits),
      threads_(threads) {}

const std::vector<CoverScan::Row>& ScanEngine::levels(int j) {
  auto it = cache_.find(j);
  if (it != cache_.end()) return it->second;
  if (j < 0) throw std::invalid_argument("scan: j must be >= 0");

  // Sampled range: periodic sets contribute one period plus room for
  // windows of length up to 1 hanging off its right end.
  const double lo = domain_.range.lo;
  const double hi = domain_.periodic ? domain_.range.lo + domain_.period + 1.5
                                     : domain_.range.hi;
  const setgen::SampledSet S =
      setgen::sample_range(spec_, LogInterval(lo, hi), j, guard_bits_);
  const double delta = std::exp2(-j);
  // Window left offsets range over one period (periodic) or the bounded
  // log-range; two phases per level.
  const double offsets_end = domain_.periodic ? domain_.period : (domain_.range.hi - lo);

  std::vector<CoverScan::Row> rows;
  rows.reserve(j + 1);
  for (int level = 0; level <= j; ++level) {
    const double len = std::exp2(-level);
    const auto m_count = static_cast<std::size_t>(
        std::max(1.0, std::ceil(offsets_end / len - kEdgeTol)));
    // two phases: offsets m*len and (m + 1/2)*len
    const std::size_t total = 2 * m_count;
    std::vector<std::int64_t> best_count(std::max(threads_, 1), -1);
    std::vector<double> best_lo(std::max(threads_, 1), 0.0);
    std::vector<std::size_t> chunk_of(std::max(threads_, 1));

    auto run = [&](std::size_t chunk_idx, std::size_t a, std::size_t b) {
      std::int64_t bc = -1;
      double bl = 0.0;
      for (std::size_t w = a; w < b; ++w) {
        const std::size_t m = w / 2;
        const double phase = (w % 2 == 0) ? 0.0 : 0.5;
        const double wlo = lo + (static_cast<double>(m) + phase) * len;
        if (wlo >= lo + offsets_end - kEdgeTol && phase == 0.0 && m > 0) continue;
        const std::int64_t c = cover_count_points(S.points, wlo, wlo + len, delta);
        if (c > bc || (c == bc && wlo < bl)) {
          bc = c;
          bl = wlo;
        }
      }
      best_count[chunk_idx] = bc;
      best_lo[chunk_idx] = bl;
    };

    if (threads_ <= 1 || total < 64) {
      run(0, 0, total);
    } else {
      const std::size_t nt = std::min<std::size_t>(threads_, total);
      std::vector<std::thread> pool;
      const std::size_t per = (total + nt - 1) / nt;
      for (std::size_t t = 0; t < nt; ++t) {
        const std::size_t a = t * per, b = std::min(total, a + per);
        if (a >= b) break;
        pool.emplace_back(run, t, a, b);
      }
      for (auto& th : pool) th.join();
    }
    std::int64_t bc = -1;
    double bl = 0.0;
    for (std::size_t t = 0; t < best_count.size(); ++t) {
      if (best_count[t] > bc || (best_count[t] == bc && best_lo[t] < bl)) {
        bc = best_count[t];
        bl = best_lo[t];
      }
    }
    CoverScan::Row row;
    row.level = level;
    row.window = LogInterval(bl, bl + len);
    row.count = std::max<std::int64_t>(bc, 0);
    rows.push_back(row);
  }
  return cache_.emplace(j, std::move(rows)).first->second;
}

CoverScan ScanEngine::scan(int j, double rho) {
  if (j < 1) throw std::invalid_argument("scan_sup: j must be >= 1");
  CoverScan cs;
  cs.j = j;
  cs.rho = rho;
  cs.rows = levels(j);
  double best = -1.0;
  for (std::size_t i = 0; i < cs.rows.size(); ++i) {
    auto& r = cs.rows[i];
    r.value = std::exp2(static_cast<double>(r.level) * rho) * static_cast<double>(r.count);
    if (r.value > best) {
      best = r.value;
      cs.argmax = i;
    }
  }
  return cs;
}

CoverScan scan_sup(const setgen::SetSpec& spec, int j, double rho,
                   std::optional<LogInterval> declared_range, int threads) {
  ScanEngine engine(spec, declared_range, setgen::kDefaultGuardBits, threads);
  return engine.scan(j, rho);
}

MainAssuReport check_mainassu(ScanEngine& engine, int d, double p, double alpha, double eps,
                              int j_max) {
  if (d < 2) throw std::invalid_argument("check_mainassu: d must be >= 2");
  if (eps <= 0.0) throw std::invalid_argument("check_mainassu: eps must be > 0");
  MainAssuReport rep;
  const double delta_exp = (d - 1) * (p - 1.0) - eps;
  const double window_exp = alpha + (d - 1) * (2.0 - p);
  double running = 0.0;
  for (int j = 1; j <= j_max; ++j) {
    const auto& rows = engine.levels(j);
    double m = 0.0;
    for (const auto& r : rows) {
      // delta = 2^-j, |I| = 2^-level
      const double v = static_cast<double>(r.count) *
                       std::exp2(-j * delta_exp - r.level * window_exp);
      m = std::max(m, v);
    }
    rep.per_j.push_back(m);
    running = std::max(running, m);
    rep.cumulative.push_back(running);
  }
  rep.value = running;
  return rep;
}

}  // namespace sphmax::entropy
