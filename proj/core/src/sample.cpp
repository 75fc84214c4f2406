#include "sphmax/sample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sphmax/util.hpp"

namespace sphmax::setgen {

namespace {

constexpr double kWindowTol = 1e-9;

void check_budget(std::size_t have, std::size_t add) {
  if (have + add > kMaxSamplePoints)
    throw ResourceCapError("sample would exceed the point budget; lower j or shrink the window");
}

// Uniform grid over [lo, hi] with spacing <= subres, anchored at lo so the
// construction commutes with translations.
void fill_grid(std::vector<double>& out, double lo, double hi, double subres) {
  if (hi < lo) return;
  if (hi == lo) {
    out.push_back(lo);
    return;
  }
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / subres));
  check_budget(out.size(), n + 1);
  const double spacing = (hi - lo) / static_cast<double>(n);
  for (std::size_t i = 0; i <= n; ++i) out.push_back(lo + spacing * static_cast<double>(i));
}

void emit(const SetSpec& spec, const LogInterval& w, double subres, std::vector<double>& out);

void emit_sequence(const SequenceSet& s, const LogInterval& w, double subres,
                   std::vector<double>& out) {
  // Points u_n = log2(1 + n^-a), decreasing from u_1 = 1 and accumulating
  // at 0.  Enumerate exactly until consecutive gaps drop below subres, then
  // grid-fill the residual interval; covering counts at scale >= 4*subres
  // are unchanged by the swap.
  if (w.hi < 0.0 || w.lo > 1.0) return;
  std::vector<double> desc;
  double prev = std::log2(2.0);  // n = 1
  if (w.contains(prev)) desc.push_back(prev);
  for (std::size_t n = 2;; ++n) {
    const double u = std::log2(1.0 + std::pow(static_cast<double>(n), -s.a));
    const double gap = prev - u;
    if (gap < subres) {
      // tail: fill [max(w.lo, ~0), prev]
      const double lo_fill = std::max(w.lo, 0.5 * subres);
      const double hi_fill = std::min(prev - gap, w.hi);
      std::vector<double> grid;
      if (hi_fill >= lo_fill) fill_grid(grid, lo_fill, hi_fill, subres);
      for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
        if (desc.empty() || *it < desc.back() - 1e-18) desc.push_back(*it);
      }
      break;
    }
    if (u < w.lo - subres) break;  // below the window, nothing more to collect
    if (w.contains(u)) {
      check_budget(out.size() + desc.size(), 1);
      desc.push_back(u);
    }
    prev = u;
  }
  out.insert(out.end(), desc.rbegin(), desc.rend());
}

void emit_cantor(const CantorSet& c, const LogInterval& w, double subres,
                 std::vector<double>& out) {
  const double total = c.hi_log - c.lo_log;
  if (w.hi < c.lo_log || w.lo > c.hi_log) return;
  int m = 0;
  double len = total;
  while (len > subres) {
    ++m;
    len *= c.ratio;
    if (m > 200) throw ResourceCapError("cantor: generation overflow");
  }
  if (static_cast<double>(m) * std::log2(1.0 / c.ratio) > 40)
    throw ResourceCapError("cantor sample too fine");
  // Left endpoints of generation-m intervals, in order (depth-first, left
  // branch first yields sorted output).  Every point of the set lies in one
  // generation interval of length <= subres, hence within subres of its
  // left endpoint, which itself belongs to the set.
  struct Frame {
    double lo;
    double len;
    int depth;
  };
  std::vector<Frame> stack;
  stack.push_back({c.lo_log, total, 0});
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.lo > w.hi || f.lo + f.len < w.lo - subres) continue;
    if (f.depth == m) {
      if (w.contains(f.lo)) {
        check_budget(out.size(), 1);
        out.push_back(f.lo);
      }
      continue;
    }
    const double child = f.len * c.ratio;
    // push right child first so the left one is processed first
    stack.push_back({f.lo + f.len - child, child, f.depth + 1});
    stack.push_back({f.lo, child, f.depth + 1});
  }
}

void emit(const SetSpec& spec, const LogInterval& w, double subres, std::vector<double>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, FullRay>) {
          fill_grid(out, w.lo, w.hi, subres);
        } else if constexpr (std::is_same_v<T, FullInterval>) {
          const double lo = std::max(w.lo, n.lo_log);
          const double hi = std::min(w.hi, n.hi_log);
          if (lo <= hi) fill_grid(out, lo, hi, subres);
        } else if constexpr (std::is_same_v<T, Lacunary>) {
          const double b = n.step_log;
          const auto k_lo = static_cast<long long>(std::ceil(w.lo / b - 1e-12));
          const auto k_hi = static_cast<long long>(std::floor(w.hi / b + 1e-12));
          for (long long k = k_lo; k <= k_hi; ++k) {
            check_budget(out.size(), 1);
            out.push_back(static_cast<double>(k) * b);
          }
        } else if constexpr (std::is_same_v<T, SequenceSet>) {
          emit_sequence(n, w, subres, out);
        } else if constexpr (std::is_same_v<T, CantorSet>) {
          emit_cantor(n, w, subres, out);
        } else if constexpr (std::is_same_v<T, ExplicitPoints>) {
          for (double u : n.points_log)
            if (w.contains(u)) out.push_back(u);
        } else if constexpr (std::is_same_v<T, UnionSet>) {
          for (const auto& part : n.parts) {
            std::vector<double> sub;
            emit(part, w, subres, sub);
            std::vector<double> merged;
            merged.reserve(out.size() + sub.size());
            std::merge(out.begin(), out.end(), sub.begin(), sub.end(),
                       std::back_inserter(merged));
            out = std::move(merged);
          }
        } else if constexpr (std::is_same_v<T, ScaleSet>) {
          std::vector<double> sub;
          emit(*n.inner, w.shifted(-n.shift_log), subres, sub);
          for (double u : sub) out.push_back(u + n.shift_log);
        } else if constexpr (std::is_same_v<T, PeriodizeSet>) {
          const auto k_lo = static_cast<long long>(std::floor(w.lo)) - 1;
          const auto k_hi = static_cast<long long>(std::ceil(w.hi));
          for (long long k = k_lo; k <= k_hi; ++k) {
            const double s = static_cast<double>(k);
            LogInterval base(0.0, 1.0);
            const LogInterval want = w.shifted(-s);
            if (!base.intersects(want)) continue;
            std::vector<double> sub;
            emit(*n.inner, base.clipped_to(want), subres, sub);
            for (double u : sub) out.push_back(u + s);
          }
          std::sort(out.begin(), out.end());
        } else if constexpr (std::is_same_v<T, WindowRestrictSet>) {
          LogInterval base(n.r_log, n.r_log + 1.0);
          const LogInterval want = w.shifted(n.r_log);
          if (!base.intersects(want)) return;
          std::vector<double> sub;
          emit(*n.inner, base.clipped_to(want), subres, sub);
          for (double u : sub) out.push_back(u - n.r_log);
        }
      },
      *spec.node);
}

}  // namespace

SampledSet sample(const SetSpec& spec, const LogInterval& window, int j, int guard_bits) {
  if (j < 0) throw std::invalid_argument("sample: j must be >= 0");
  if (guard_bits < 2) throw std::invalid_argument("sample: guard_bits must be >= 2");
  if (window.diameter() > 1.0 + kWindowTol)
    throw std::invalid_argument("sample: window diameter must be <= 1");
  SampledSet s;
  s.window = window;
  s.resolution_j = j;
  s.guard_bits = guard_bits;
  const double subres = s.subresolution();
  emit(spec, window, subres, s.points);
  std::sort(s.points.begin(), s.points.end());
  s.points.erase(std::unique(s.points.begin(), s.points.end()), s.points.end());
  s.empty_intersection = s.points.empty();
  return s;
}

SampledSet sample_range(const SetSpec& spec, const LogInterval& range, int j, int guard_bits) {
  SampledSet acc;
  acc.window = range;
  acc.resolution_j = j;
  acc.guard_bits = guard_bits;
  const int blocks = std::max(1, static_cast<int>(std::ceil(range.diameter() - kWindowTol)));
  for (int b = 0; b < blocks; ++b) {
    const double lo = range.lo + static_cast<double>(b) * range.diameter() / blocks;
    const double hi = range.lo + static_cast<double>(b + 1) * range.diameter() / blocks;
    SampledSet part = sample(spec, LogInterval(lo, hi), j, guard_bits);
    std::vector<double> merged;
    merged.reserve(acc.points.size() + part.points.size());
    std::merge(acc.points.begin(), acc.points.end(), part.points.begin(), part.points.end(),
               std::back_inserter(merged));
    acc.points = std::move(merged);
  }
  acc.points.erase(std::unique(acc.points.begin(), acc.points.end()), acc.points.end());
  acc.empty_intersection = acc.points.empty();
  return acc;
}

}  // namespace sphmax::setgen
