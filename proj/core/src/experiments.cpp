#include "sphmax/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sphmax/sample.hpp"
#include "sphmax/util.hpp"

namespace sphmax::sphere {

namespace {

double pow2(double e) { return std::exp2(e); }

struct PieceIntegral {
  double value = 0.0;  // volume * mean of |A_t f|^p |x|^alpha
  double min_avg = 1e300;
};

// volume * mean over n uniform samples of |A_t f(x)|^p |x|^alpha
template <class Region>
PieceIntegral piece_integral(const Region& region, const GridFunction& f, double t,
                             const QuadratureRule& rule, double p, double alpha, int n,
                             std::mt19937_64& rng) {
  PieceIntegral out;
  const int d = rule.d();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vec x = region.sample(rng);
    const double avg = spherical_average(f, x, t, rule);
    out.min_avg = std::min(out.min_avg, avg);
    const double w = std::pow(std::sqrt(norm2(x, d)), alpha);
    acc += std::pow(std::abs(avg), p) * w;
  }
  out.value = region.volume() * acc / n;
  return out;
}

// volume * mean of |y|^alpha over the support region
template <class Region>
double support_weight_integral(const Region& region, double alpha, int d, int n,
                               std::mt19937_64& rng) {
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vec y = region.sample(rng);
    acc += std::pow(std::sqrt(norm2(y, d)), alpha);
  }
  return region.volume() * acc / n;
}

ShellCapRegion scaled_region(ShellCapRegion r, double lambda) {
  for (auto& c : r.center) c *= lambda;
  r.r0 *= lambda;
  r.r1 *= lambda;
  r.horiz_cap *= lambda;
  return r;
}

TubeRegion scaled_region(TubeRegion r, double lambda) {
  r.hr0 *= lambda;
  r.hr1 *= lambda;
  r.z_center *= lambda;
  r.half_h *= lambda;
  return r;
}

BoxRegion scaled_region(BoxRegion r, double lambda) {
  r.half_w *= lambda;
  r.center_z *= lambda;
  r.half_h *= lambda;
  return r;
}

}  // namespace

QuadratureRule experiment_rule(int d, double angular_scale) {
  if (d == 2) return QuadratureRule::with_counts(2, std::int64_t(1) << 26);
  // only the ring count carries a cost; resolve the polar gate to ~1/8 of
  // the requested angular scale
  double need = std::numbers::pi * 8.0 / std::max(angular_scale, 1e-7);
  std::int64_t m_theta = 64;
  while (m_theta < need && m_theta < (std::int64_t(1) << 15)) m_theta <<= 1;
  return QuadratureRule::with_counts(3, std::int64_t(1) << 26, m_theta);
}

ExperimentReport lower_bound_experiment(const ExperimentConfig& cfg) {
  if (cfg.d != 2 && cfg.d != 3) throw std::invalid_argument("experiment: d must be 2 or 3");
  ExperimentReport rep;
  entropy::ScanEngine engine(cfg.spec, std::nullopt, setgen::kDefaultGuardBits, cfg.threads);
  const double lam = cfg.lambda;

  std::vector<double> xs, ys, ts;
  for (int j : cfg.j_list) {
    ExperimentRow row;
    row.j = j;
    int k = cfg.k_rule(j);
    if (cfg.knapp_case == KnappCase::SmallK) k = std::min(k, j / 2);
    row.k = k;
    const double delta = pow2(-j);

    const auto& levels = engine.levels(j);
    if (k >= static_cast<int>(levels.size())) {
      row.skipped = true;
      rep.rows.push_back(row);
      continue;
    }
    const auto& level_row = levels[k];
    row.cover_n = level_row.count;
    if (level_row.count <= 0) {
      row.skipped = true;
      rep.rows.push_back(row);
      continue;
    }
    // sampled radii within the maximizing window
    const setgen::SampledSet S = setgen::sample(cfg.spec, level_row.window, j);
    if (S.points.empty()) {
      row.skipped = true;
      rep.rows.push_back(row);
      continue;
    }
    std::vector<double> radii;
    radii.reserve(S.points.size());
    for (double u : S.points) radii.push_back(pow2(u));
    const std::vector<double> net = tau_net(radii, delta);
    row.tau_size = net.size();

    // anchor: sampled radius nearest the window midpoint
    const double mid = pow2(0.5 * (level_row.window.lo + level_row.window.hi));
    double a = radii.front();
    for (double t : radii)
      if (std::abs(t - mid) < std::abs(a - mid)) a = t;
    a = std::min(2.0, std::max(1.0, a));
    row.anchor = a;

    const double eps = cfg.eps;
    double numerator = 0.0;
    double norm_p = 0.0;
    if (cfg.knapp_case == KnappCase::SmallK) {
      const KnappConfig kc = KnappConfig::small_k(cfg.d, j, k, a, eps);
      SmallKPieces pieces = knapp_small_k(kc);
      const GridFunction f = lam == 1.0 ? pieces.f_q : scale_support(pieces.f_q, lam);
      const QuadratureRule rule = experiment_rule(cfg.d, pow2(k - j));
      std::vector<double> contributions(net.size(), 0.0);
      parallel_for(net.size(), cfg.threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
          std::mt19937_64 rng(mix_seed(cfg.seed, j * 1000003ULL + i));
          const ShellCapRegion piece = scaled_region(pieces.u_piece(net[i]), lam);
          contributions[i] = piece_integral(piece, f, lam * net[i], rule, cfg.p, cfg.alpha,
                                            cfg.n_samples_per_piece, rng)
                                 .value;
        }
      });
      for (double c : contributions) numerator += c;
      std::mt19937_64 rng(mix_seed(cfg.seed, j * 1000003ULL + 999999ULL));
      norm_p = support_weight_integral(scaled_region(pieces.q_box, lam), cfg.alpha, cfg.d,
                                       cfg.norm_samples, rng);
    } else {
      const KnappConfig kc = KnappConfig::large_k(cfg.d, j, k, a, eps);
      LargeKPieces pieces = knapp_large_k(kc);
      const GridFunction f = lam == 1.0 ? pieces.g_u : scale_support(pieces.g_u, lam);
      const QuadratureRule rule = experiment_rule(cfg.d, eps * pow2(k - j));
      std::vector<double> contributions(net.size(), 0.0);
      parallel_for(net.size(), cfg.threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
          std::mt19937_64 rng(mix_seed(cfg.seed, j * 1000003ULL + i));
          const TubeRegion piece = scaled_region(pieces.q_piece(net[i]), lam);
          contributions[i] = piece_integral(piece, f, lam * net[i], rule, cfg.p, cfg.alpha,
                                            cfg.n_samples_per_piece, rng)
                                 .value;
        }
      });
      for (double c : contributions) numerator += c;
      std::mt19937_64 rng(mix_seed(cfg.seed, j * 1000003ULL + 999999ULL));
      norm_p = support_weight_integral(scaled_region(pieces.u_support, lam), cfg.alpha, cfg.d,
                                       cfg.norm_samples, rng);
    }
    if (numerator <= 0.0 || norm_p <= 0.0) {
      row.skipped = true;
      rep.rows.push_back(row);
      continue;
    }
    row.log2_R = std::log2(numerator) / cfg.p - std::log2(norm_p) / cfg.p;
    row.theory_log2_R =
        -j * (cfg.d - 1) * (1.0 - 1.0 / cfg.p) +
        std::log2(static_cast<double>(row.cover_n)) / cfg.p -
        k * (cfg.alpha / cfg.p + (cfg.d - 1) * (2.0 / cfg.p - 1.0));
    rep.rows.push_back(row);
    xs.push_back(j);
    ys.push_back(row.log2_R);
    ts.push_back(row.theory_log2_R);
  }
  double ic = 0.0;
  least_squares(xs, ys, rep.measured_slope, ic);
  least_squares(xs, ts, rep.theory_slope, ic);
  return rep;
}

BallTestReport ball_test_experiment(const setgen::SetSpec& spec, int d, double p, double alpha,
                                    const std::vector<double>& delta_list, double beta,
                                    int radial_cells) {
  BallTestReport rep;
  rep.necessity_exponent = ((d - 1) * (p - 1.0) - beta - alpha) / p;
  std::vector<double> xs, ys;
  for (double delta : delta_list) {
    if (!(delta > 0.0 && delta < 0.5))
      throw std::invalid_argument("ball test: delta must be in (0, 1/2)");
    const int j_delta = std::max(1, static_cast<int>(std::ceil(-std::log2(delta))));
    const setgen::SampledSet S = setgen::sample(spec, LogInterval(0.0, 1.0), j_delta);
    if (S.points.empty()) continue;
    std::vector<double> radii;
    for (double u : S.points) radii.push_back(pow2(u));
    const std::vector<double> net = tau_net(radii, delta / 2.0);

    // merge the annuli [t - delta, t + delta]
    std::vector<std::pair<double, double>> segments;
    for (double t : net) {
      if (!segments.empty() && t - delta <= segments.back().second)
        segments.back().second = t + delta;
      else
        segments.emplace_back(t - delta, t + delta);
    }
    const QuadratureRule rule = experiment_rule(d, delta / 4.0);
    const GridFunction chi = BallIndicator{{0.0, 0.0, 0.0}, delta};
    PolarGridFn g;
    g.n_dirs = 1;
    for (const auto& [lo, hi] : segments) {
      const std::size_t base = g.radial_edges.empty() ? 0 : g.radial_edges.size();
      if (!g.radial_edges.empty() && lo > g.radial_edges.back()) {
        // gap between segments: zero-valued cell
        g.radial_edges.push_back(lo);
        g.values.push_back(0.0);
      } else if (g.radial_edges.empty()) {
        g.radial_edges.push_back(lo);
      }
      (void)base;
      for (int c = 1; c <= radial_cells; ++c) {
        const double r_hi = lo + (hi - lo) * c / radial_cells;
        const double r_mid = 0.5 * (g.radial_edges.back() + r_hi);
        Vec x{0.0, 0.0, 0.0};
        x[d - 1] = r_mid;
        // only radii within delta of r can contribute
        double best = 0.0;
        auto it = std::lower_bound(net.begin(), net.end(), r_mid - delta);
        for (; it != net.end() && *it <= r_mid + delta; ++it)
          best = std::max(best, spherical_average(chi, x, *it, rule));
        g.radial_edges.push_back(r_hi);
        g.values.push_back(best);
      }
    }
    const double num = weighted_norm(g, p, alpha, d);
    const double den = std::pow(shell_weight_integral(0.0, delta, alpha, d), 1.0 / p);
    BallTestRow row;
    row.delta = delta;
    row.ratio = num / den;
    row.log2_delta = std::log2(delta);
    row.log2_ratio = std::log2(std::max(row.ratio, 1e-300));
    rep.rows.push_back(row);
    xs.push_back(row.log2_delta);
    ys.push_back(row.log2_ratio);
  }
  double ic = 0.0;
  least_squares(xs, ys, rep.slope, ic);
  return rep;
}

ScalingReport scaling_invariance_test(const ExperimentConfig& base,
                                      const std::vector<double>& lambdas) {
  ScalingReport rep;
  ExperimentConfig cfg = base;
  cfg.lambda = 1.0;
  const ExperimentReport ref = lower_bound_experiment(cfg);
  for (double lam : lambdas) {
    cfg.lambda = lam;
    const ExperimentReport scaled = lower_bound_experiment(cfg);
    for (std::size_t i = 0; i < ref.rows.size() && i < scaled.rows.size(); ++i) {
      if (ref.rows[i].skipped || scaled.rows[i].skipped) continue;
      ScalingRow row;
      row.lambda = lam;
      row.j = ref.rows[i].j;
      row.r_base = ref.rows[i].log2_R;
      row.r_scaled = scaled.rows[i].log2_R;
      const double a = pow2(row.r_base), b = pow2(row.r_scaled);
      row.rel_dev = std::abs(a - b) / std::max(a, 1e-300);
      rep.max_rel_dev = std::max(rep.max_rel_dev, row.rel_dev);
      rep.rows.push_back(row);
    }
  }
  return rep;
}

PointwiseBoundReport pointwise_lower_bound(int d, KnappCase knapp_case,
                                           const std::vector<int>& j_list, KRule k_rule,
                                           double eps, std::uint64_t n_samples,
                                           std::uint64_t seed) {
  PointwiseBoundReport rep;
  double c_min = 1e300, c_max = 0.0;
  for (int j : j_list) {
    int k = k_rule(j);
    if (knapp_case == KnappCase::SmallK) k = std::min(k, j / 2);
    const double a = 1.5, t = 1.5;
    PointwiseBoundRow row;
    row.j = j;
    row.k = k;
    std::mt19937_64 rng(mix_seed(seed, j));
    double min_avg = 1e300;
    if (knapp_case == KnappCase::SmallK) {
      const KnappConfig kc = KnappConfig::small_k(d, j, k, a, eps);
      SmallKPieces pieces = knapp_small_k(kc);
      const ShellCapRegion piece = pieces.u_piece(t);
      const QuadratureRule rule = experiment_rule(d, pow2(k - j));
      for (std::uint64_t i = 0; i < n_samples; ++i) {
        const Vec x = piece.sample(rng);
        min_avg = std::min(min_avg, spherical_average(pieces.f_q, x, t, rule));
      }
    } else {
      const KnappConfig kc = KnappConfig::large_k(d, j, k, a, eps);
      LargeKPieces pieces = knapp_large_k(kc);
      const TubeRegion piece = pieces.q_piece(t);
      const QuadratureRule rule = experiment_rule(d, eps * pow2(k - j));
      for (std::uint64_t i = 0; i < n_samples; ++i) {
        const Vec x = piece.sample(rng);
        min_avg = std::min(min_avg, spherical_average(pieces.g_u, x, t, rule));
      }
    }
    row.min_avg = min_avg;
    row.c = min_avg / pow2((k - j) * (d - 1));
    c_min = std::min(c_min, row.c);
    c_max = std::max(c_max, row.c);
    rep.rows.push_back(row);
  }
  rep.c_ratio = c_min > 0.0 ? c_max / c_min : 1e300;
  return rep;
}

}  // namespace sphmax::sphere
