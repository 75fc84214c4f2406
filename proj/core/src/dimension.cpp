#include "sphmax/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sphmax::dim {

namespace {

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

SlopeFit fit_top_half(const std::vector<double>& s, const std::vector<double>& x, int j_max) {
  // s[i], x[i] correspond to scale j = i + 1
  SlopeFit fit;
  fit.j_lo = (j_max + 1) / 2;
  fit.j_hi = j_max;
  std::vector<double> xs, ys;
  for (int j = fit.j_lo; j <= fit.j_hi; ++j) {
    xs.push_back(x[j - 1]);
    ys.push_back(s[j - 1]);
  }
  least_squares(xs, ys, fit.slope, fit.intercept);
  double lo = 1e300, hi = -1e300;
  for (int j = 1; j <= j_max; ++j) {
    const double ps = x[j - 1] != 0.0 ? s[j - 1] / x[j - 1] : 0.0;
    fit.per_scale.push_back(ps);
    if (j >= fit.j_lo) {
      lo = std::min(lo, ps);
      hi = std::max(hi, ps);
    }
  }
  fit.spread = hi - lo;
  return fit;
}

}  // namespace

BetaEstimate beta_estimate(entropy::ScanEngine& engine, int j_max) {
  if (j_max < 8) throw std::invalid_argument("beta_estimate: j_max must be >= 8");
  std::vector<double> s, x;
  for (int j = 1; j <= j_max; ++j) {
    const auto& rows = engine.levels(j);
    const auto count = rows.front().count;  // level 0 = unit windows
    s.push_back(count > 0 ? std::log2(static_cast<double>(count)) : 0.0);
    x.push_back(static_cast<double>(j));
  }
  BetaEstimate est;
  est.fit = fit_top_half(s, x, j_max);
  est.raw = est.fit.slope;
  est.beta = clamp(est.raw, 0.0, 1.0);
  return est;
}

SpectrumPoint assouad_spectrum_estimate(entropy::ScanEngine& engine, double theta, int j_max) {
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("assouad_spectrum_estimate: theta must be in (0,1)");
  SpectrumPoint pt;
  pt.theta = theta;
  std::vector<double> s, x;
  int usable = 0;
  for (int j = 1; j <= j_max; ++j) {
    const int level = std::min(j, static_cast<int>(std::ceil(theta * j)));
    const auto& rows = engine.levels(j);
    const auto count = rows[level].count;
    s.push_back(count > 0 ? std::log2(static_cast<double>(count)) : 0.0);
    x.push_back((1.0 - theta) * j);
    if (j >= (j_max + 1) / 2 && level < j) ++usable;
  }
  pt.few_scales = usable < 4;
  pt.fit = fit_top_half(s, x, j_max);
  pt.dim = clamp(pt.fit.slope, 0.0, 1.0 + kEnvelopeTol);
  pt.nu = -(1.0 - theta) * pt.dim;
  return pt;
}

SpectrumReport spectrum_report(entropy::ScanEngine& engine,
                               const std::vector<double>& theta_grid, int j_max) {
  SpectrumReport rep;
  for (double th : theta_grid) rep.points.push_back(assouad_spectrum_estimate(engine, th, j_max));
  return rep;
}

NuSharpProfile NuSharpProfile::closed_form(double beta, double gamma) {
  if (!(beta >= 0.0 && beta <= gamma && gamma <= 1.0))
    throw std::invalid_argument("closed_form_profile: need 0 <= beta <= gamma <= 1");
  NuSharpProfile p;
  p.closed_form_ = true;
  p.beta_ = beta;
  p.gamma_ = gamma;
  p.rho_star_ = (beta == gamma) ? beta : 0.0;
  p.tol_ = 0.0;
  return p;
}

double NuSharpProfile::value(double rho) const {
  if (rho <= 0.0) return beta_;
  if (closed_form_) {
    if (beta_ == gamma_) return std::max(rho, beta_);
    if (rho <= gamma_) return (1.0 - beta_ / gamma_) * rho + beta_;
    return rho;
  }
  // piecewise-linear interpolation over the sample grid
  const auto& s = samples_;
  if (s.empty()) return std::max(rho, beta_);
  if (rho <= s.front().rho) {
    // samples start at some rho0 > 0: interpolate from (0, beta)
    const double t = rho / s.front().rho;
    return beta_ + t * (s.front().value - beta_);
  }
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (rho <= s[i].rho) {
      const double t = (rho - s[i - 1].rho) / (s[i].rho - s[i - 1].rho);
      return s[i - 1].value + t * (s[i].value - s[i - 1].value);
    }
  }
  // slope-1 continuation; nu_sharp(rho) = rho + c beyond the grid
  return s.back().value + (rho - s.back().rho);
}

double NuSharpProfile::convexity_violation() const {
  if (closed_form_ || samples_.size() < 3) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < samples_.size(); ++i) {
    const auto& a = samples_[i - 1];
    const auto& b = samples_[i];
    const auto& c = samples_[i + 1];
    const double t = (b.rho - a.rho) / (c.rho - a.rho);
    const double chord = a.value + t * (c.value - a.value);
    worst = std::max(worst, b.value - chord);
  }
  return worst;
}

double NuSharpProfile::max_spread() const {
  double m = 0.0;
  for (const auto& s : samples_) m = std::max(m, s.fit.spread);
  return m;
}

NuSharpProfile nu_sharp_estimate(entropy::ScanEngine& engine,
                                 const std::vector<double>& rho_grid, int j_max,
                                 double envelope_tol) {
  if (j_max < 10) throw std::invalid_argument("nu_sharp_estimate: j_max must be >= 10");
  if (rho_grid.empty()) throw std::invalid_argument("nu_sharp_estimate: empty rho grid");

  NuSharpProfile prof;
  prof.tol_ = envelope_tol;
  const double beta = beta_estimate(engine, j_max).beta;
  prof.beta_ = beta;

  std::vector<double> grid = rho_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  for (double rho : grid) {
    NuSharpProfile::Sample sm;
    sm.rho = rho;
    if (rho <= 0.0) {
      sm.value = sm.pre_clamp = beta;  // constant left of 0
      prof.samples_.push_back(sm);
      continue;
    }
    std::vector<double> v, x;
    for (int j = 1; j <= j_max; ++j) {
      const double m = engine.scan(j, rho).max_value();
      v.push_back(m > 0.0 ? std::log2(m) : 0.0);
      x.push_back(static_cast<double>(j));
    }
    sm.fit = fit_top_half(v, x, j_max);
    sm.pre_clamp = sm.fit.slope;
    sm.value = clamp(sm.pre_clamp, std::max(rho, beta), std::max(1.0, rho));
    prof.samples_.push_back(sm);
  }
  // enforce monotonicity exactly (post clamp)
  for (std::size_t i = 1; i < prof.samples_.size(); ++i)
    prof.samples_[i].value = std::max(prof.samples_[i].value, prof.samples_[i - 1].value);

  prof.gamma_ = gamma_estimate(prof);
  prof.rho_star_ = rho_star(prof, envelope_tol);
  return prof;
}

double gamma_estimate(const NuSharpProfile& profile, double tol) {
  const double beta = profile.beta();
  if (profile.is_closed_form()) return profile.gamma();
  const auto& s = profile.samples();
  double prev_rho = 0.0, prev_gap = beta;  // value(0) - 0 = beta
  for (const auto& sm : s) {
    if (sm.rho <= 0.0) continue;
    const double gap = sm.value - sm.rho;
    if (gap <= tol) {
      double rho_cross = sm.rho;
      if (prev_gap > tol && prev_gap != gap) {
        const double t = (prev_gap - tol) / (prev_gap - gap);
        rho_cross = prev_rho + t * (sm.rho - prev_rho);
      }
      return clamp(std::max(rho_cross, beta), beta, 1.0);
    }
    prev_rho = sm.rho;
    prev_gap = gap;
  }
  return 1.0;  // no crossing found on the grid
}

double rho_star(const NuSharpProfile& profile, double tol) {
  const double beta = profile.beta();
  if (profile.is_closed_form()) return profile.rho_star();
  double best = 0.0;
  for (const auto& sm : profile.samples()) {
    if (sm.rho <= 0.0) continue;
    if (sm.value <= beta + tol) best = std::max(best, sm.rho);
  }
  return clamp(best, 0.0, beta);
}

}  // namespace sphmax::dim
