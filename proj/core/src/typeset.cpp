#include "sphmax/typeset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sphmax::typeset {

namespace {

double clampd(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

}  // namespace

double p_beta(double beta, int d) { return 1.0 + beta / (d - 1); }
double p_gamma(double gamma, int d) { return 1.0 + gamma / (d - 1); }

double dagger(const dim::NuSharpProfile& profile, double s) {
  const double beta = profile.beta();
  const double tol = std::max(profile.envelope_tol(), 1e-9);
  if (s < beta - tol) throw std::domain_error("dagger: s below beta");
  if (s <= beta) s = beta;

  if (profile.is_closed_form()) {
    const double gamma = profile.gamma();
    if (beta == gamma) return s;  // invert max(rho, beta) above beta
    if (s <= gamma) return gamma * (s - beta) / (gamma - beta);
    return s;
  }

  // sup over the piecewise-linear interpolant of {rho >= 0 : value <= s};
  // knots are (0, beta) followed by the positive-rho samples.
  const auto& sm = profile.samples();
  double prev_rho = 0.0, prev_val = beta;
  double best = 0.0;
  bool any = false;
  for (const auto& a : sm) {
    if (a.rho <= 0.0) continue;
    any = true;
    if (a.value <= s) {
      best = a.rho;
    } else {
      if (a.value > prev_val) {
        const double t = (s - prev_val) / (a.value - prev_val);
        best = std::max(best, prev_rho + t * (a.rho - prev_rho));
      }
      return best;  // value is monotone, no admissible rho beyond the crossing
    }
    prev_rho = a.rho;
    prev_val = a.value;
  }
  if (!any) return s;  // no sampled knots: profile falls back to max(rho, beta)
  return prev_rho + (s - prev_val);  // slope-1 continuation past the grid
}

double U_of(double p, double beta, int d) { return (d - 1) * (p - 1.0) - beta; }

double L_of(double p, const dim::NuSharpProfile& profile, int d) {
  const double s = (d - 1) * (p - 1.0);
  return (d - 1) * (p - 2.0) - dagger(profile, s);
}

double theta_fn(double p, double alpha, const dim::NuSharpProfile& profile, int d) {
  const double arg = (d - 1) * (p - 2.0) - alpha;
  return std::max(alpha + profile.beta(), profile.value(arg));
}

double theta_margin(double p, double alpha, const dim::NuSharpProfile& profile, int d) {
  return (d - 1) * (p - 1.0) - theta_fn(p, alpha, profile, d);
}

double explicit_margin(double p, double alpha, const dim::NuSharpProfile& profile, int d) {
  const double s = (d - 1) * (p - 1.0);
  const double pbeta_margin = s - profile.beta();
  if (pbeta_margin < 0.0) return pbeta_margin;
  const double upper_margin = U_of(p, profile.beta(), d) - alpha;
  const double lower_margin = alpha - L_of(p, profile, d);
  return std::min({pbeta_margin, upper_margin, lower_margin});
}

bool contains(double p, double alpha, const dim::NuSharpProfile& profile, int d, double tol) {
  return theta_margin(p, alpha, profile, d) >= -tol;
}

bool necessary_conditions(double p, double alpha, double beta, int d) {
  return alpha >= -(d - 1) && alpha <= (d - 1) * (p - 1.0) - beta;
}

std::vector<double> default_p_grid(const dim::NuSharpProfile& profile, int d, double p_max,
                                   int n) {
  const double pb = p_beta(profile.beta(), d);
  std::vector<double> grid;
  grid.reserve(n);
  for (int i = 0; i < n; ++i)
    grid.push_back(pb + (p_max - pb) * static_cast<double>(i) / (n - 1));
  return grid;
}

TypeSetRegion region_boundary(const dim::NuSharpProfile& profile, int d,
                              const std::vector<double>& p_grid) {
  TypeSetRegion region;
  region.d = d;
  region.profile = profile;
  region.p_beta = p_beta(profile.beta(), d);
  region.p_gamma = p_gamma(profile.gamma(), d);
  const double spread = profile.max_spread();
  for (double p : p_grid) {
    if (p < region.p_beta - 1e-12) continue;
    BoundarySample b;
    b.inv_p = 1.0 / p;
    b.upper = U_of(p, profile.beta(), d) / p;
    b.lower = L_of(p, profile, d) / p;
    if (!profile.is_closed_form() && spread > 0.0) {
      // inner region: nu_sharp could be larger by the spread, shrinking the
      // admissible alpha range; outer region: the reverse.
      const double s = (d - 1) * (p - 1.0);
      const double dag_in = dagger(profile, std::max(profile.beta(), s - spread));
      const double dag_out = dagger(profile, s + spread);
      b.lower_inner = ((d - 1) * (p - 2.0) - dag_in) / p;
      b.lower_outer = ((d - 1) * (p - 2.0) - dag_out) / p;
    }
    region.boundary.push_back(b);
  }
  return region;
}

EquivalenceReport verify_equivalence(const dim::NuSharpProfile& profile, int d, int n_grid,
                                     double band) {
  EquivalenceReport rep;
  const int n = std::max(2, static_cast<int>(std::lround(std::sqrt(double(n_grid)))));
  const double x_lo = 0.02, x_hi = 1.0;
  const double y_lo = -(d - 1) - 0.5, y_hi = (d - 1) + 0.5;
  for (int ix = 0; ix < n; ++ix) {
    const double x = x_lo + (x_hi - x_lo) * ix / (n - 1);
    const double p = 1.0 / x;
    for (int iy = 0; iy < n; ++iy) {
      const double y = y_lo + (y_hi - y_lo) * iy / (n - 1);
      const double alpha = y * p;
      const double m_theta = theta_margin(p, alpha, profile, d);
      const double m_explicit = explicit_margin(p, alpha, profile, d);
      if (std::abs(m_theta) <= band || std::abs(m_explicit) <= band) {
        ++rep.excluded;
        continue;
      }
      ++rep.checked;
      if ((m_theta >= 0.0) != (m_explicit >= 0.0)) {
        ++rep.disagreements;
        if (rep.examples.size() < 16) rep.examples.emplace_back(p, alpha);
      }
    }
  }
  return rep;
}

double union_L(double p, const std::vector<std::pair<double, double>>& components, int d) {
  if (components.empty()) throw std::invalid_argument("union_L: no components");
  double beta = 0.0;
  for (const auto& [b, g] : components) {
    if (!(b >= 0.0 && b <= g && g <= 1.0))
      throw std::invalid_argument("union_L: need 0 <= beta_j <= gamma_j <= 1");
    beta = std::max(beta, b);
  }
  if (p < p_beta(beta, d) - 1e-12)
    throw std::domain_error("union_L: p below p_beta of the union");
  const double s = (d - 1) * (p - 1.0);
  double inner = 0.0;
  for (const auto& [b, g] : components) {
    if (g > b) inner = std::max(inner, b * (g - s) / (g - b));
  }
  return 1.0 - d + inner;
}

ConvexityReport convexity_check(const dim::NuSharpProfile& profile, int d, int nx, int ny) {
  ConvexityReport rep;
  const double x_lo = 1.0 / kDefaultPMax / 2.0, x_hi = 1.0;
  const double y_lo = -(d - 1) - 0.2, y_hi = (d - 1) + 0.2;
  const double cell_x = (x_hi - x_lo) / (nx - 1);
  const double cell_y = (y_hi - y_lo) / (ny - 1);

  // Membership and distance-to-boundary per grid node, in (1/p, alpha/p).
  std::vector<std::uint8_t> member(static_cast<std::size_t>(nx) * ny, 0);
  std::vector<std::uint8_t> near_boundary(static_cast<std::size_t>(nx) * ny, 0);
  const double xb = 1.0 / p_beta(profile.beta(), d);
  std::vector<std::pair<int, int>> members;
  for (int ix = 0; ix < nx; ++ix) {
    const double x = x_lo + cell_x * ix;
    const double p = 1.0 / x;
    const bool has_curves = x <= xb + 1e-12;
    const double yu = has_curves ? U_of(p, profile.beta(), d) / p : 0.0;
    const double yl = has_curves ? L_of(p, profile, d) / p : 0.0;
    for (int iy = 0; iy < ny; ++iy) {
      const double y = y_lo + cell_y * iy;
      const std::size_t idx = static_cast<std::size_t>(ix) * ny + iy;
      const bool in = has_curves && y >= yl - 1e-12 && y <= yu + 1e-12;
      member[idx] = in ? 1 : 0;
      // within ~2 cells of a boundary curve (or the p_beta cut)
      const bool nb = std::abs(x - xb) <= 2.0 * cell_x ||
                      (has_curves &&
                       (std::abs(y - yu) <= 2.0 * cell_y || std::abs(y - yl) <= 2.0 * cell_y));
      near_boundary[idx] = nb ? 1 : 0;
      if (in) members.emplace_back(ix, iy);
    }
  }
  rep.members = members.size();
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      const int mx = (members[a].first + members[b].first + 1) / 2;
      const int my = (members[a].second + members[b].second + 1) / 2;
      const std::size_t idx = static_cast<std::size_t>(mx) * ny + my;
      ++rep.pairs_checked;
      if (near_boundary[idx]) continue;
      if (!member[idx]) {
        ++rep.failures;
        if (rep.examples.size() < 8)
          rep.examples.push_back({x_lo + cell_x * members[a].first,
                                  y_lo + cell_y * members[a].second,
                                  x_lo + cell_x * members[b].first,
                                  y_lo + cell_y * members[b].second});
      }
    }
  }
  return rep;
}

}  // namespace sphmax::typeset
