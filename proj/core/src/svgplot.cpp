#include "sphmax/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sphmax/util.hpp"

namespace sphmax::report {

namespace {

struct Frame {
  double x0, x1, y0, y1;   // data range
  double px, py, pw, ph;   // pixel viewport
  double X(double x) const { return px + (x - x0) / (x1 - x0) * pw; }
  double Y(double y) const { return py + ph - (y - y0) / (y1 - y0) * ph; }
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void polyline(std::ostringstream& os, const Frame& fr,
              const std::vector<std::pair<double, double>>& pts, const std::string& style) {
  os << "<polyline fill=\"none\" " << style << " points=\"";
  for (const auto& [x, y] : pts) os << num(fr.X(x)) << "," << num(fr.Y(y)) << " ";
  os << "\"/>\n";
}

void polygon(std::ostringstream& os, const Frame& fr,
             const std::vector<std::pair<double, double>>& pts, const std::string& style) {
  os << "<polygon " << style << " points=\"";
  for (const auto& [x, y] : pts) os << num(fr.X(x)) << "," << num(fr.Y(y)) << " ";
  os << "\"/>\n";
}

void text(std::ostringstream& os, double x, double y, const std::string& s, int size = 12) {
  os << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"" << size
     << "\" font-family=\"sans-serif\">" << s << "</text>\n";
}

void draw_region(std::ostringstream& os, const Frame& fr, const typeset::TypeSetRegion& region,
                 int d, bool with_labels) {
  const double beta = region.profile.beta();
  const double xb = 1.0 / region.p_beta;
  const double xg = 1.0 / region.p_gamma;

  // necessary-conditions trapezoid: (1-d)x <= y <= (d-1)(1-x) - beta x, x <= xb
  std::vector<std::pair<double, double>> trap{
      {0.0, 0.0},
      {xb, (1.0 - d) * xb},
      {xb, (d - 1) * (1.0 - xb) - beta * xb},
      {0.0, static_cast<double>(d - 1)}};
  polygon(os, fr, trap, "fill=\"none\" stroke=\"#888\" stroke-dasharray=\"4,3\"");

  std::vector<std::pair<double, double>> shade;
  for (const auto& b : region.boundary) shade.emplace_back(b.inv_p, b.upper);
  for (auto it = region.boundary.rbegin(); it != region.boundary.rend(); ++it)
    shade.emplace_back(it->inv_p, it->lower);
  polygon(os, fr, shade, "fill=\"#4477aa\" fill-opacity=\"0.35\" stroke=\"#224466\"");

  // markers at x_beta, x_gamma
  for (double xm : {xb, xg}) {
    std::vector<std::pair<double, double>> tick{{xm, fr.y0}, {xm, fr.y1}};
    polyline(os, fr, tick, "stroke=\"#aa4444\" stroke-dasharray=\"2,3\"");
  }
  if (with_labels) {
    text(os, fr.X(xb) + 2, fr.Y(fr.y0) - 4, "x_beta=" + num(xb));
    text(os, fr.X(xg) + 2, fr.Y(fr.y0) - 18, "x_gamma=" + num(xg));
  }
}

}  // namespace

std::string region_svg(const typeset::TypeSetRegion& region, const std::string& config_echo) {
  const int d = region.d;
  std::ostringstream os;
  const int W = 720, H = 560;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  os << "<!-- sphmax " << kVersion << " config: " << config_echo << " -->\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  Frame fr{-0.02, 1.05, -(double)(d - 1) - 0.3, (double)(d - 1) + 0.3, 50, 40, W - 90, H - 110};
  // axes
  polyline(os, fr, {{fr.x0, 0.0}, {fr.x1, 0.0}}, "stroke=\"#000\"");
  polyline(os, fr, {{0.0, fr.y0}, {0.0, fr.y1}}, "stroke=\"#000\"");
  text(os, fr.X(fr.x1) - 30, fr.Y(0.0) - 6, "1/p");
  text(os, fr.X(0.0) + 6, fr.Y(fr.y1) + 14, "alpha/p");

  draw_region(os, fr, region, d, true);

  // zoom inset around the lower-boundary kink (x_gamma .. x_beta)
  const double xb = 1.0 / region.p_beta, xg = 1.0 / region.p_gamma;
  if (xb - xg > 1e-9) {
    double ylo = 0.0, yhi = 0.0;
    for (const auto& b : region.boundary) {
      if (b.inv_p >= xg - 0.05 && b.inv_p <= xb + 0.05) {
        ylo = std::min(ylo, b.lower);
        yhi = std::max(yhi, b.upper);
      }
    }
    Frame inset{xg - 0.03, xb + 0.03, ylo - 0.05, yhi + 0.05, W - 290, 50, 240, 180};
    os << "<rect x=\"" << inset.px - 6 << "\" y=\"" << inset.py - 6 << "\" width=\""
       << inset.pw + 12 << "\" height=\"" << inset.ph + 12
       << "\" fill=\"#fff\" stroke=\"#555\"/>\n";
    draw_region(os, inset, region, d, false);
    text(os, inset.px, inset.py - 10, "zoom: lower boundary near 1/p_gamma", 11);
  }

  text(os, 50, H - 30, "type set in (1/p, alpha/p); dashed: necessary conditions", 12);
  os << "</svg>\n";
  return os.str();
}

std::string profile_svg(const dim::NuSharpProfile& profile, const std::string& config_echo) {
  std::ostringstream os;
  const int W = 640, H = 480;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  os << "<!-- sphmax " << kVersion << " config: " << config_echo << " -->\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  double rho_max = 2.0;
  if (!profile.samples().empty()) rho_max = std::max(rho_max, profile.samples().back().rho);
  Frame fr{-1.0, rho_max, -0.1, std::max(2.0, rho_max) + 0.1, 55, 30, W - 90, H - 90};
  polyline(os, fr, {{fr.x0, 0.0}, {fr.x1, 0.0}}, "stroke=\"#000\"");
  polyline(os, fr, {{0.0, fr.y0}, {0.0, fr.y1}}, "stroke=\"#000\"");

  auto curve = [&](const std::function<double(double)>& f, const std::string& style) {
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i <= 300; ++i) {
      const double r = fr.x0 + (fr.x1 - fr.x0) * i / 300.0;
      pts.emplace_back(r, f(r));
    }
    polyline(os, fr, pts, style);
  };
  curve([&](double r) { return std::max(r, profile.beta()); },
        "stroke=\"#999\" stroke-dasharray=\"3,3\"");
  curve([&](double r) { return std::max(1.0, r); }, "stroke=\"#999\" stroke-dasharray=\"5,3\"");
  curve([&](double r) { return profile.value(r); }, "stroke=\"#aa3322\" stroke-width=\"2\"");

  text(os, fr.X(fr.x1) - 28, fr.Y(0) - 6, "rho");
  text(os, 8, 20,
       "nu_sharp: beta=" + num(profile.beta()) + " gamma=" + num(profile.gamma()) +
           " rho*=" + num(profile.rho_star()),
       12);
  os << "</svg>\n";
  return os.str();
}

}  // namespace sphmax::report
