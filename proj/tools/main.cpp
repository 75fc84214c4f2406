// Command-line frontend: dims, typeset, knapp, balltest, verify, plot.
// Exit codes: 0 ok, 1 test failure, 2 usage/parse error, 3 resource cap.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "sphmax/csv.hpp"
#include "sphmax/dimension.hpp"
#include "sphmax/entropy.hpp"
#include "sphmax/experiments.hpp"
#include "sphmax/svgplot.hpp"
#include "sphmax/typeset.hpp"
#include "sphmax/verify.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct CommonOpts {
  std::string set_spec;
  int d = 2;
  int j_max = 20;
  std::string out_dir = ".";
  std::string format = "csv";
  int threads = 1;
  std::uint64_t seed = 7;
};

std::vector<double> parse_grid(const std::string& text) {
  // "lo:hi:step" or comma-separated values
  std::vector<double> grid;
  if (text.find(':') != std::string::npos) {
    double lo, hi, step;
    char c1, c2;
    std::istringstream is(text);
    if (!(is >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0)
      throw CLI::ValidationError("grid", "expected lo:hi:step");
    for (double v = lo; v <= hi + 1e-12; v += step) grid.push_back(v);
    return grid;
  }
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) grid.push_back(std::stod(tok));
  return grid;
}

void write_text(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string echo_of(const std::vector<std::pair<std::string, std::string>>& kv) {
  std::string s;
  for (const auto& [k, v] : kv) {
    if (!s.empty()) s += " ";
    s += k + "=" + v;
  }
  return s;
}

int cmd_dims(const CommonOpts& common, const std::string& rho_text,
             const std::string& theta_text) {
  const auto spec = sphmax::setgen::parse_set_spec(common.set_spec);
  const auto rho_grid = parse_grid(rho_text);
  const auto theta_grid = parse_grid(theta_text);
  const std::string echo = echo_of({{"cmd", "dims"},
                                    {"set", common.set_spec},
                                    {"jmax", std::to_string(common.j_max)},
                                    {"rho", rho_text},
                                    {"theta", theta_text},
                                    {"threads", std::to_string(common.threads)}});

  sphmax::entropy::ScanEngine engine(spec, std::nullopt, sphmax::setgen::kDefaultGuardBits,
                                     common.threads);
  const auto beta = sphmax::dim::beta_estimate(engine, common.j_max);
  const auto profile = sphmax::dim::nu_sharp_estimate(engine, rho_grid, common.j_max);
  const auto spectrum = sphmax::dim::spectrum_report(engine, theta_grid, common.j_max);

  fs::path dir(common.out_dir);
  {
    sphmax::report::CsvWriter csv(echo);
    csv.columns({"rho", "value", "pre_clamp", "slope_lo_j", "slope_hi_j", "spread"});
    for (const auto& s : profile.samples())
      csv.row({s.rho, s.value, s.pre_clamp, static_cast<double>(s.fit.j_lo),
               static_cast<double>(s.fit.j_hi), s.fit.spread});
    csv.write_file((dir / "profile.csv").string());
  }
  {
    sphmax::report::CsvWriter csv(echo);
    csv.columns({"theta", "dim", "nu"});
    for (const auto& p : spectrum.points) csv.row({p.theta, p.dim, p.nu});
    csv.write_file((dir / "spectrum.csv").string());
  }
  {
    json j;
    j["tool"] = std::string("sphmax ") + sphmax::kVersion;
    j["config"] = echo;
    j["beta"] = profile.beta();
    j["beta_raw"] = beta.raw;
    j["gamma"] = profile.gamma();
    j["rho_star"] = profile.rho_star();
    j["beta_fit_spread"] = beta.fit.spread;
    j["convexity_violation"] = profile.convexity_violation();
    j["max_profile_spread"] = profile.max_spread();
    write_text(dir / "summary.json", j.dump(2) + "\n");
  }
  if (common.format == "svg") {
    write_text(dir / "profile.svg", sphmax::report::profile_svg(profile, echo));
  }
  std::cout << "beta=" << profile.beta() << " gamma=" << profile.gamma()
            << " rho_star=" << profile.rho_star() << "\n";
  return 0;
}

int cmd_typeset(const CommonOpts& common, const std::string& closed_form,
                const std::string& union_text, double p_max) {
  std::string echo = echo_of({{"cmd", "typeset"},
                              {"set", common.set_spec},
                              {"closed_form", closed_form},
                              {"union", union_text},
                              {"d", std::to_string(common.d)}});
  sphmax::dim::NuSharpProfile profile;
  std::vector<std::pair<double, double>> union_components;

  if (!closed_form.empty()) {
    double beta = 0, gamma = 0;
    if (std::sscanf(closed_form.c_str(), "beta=%lf,gamma=%lf", &beta, &gamma) != 2)
      throw CLI::ValidationError("--closed-form", "expected beta=<b>,gamma=<g>");
    profile = sphmax::dim::NuSharpProfile::closed_form(beta, gamma);
  } else if (!union_text.empty()) {
    std::istringstream is(union_text);
    std::string tok;
    double beta_max = 0.0;
    while (std::getline(is, tok, ',')) {
      double b, g;
      if (std::sscanf(tok.c_str(), "%lf:%lf", &b, &g) != 2)
        throw CLI::ValidationError("--union", "expected b1:g1,b2:g2,...");
      union_components.emplace_back(b, g);
      beta_max = std::max(beta_max, b);
    }
    double gamma_max = 0.0;
    for (auto& [b, g] : union_components) gamma_max = std::max(gamma_max, g);
    profile = sphmax::dim::NuSharpProfile::closed_form(beta_max, gamma_max);
  } else if (!common.set_spec.empty()) {
    const auto spec = sphmax::setgen::parse_set_spec(common.set_spec);
    sphmax::entropy::ScanEngine engine(spec, std::nullopt, sphmax::setgen::kDefaultGuardBits,
                                       common.threads);
    std::vector<double> grid;
    for (int i = 0; i <= 16; ++i) grid.push_back(0.125 * i);
    profile = sphmax::dim::nu_sharp_estimate(engine, grid, common.j_max);
  } else {
    throw CLI::ValidationError("typeset", "need --set, --closed-form or --union");
  }

  const auto p_grid = sphmax::typeset::default_p_grid(profile, common.d, p_max);
  auto region = sphmax::typeset::region_boundary(profile, common.d, p_grid);
  if (!union_components.empty()) {
    // lower boundary from the finite-union formula
    for (auto& b : region.boundary) {
      const double p = 1.0 / b.inv_p;
      b.lower = sphmax::typeset::union_L(p, union_components, common.d) / p;
    }
  }

  fs::path dir(common.out_dir);
  {
    sphmax::report::CsvWriter csv(echo);
    csv.columns({"inv_p", "lower", "upper"});
    for (const auto& b : region.boundary) csv.row({b.inv_p, b.lower, b.upper});
    csv.write_file((dir / "region.csv").string());
  }
  write_text(dir / "region.svg", sphmax::report::region_svg(region, echo));
  {
    const auto eq = sphmax::typeset::verify_equivalence(profile, common.d, 10000);
    json j;
    j["tool"] = std::string("sphmax ") + sphmax::kVersion;
    j["config"] = echo;
    j["p_beta"] = region.p_beta;
    j["p_gamma"] = region.p_gamma;
    j["equivalence_checked"] = eq.checked;
    j["equivalence_excluded_band"] = eq.excluded;
    j["equivalence_disagreements"] = eq.disagreements;
    write_text(dir / "region_report.json", j.dump(2) + "\n");
    if (eq.disagreements) {
      std::cerr << "equivalence check failed at " << eq.disagreements << " grid points\n";
      return 1;
    }
  }
  std::cout << "p_beta=" << region.p_beta << " p_gamma=" << region.p_gamma << "\n";
  return 0;
}

int cmd_knapp(const CommonOpts& common, double p, double alpha, const std::string& case_name,
              const std::string& k_rule_text, const std::string& j_list_text, double eps,
              int n_piece) {
  const auto spec = sphmax::setgen::parse_set_spec(common.set_spec);
  sphmax::sphere::ExperimentConfig cfg;
  cfg.spec = spec;
  cfg.d = common.d;
  cfg.p = p;
  cfg.alpha = alpha;
  cfg.seed = common.seed;
  cfg.threads = common.threads;
  cfg.n_samples_per_piece = n_piece;
  cfg.knapp_case = case_name == "large" ? sphmax::sphere::KnappCase::LargeK
                                        : sphmax::sphere::KnappCase::SmallK;
  if (eps > 0) cfg.eps = eps;
  else cfg.eps = case_name == "large" ? 1e-2 : 0.015625;
  {
    // forms: j/2, 3j/4, j-2, j+1, 2j/3-1
    int num = 1, den = 1, off = 0;
    const char* s = k_rule_text.c_str();
    char* end = nullptr;
    if (*s != 'j') {
      num = static_cast<int>(std::strtol(s, &end, 10));
      s = end;
    }
    if (*s != 'j') throw CLI::ValidationError("--k-rule", "expected e.g. j/2, 3j/4 or j-2");
    ++s;
    if (*s == '/') {
      den = static_cast<int>(std::strtol(s + 1, &end, 10));
      s = end;
    }
    if (*s == '-' || *s == '+') {
      off = static_cast<int>(std::strtol(s, &end, 10));
      s = end;
    }
    if (*s != '\0' || den <= 0 || num <= 0)
      throw CLI::ValidationError("--k-rule", "expected e.g. j/2, 3j/4 or j-2");
    cfg.k_rule = {num, den, off};
  }
  cfg.j_list.clear();
  for (double v : parse_grid(j_list_text)) cfg.j_list.push_back(static_cast<int>(v));

  const std::string echo = echo_of({{"cmd", "knapp"},
                                    {"set", common.set_spec},
                                    {"d", std::to_string(common.d)},
                                    {"p", std::to_string(p)},
                                    {"alpha", std::to_string(alpha)},
                                    {"case", case_name},
                                    {"krule", k_rule_text},
                                    {"j", j_list_text},
                                    {"seed", std::to_string(common.seed)}});
  const auto rep = sphmax::sphere::lower_bound_experiment(cfg);

  json j;
  j["tool"] = std::string("sphmax ") + sphmax::kVersion;
  j["config"] = echo;
  j["measured_slope"] = rep.measured_slope;
  j["theory_slope"] = rep.theory_slope;
  j["rows"] = json::array();
  for (const auto& r : rep.rows) {
    json row;
    row["j"] = r.j;
    row["k"] = r.k;
    row["tau_size"] = r.tau_size;
    row["cover_n"] = r.cover_n;
    row["log2_R"] = r.log2_R;
    row["theory_log2_R"] = r.theory_log2_R;
    row["anchor"] = r.anchor;
    row["skipped"] = r.skipped;
    j["rows"].push_back(row);
  }
  fs::path dir(common.out_dir);
  write_text(dir / "knapp.json", j.dump(2) + "\n");
  if (common.format == "csv") {
    sphmax::report::CsvWriter csv(echo);
    csv.columns({"j", "k", "tau_size", "cover_n", "log2_R", "theory_log2_R"});
    for (const auto& r : rep.rows)
      csv.row({static_cast<double>(r.j), static_cast<double>(r.k),
               static_cast<double>(r.tau_size), static_cast<double>(r.cover_n), r.log2_R,
               r.theory_log2_R});
    csv.write_file((dir / "knapp.csv").string());
  }
  std::cout << "measured slope " << rep.measured_slope << ", theory " << rep.theory_slope
            << "\n";
  return 0;
}

int cmd_balltest(const CommonOpts& common, double p, double alpha,
                 const std::string& delta_text, double beta) {
  const auto spec = sphmax::setgen::parse_set_spec(common.set_spec);
  const auto deltas = parse_grid(delta_text);
  const std::string echo = echo_of({{"cmd", "balltest"},
                                    {"set", common.set_spec},
                                    {"d", std::to_string(common.d)},
                                    {"p", std::to_string(p)},
                                    {"alpha", std::to_string(alpha)},
                                    {"delta", delta_text}});
  const auto rep = sphmax::sphere::ball_test_experiment(spec, common.d, p, alpha, deltas, beta);
  fs::path dir(common.out_dir);
  sphmax::report::CsvWriter csv(echo);
  csv.columns({"delta", "ratio", "log2_delta", "log2_ratio"});
  for (const auto& r : rep.rows) csv.row({r.delta, r.ratio, r.log2_delta, r.log2_ratio});
  csv.write_file((dir / "balltest.csv").string());
  json j;
  j["tool"] = std::string("sphmax ") + sphmax::kVersion;
  j["config"] = echo;
  j["slope"] = rep.slope;
  j["necessity_exponent"] = rep.necessity_exponent;
  write_text(dir / "balltest.json", j.dump(2) + "\n");
  std::cout << "ratio slope " << rep.slope << " vs necessity exponent "
            << rep.necessity_exponent << "\n";
  return 0;
}

int cmd_verify(const CommonOpts& common, const std::string& suite, int j, int k,
               std::uint64_t n, double p) {
  sphmax::verify::SuiteOptions opt;
  opt.threads = common.threads;
  opt.seed = common.seed;
  opt.d = common.d;
  opt.j = j;
  opt.k = k;
  opt.n_samples = n;
  opt.p = p;
  std::vector<sphmax::verify::CheckResult> results;
  if (suite == "cover")
    results = sphmax::verify::run_cover_suite(common.seed);
  else if (suite == "profile")
    results = sphmax::verify::run_profile_suite(common.j_max, common.threads);
  else if (suite == "region")
    results = sphmax::verify::run_region_suite();
  else if (suite == "geometry")
    results = sphmax::verify::run_geometry_suite(opt);
  else if (suite == "knapp")
    results = sphmax::verify::run_knapp_suite(opt);
  else if (suite == "scaling")
    results = sphmax::verify::run_scaling_suite(opt);
  else if (suite == "mainassu")
    results = sphmax::verify::run_mainassu_suite(common.threads);
  else
    throw CLI::ValidationError("--suite",
                               "unknown suite (cover|profile|region|geometry|knapp|scaling|mainassu)");
  bool ok = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " -- " << r.detail << "\n";
    ok &= r.pass;
  }
  return ok ? 0 : 1;
}

int cmd_plot(const std::string& in_path, const std::string& out_path, const std::string& kind,
             int d) {
  // re-render a region CSV as SVG
  std::ifstream in(in_path);
  if (!in) throw std::runtime_error("cannot read " + in_path);
  std::string line, echo = "replot of " + in_path;
  sphmax::typeset::TypeSetRegion region;
  region.d = d;
  region.profile = sphmax::dim::NuSharpProfile::closed_form(0.0, 0.0);
  double min_lower = 0.0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.find("inv_p") == 0) continue;
    sphmax::typeset::BoundarySample b;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &b.inv_p, &b.lower, &b.upper) == 3) {
      region.boundary.push_back(b);
      min_lower = std::min(min_lower, b.lower);
    }
  }
  if (region.boundary.empty()) throw std::runtime_error("no boundary rows in " + in_path);
  if (kind != "region") throw CLI::ValidationError("--kind", "only region replots supported");
  double largest_x = 0.0;
  for (const auto& b : region.boundary) largest_x = std::max(largest_x, b.inv_p);
  region.p_beta = 1.0 / largest_x;
  region.p_gamma = region.p_beta;
  write_text(out_path, sphmax::report::region_svg(region, echo));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fractal dimension spectra of dilation sets and weighted spherical maximal "
               "operator regions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("sphmax ") + sphmax::kVersion);

  CommonOpts common;
  auto add_common = [&](CLI::App* sub, bool with_set) {
    if (with_set) sub->add_option("--set", common.set_spec, "set spec (grammar: see README)");
    sub->add_option("--d", common.d, "ambient dimension (2 or 3)")->check(CLI::Range(2, 3));
    sub->add_option("--jmax", common.j_max, "finest dyadic scale 2^-jmax");
    sub->add_option("--out", common.out_dir, "output directory");
    sub->add_option("--format", common.format, "csv|json|svg");
    sub->add_option("--threads", common.threads, "worker threads");
    sub->add_option("--seed", common.seed, "RNG seed");
  };

  auto* dims = app.add_subcommand("dims", "dimension estimates and nu_sharp profile");
  std::string rho_text = "0:2:0.1", theta_text = "0.1:0.9:0.1";
  add_common(dims, true);
  dims->add_option("--rho", rho_text, "rho grid lo:hi:step");
  dims->add_option("--theta", theta_text, "theta grid lo:hi:step");

  auto* typeset = app.add_subcommand("typeset", "type set region boundary and plots");
  std::string closed_form, union_text;
  double p_max = sphmax::typeset::kDefaultPMax;
  add_common(typeset, true);
  typeset->add_option("--closed-form", closed_form, "beta=<b>,gamma=<g>");
  typeset->add_option("--union", union_text, "b1:g1,b2:g2,...");
  typeset->add_option("--pmax", p_max, "largest p on the boundary grid");

  auto* knapp = app.add_subcommand("knapp", "lower-bound extremizer experiment");
  double p = 2.0, alpha = 0.0, eps = -1.0;
  std::string case_name = "small", k_rule_text = "j/2", j_list_text = "6,8,10,12";
  int n_piece = 200;
  add_common(knapp, true);
  knapp->add_option("--p", p, "Lebesgue exponent");
  knapp->add_option("--alpha", alpha, "power weight exponent");
  knapp->add_option("--case", case_name, "small|large");
  knapp->add_option("--k-rule", k_rule_text, "k as a fraction of j, e.g. j/2 or 3j/4");
  knapp->add_option("--j", j_list_text, "comma list of scales");
  knapp->add_option("--eps", eps, "cap thickness parameter");
  knapp->add_option("--npiece", n_piece, "samples per piece");

  auto* balltest = app.add_subcommand("balltest", "small-ball necessity experiment");
  std::string delta_text = "0.01,0.005,0.0025,0.00125";
  double beta_hint = 0.0;
  add_common(balltest, true);
  balltest->add_option("--p", p, "Lebesgue exponent");
  balltest->add_option("--alpha", alpha, "power weight exponent");
  balltest->add_option("--delta", delta_text, "ball radii");
  balltest->add_option("--beta", beta_hint, "Minkowski dimension for the comparison line");

  auto* verify = app.add_subcommand("verify", "acceptance-style verification suites");
  std::string suite = "cover";
  int vj = 12, vk = 0;
  std::uint64_t vn = 100000;
  add_common(verify, true);
  verify->add_option("--suite", suite, "cover|profile|region|geometry|knapp|scaling|mainassu")
      ->required();
  verify->add_option("--j", vj, "scale for geometry suite");
  verify->add_option("--k", vk, "window exponent for geometry suite");
  verify->add_option("--n", vn, "sample count");
  verify->add_option("--p", p, "Lebesgue exponent");

  auto* plot = app.add_subcommand("plot", "re-render a region CSV as SVG");
  std::string in_path, out_path, kind = "region";
  plot->add_option("--in", in_path, "input CSV")->required();
  plot->add_option("--out", out_path, "output SVG")->required();
  plot->add_option("--kind", kind, "region");
  plot->add_option("--d", common.d, "ambient dimension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (dims->parsed()) return cmd_dims(common, rho_text, theta_text);
    if (typeset->parsed()) return cmd_typeset(common, closed_form, union_text, p_max);
    if (knapp->parsed())
      return cmd_knapp(common, p, alpha, case_name, k_rule_text, j_list_text, eps, n_piece);
    if (balltest->parsed()) return cmd_balltest(common, p, alpha, delta_text, beta_hint);
    if (verify->parsed()) return cmd_verify(common, suite, vj, vk, vn, p);
    if (plot->parsed()) return cmd_plot(in_path, out_path, kind, common.d);
  } catch (const sphmax::ResourceCapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const sphmax::setgen::SpecParseError& e) {
    std::cerr << "set spec error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
