#include "sphmax/setspec.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sphmax::setgen {

namespace {

SetSpec wrap(SetSpec::Node node) {
  return SetSpec{std::make_shared<const SetSpec::Node>(std::move(node))};
}

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

SetSpec full_ray() { return wrap(FullRay{}); }

SetSpec full_interval(double lo, double hi) {
  require(lo > 0.0 && hi > 0.0, "interval: endpoints must be positive");
  require(lo <= hi, "interval: lo must be <= hi");
  return wrap(FullInterval{log2_of(lo), log2_of(hi)});
}

SetSpec lacunary(double base) {
  require(base > 1.0, "lacunary: base must be > 1");
  return wrap(Lacunary{base, log2_of(base)});
}

SetSpec sequence_set(double a) {
  require(a > 0.0, "seq: a must be > 0");
  return wrap(SequenceSet{a});
}

SetSpec cantor_set(double ratio, double lo, double hi) {
  require(ratio > 0.0 && ratio <= 0.5, "cantor: ratio must be in (0, 1/2]");
  require(lo > 0.0 && hi > lo, "cantor: need 0 < lo < hi");
  return wrap(CantorSet{ratio, log2_of(lo), log2_of(hi)});
}

SetSpec explicit_points(std::vector<double> pts) {
  require(!pts.empty(), "points: need at least one point");
  std::vector<double> logs;
  logs.reserve(pts.size());
  for (double t : pts) {
    require(t > 0.0, "points: points must be positive");
    logs.push_back(log2_of(t));
  }
  std::sort(logs.begin(), logs.end());
  logs.erase(std::unique(logs.begin(), logs.end()), logs.end());
  return wrap(ExplicitPoints{std::move(logs)});
}

SetSpec union_of(std::vector<SetSpec> parts) {
  require(!parts.empty(), "union: needs at least one member");
  return wrap(UnionSet{std::move(parts)});
}

SetSpec scaled(double lambda, SetSpec inner) {
  require(lambda > 0.0, "scale: lambda must be > 0");
  return wrap(ScaleSet{log2_of(lambda), std::make_shared<const SetSpec>(std::move(inner))});
}

SetSpec periodized(SetSpec inner) {
  return wrap(PeriodizeSet{std::make_shared<const SetSpec>(std::move(inner))});
}

SetSpec window_restrict(SetSpec inner, double R) {
  require(R > 0.0, "window: R must be > 0");
  return wrap(WindowRestrictSet{log2_of(R), std::make_shared<const SetSpec>(std::move(inner))});
}

namespace {

const SetSpec::Node* spec_node(const SetSpec& s) { return s.node.get(); }

void print(std::ostream& os, const SetSpec& s) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, FullRay>) {
          os << "full";
        } else if constexpr (std::is_same_v<T, FullInterval>) {
          os << "interval(lo=" << exp2_of(n.lo_log) << ",hi=" << exp2_of(n.hi_log) << ")";
        } else if constexpr (std::is_same_v<T, Lacunary>) {
          os << "lacunary(base=" << n.base << ")";
        } else if constexpr (std::is_same_v<T, SequenceSet>) {
          os << "seq(a=" << n.a << ")";
        } else if constexpr (std::is_same_v<T, CantorSet>) {
          os << "cantor(ratio=" << n.ratio << ",lo=" << exp2_of(n.lo_log)
             << ",hi=" << exp2_of(n.hi_log) << ")";
        } else if constexpr (std::is_same_v<T, ExplicitPoints>) {
          os << "points(";
          for (std::size_t i = 0; i < n.points_log.size(); ++i) {
            if (i) os << ",";
            os << exp2_of(n.points_log[i]);
          }
          os << ")";
        } else if constexpr (std::is_same_v<T, UnionSet>) {
          os << "union(";
          for (std::size_t i = 0; i < n.parts.size(); ++i) {
            if (i) os << ",";
            print(os, n.parts[i]);
          }
          os << ")";
        } else if constexpr (std::is_same_v<T, ScaleSet>) {
          os << "scale(" << exp2_of(n.shift_log) << ",";
          print(os, *n.inner);
          os << ")";
        } else if constexpr (std::is_same_v<T, PeriodizeSet>) {
          os << "periodize(";
          print(os, *n.inner);
          os << ")";
        } else if constexpr (std::is_same_v<T, WindowRestrictSet>) {
          os << "window(" << exp2_of(n.r_log) << ",";
          print(os, *n.inner);
          os << ")";
        }
      },
      *spec_node(s));
}

}  // namespace

std::string to_string(const SetSpec& spec) {
  std::ostringstream os;
  os.precision(15);
  print(os, spec);
  return os.str();
}

namespace {

struct DomainInfo {
  bool periodic = false;
  double period = 0.0;
  double anchor = 0.0;  // left end of the natural generating window
  bool bounded = false;
  double lo = 0.0, hi = 0.0;
};

// Smallest common period of p1, p2 if their ratio is (nearly) rational
// with a small denominator.
std::optional<double> common_period(double p1, double p2) {
  if (p1 < p2) std::swap(p1, p2);
  for (int k = 1; k <= 64; ++k) {
    const double m = k * p1 / p2;
    if (std::abs(m - std::round(m)) < 1e-9 * m) return k * p1;
  }
  return std::nullopt;
}

DomainInfo domain_info(const SetSpec& s) {
  return std::visit(
      [&](const auto& n) -> DomainInfo {
        using T = std::decay_t<decltype(n)>;
        DomainInfo d;
        if constexpr (std::is_same_v<T, FullRay>) {
          d.periodic = true;
          d.period = 1.0;
        } else if constexpr (std::is_same_v<T, FullInterval>) {
          d.bounded = true;
          d.lo = n.lo_log;
          d.hi = n.hi_log;
        } else if constexpr (std::is_same_v<T, Lacunary>) {
          d.periodic = true;
          d.period = n.step_log;
        } else if constexpr (std::is_same_v<T, SequenceSet>) {
          d.bounded = true;
          d.lo = 0.0;  // accumulation at t = 1
          d.hi = 1.0;  // t = 2 for n = 1
        } else if constexpr (std::is_same_v<T, CantorSet>) {
          d.bounded = true;
          d.lo = n.lo_log;
          d.hi = n.hi_log;
        } else if constexpr (std::is_same_v<T, ExplicitPoints>) {
          d.bounded = true;
          d.lo = n.points_log.front();
          d.hi = n.points_log.back();
        } else if constexpr (std::is_same_v<T, UnionSet>) {
          bool all_bounded = true, all_periodic = true;
          double lo = 1e300, hi = -1e300, anchor = 1e300;
          std::optional<double> period;
          for (const auto& part : n.parts) {
            DomainInfo pd = domain_info(part);
            all_bounded &= pd.bounded;
            all_periodic &= pd.periodic;
            if (pd.bounded) {
              lo = std::min(lo, pd.lo);
              hi = std::max(hi, pd.hi);
            }
            if (pd.periodic) {
              anchor = std::min(anchor, pd.anchor);
              period = period ? common_period(*period, pd.period)
                              : std::optional<double>(pd.period);
              if (!period) all_periodic = false;
            }
          }
          if (all_bounded) {
            d.bounded = true;
            d.lo = lo;
            d.hi = hi;
          } else if (all_periodic && period) {
            d.periodic = true;
            d.period = *period;
            d.anchor = anchor;
          }
        } else if constexpr (std::is_same_v<T, ScaleSet>) {
          d = domain_info(*n.inner);
          d.anchor += n.shift_log;
          d.lo += n.shift_log;
          d.hi += n.shift_log;
        } else if constexpr (std::is_same_v<T, PeriodizeSet>) {
          d.periodic = true;
          d.period = 1.0;
        } else if constexpr (std::is_same_v<T, WindowRestrictSet>) {
          d.bounded = true;
          d.lo = 0.0;
          d.hi = 1.0;
        }
        return d;
      },
      *spec_node(s));
}

}  // namespace

ScanDomain resolve_scan_domain(const SetSpec& spec, std::optional<LogInterval> declared) {
  if (declared) {
    ScanDomain sd;
    sd.range = *declared;
    return sd;
  }
  DomainInfo d = domain_info(spec);
  ScanDomain sd;
  if (d.bounded) {
    sd.range = LogInterval(d.lo, d.hi);
    return sd;
  }
  if (d.periodic) {
    sd.periodic = true;
    sd.period = d.period;
    sd.range = LogInterval(d.anchor, d.anchor + d.period);
    return sd;
  }
  throw std::invalid_argument(
      "set has no bounded log-range and no periodic structure; "
      "declare a scan range explicitly");
}

}  // namespace sphmax::setgen
