#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sphmax/loginterval.hpp"

namespace sphmax::setgen {

// Symbolic description of a dilation set, held in log2 coordinates.
// Every generator converts multiplicative inputs on construction.

struct FullRay {};  // (0, inf)

struct FullInterval {
  double lo_log;  // log2 of the multiplicative endpoints
  double hi_log;
};

struct Lacunary {
  double base;      // > 1, set {base^k : k in Z}
  double step_log;  // log2(base)
};

// {1 + n^{-a} : n >= 1}, a subset of (1, 2].
struct SequenceSet {
  double a;  // > 0
};

// Cantor construction carried out directly in log2 coordinates on
// [log2(lo), log2(hi)]: each generation keeps the two end subintervals of
// `ratio` times the parent length.  Exactly self-similar under d_x.
struct CantorSet {
  double ratio;  // in (0, 1/2]
  double lo_log;
  double hi_log;
};

struct ExplicitPoints {
  std::vector<double> points_log;  // sorted, deduplicated
};

struct SetSpec;

struct UnionSet {
  std::vector<SetSpec> parts;
};

struct ScaleSet {
  double shift_log;  // log2(lambda)
  std::shared_ptr<const SetSpec> inner;
};

// union over k in Z of 2^k * (inner intersect [1,2])
struct PeriodizeSet {
  std::shared_ptr<const SetSpec> inner;
};

// E_R = R^{-1} (E intersect [R, 2R]), a subset of [1,2].
struct WindowRestrictSet {
  double r_log;  // log2(R)
  std::shared_ptr<const SetSpec> inner;
};

struct SetSpec {
  using Node = std::variant<FullRay, FullInterval, Lacunary, SequenceSet, CantorSet,
                            ExplicitPoints, UnionSet, ScaleSet, PeriodizeSet,
                            WindowRestrictSet>;
  std::shared_ptr<const Node> node;

  const Node& operator*() const { return *node; }
  template <class T>
  const T* get_if() const {
    return std::get_if<T>(node.get());
  }
};

// Factories (multiplicative inputs; all validate their parameters).
SetSpec full_ray();
SetSpec full_interval(double lo, double hi);
SetSpec lacunary(double base = 2.0);
SetSpec sequence_set(double a);
SetSpec cantor_set(double ratio, double lo, double hi);
SetSpec explicit_points(std::vector<double> points_multiplicative);
SetSpec union_of(std::vector<SetSpec> parts);
SetSpec scaled(double lambda, SetSpec inner);
SetSpec periodized(SetSpec inner);
SetSpec window_restrict(SetSpec inner, double R);

// Human-readable round-trip of the spec tree (parseable by parse_set_spec).
std::string to_string(const SetSpec& spec);

class SpecParseError : public std::invalid_argument {
 public:
  SpecParseError(const std::string& msg, std::size_t pos)
      : std::invalid_argument(msg + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
  std::size_t position;
};

// Grammar:
//   full | interval(lo=<t>,hi=<t>) | lacunary | lacunary(base=<r>)
//   | seq(a=<r>) | cantor(ratio=<r>,lo=<t>,hi=<t>) | points(<t>,...)
//   | pointsfile(<path>) | union(<spec>,<spec>,...) | scale(<r>,<spec>)
//   | periodize(<spec>) | window(<r>,<spec>)
// with <t> a positive decimal in multiplicative coordinates.
SetSpec parse_set_spec(const std::string& text);

// Where covering scans of the set may range.
struct ScanDomain {
  bool periodic = false;
  double period = 0.0;   // log2 units, valid when periodic
  LogInterval range;     // bounded log-range (anchor window for periodic sets)
};

// Determines the canonical scan domain.  Unbounded sets without periodic
// structure need `declared` or this throws.
ScanDomain resolve_scan_domain(const SetSpec& spec,
                               std::optional<LogInterval> declared = std::nullopt);

}  // namespace sphmax::setgen
