#pragma once

#include "borbit/seq_point.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace borbit {

// d(x, y) = sum_i (x_i - y_i)^2 over the union of supports, exactly. This is
// not a metric (the square breaks the triangle inequality) but it is a
// b-metric with relaxation coefficient s = 2.
Rational distance(const SeqPoint& x, const SeqPoint& y);

// A finite, nonempty set of points used as a convergence target.
class TargetSet {
 public:
  explicit TargetSet(std::vector<SeqPoint> points);  // throws when empty

  // The singleton {zero sequence}.
  static TargetSet zero();

  const std::vector<SeqPoint>& points() const { return points_; }
  bool contains(const SeqPoint& x) const;

 private:
  std::vector<SeqPoint> points_;
};

// min over the set of the pointwise distance; exact.
Rational distance_to_set(const SeqPoint& x, const TargetSet& target);

// A distance function bundled with the coefficient s >= 1 of the relaxed
// triangle inequality d(x,y) <= s*(d(x,z) + d(z,y)).
struct BMetricSpace {
  Rational coefficient_s;
  std::function<Rational(const SeqPoint&, const SeqPoint&)> distance;
};

// The squared-difference space above with s = 2.
BMetricSpace concrete_space();

// Same distance, caller-chosen s — for probing which coefficients the
// axioms actually need. Throws when s < 1.
BMetricSpace concrete_space_with(const Rational& coefficient_s);

struct SampleTriple {
  SeqPoint x;
  SeqPoint z;  // the midpoint of the relaxed triangle inequality
  SeqPoint y;
};

// Outcome of one numeric property check. `indeterminate` means the check
// compared certified intervals that overlap, so neither side is proven.
enum class Verdict { pass, fail, indeterminate };

std::string_view verdict_name(Verdict v);

// One checked instance: an inequality lhs <= rhs (or >=, per the property)
// with both sides exact or certified.
struct PropertyRow {
  std::string instance;
  Rational lhs;
  Rational rhs;
  Verdict verdict = Verdict::indeterminate;
};

struct PropertyReport {
  std::string property;
  std::vector<PropertyRow> rows;

  std::size_t count(Verdict v) const;
  bool all_pass() const;
  // pass if every row passes, fail if any row fails, else indeterminate.
  Verdict aggregate() const;
};

struct AxiomReport {
  // One row per (triple, axiom): identity rows compare d(x,x) against 0,
  // symmetry rows |d(x,y) - d(y,x)| against 0, triangle rows d(x,y) against
  // s*(d(x,z) + d(z,y)).
  PropertyReport rows;
  std::size_t triples_checked = 0;
  std::size_t identity_failures = 0;
  std::size_t symmetry_failures = 0;
  std::size_t triangle_failures = 0;
  // Smallest coefficient that would satisfy every sampled triangle instance
  // (max of d(x,y)/(d(x,z)+d(z,y)) over triples with a nonzero split, but at
  // least 1); absent when no triple constrains it.
  std::optional<Rational> min_coefficient;

  bool all_pass() const { return rows.all_pass(); }
};

AxiomReport check_b_metric_axioms(const BMetricSpace& space,
                                  std::span<const SampleTriple> triples);

}  // namespace borbit
