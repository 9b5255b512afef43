#include "borbit/metric.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace borbit {

Rational distance(const SeqPoint& x, const SeqPoint& y) {
  const auto& a = x.entries();
  const auto& b = y.entries();
  const std::size_t shared = std::min(a.size(), b.size());
  Rational total(0);
  for (std::size_t i = 0; i < shared; ++i) {
    const Rational diff = a[i] - b[i];
    total += diff * diff;
  }
  for (std::size_t i = shared; i < a.size(); ++i) {
    total += a[i] * a[i];
  }
  for (std::size_t i = shared; i < b.size(); ++i) {
    total += b[i] * b[i];
  }
  return total;
}

TargetSet::TargetSet(std::vector<SeqPoint> points) : points_(std::move(points)) {
  if (points_.empty()) {
    throw std::invalid_argument("target set must be nonempty");
  }
}

TargetSet TargetSet::zero() {
  return TargetSet({SeqPoint::zero()});
}

bool TargetSet::contains(const SeqPoint& x) const {
  return std::find(points_.begin(), points_.end(), x) != points_.end();
}

Rational distance_to_set(const SeqPoint& x, const TargetSet& target) {
  Rational best = distance(x, target.points().front());
  for (std::size_t i = 1; i < target.points().size(); ++i) {
    best = std::min(best, distance(x, target.points()[i]));
  }
  return best;
}

BMetricSpace concrete_space() {
  return concrete_space_with(Rational(2));
}

BMetricSpace concrete_space_with(const Rational& coefficient_s) {
  if (coefficient_s < 1) {
    throw std::invalid_argument("relaxed triangle coefficient must be >= 1, got " +
                                coefficient_s.str());
  }
  return BMetricSpace{coefficient_s,
                      [](const SeqPoint& x, const SeqPoint& y) { return distance(x, y); }};
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

std::size_t PropertyReport::count(Verdict v) const {
  std::size_t n = 0;
  for (const PropertyRow& row : rows) {
    if (row.verdict == v) {
      ++n;
    }
  }
  return n;
}

bool PropertyReport::all_pass() const {
  return count(Verdict::pass) == rows.size();
}

Verdict PropertyReport::aggregate() const {
  if (count(Verdict::fail) > 0) {
    return Verdict::fail;
  }
  return all_pass() ? Verdict::pass : Verdict::indeterminate;
}

AxiomReport check_b_metric_axioms(const BMetricSpace& space,
                                  std::span<const SampleTriple> triples) {
  AxiomReport report;
  report.rows.property = "b-metric axioms (s = " + space.coefficient_s.str() + ")";
  report.triples_checked = triples.size();
  bool no_finite_coefficient = false;
  std::size_t index = 0;
  for (const SampleTriple& t : triples) {
    const std::string tag = "triple " + std::to_string(index);
    const Rational d_xy = space.distance(t.x, t.y);
    const Rational d_yx = space.distance(t.y, t.x);
    const Rational d_xx = space.distance(t.x, t.x);

    // d(x,x) = 0, and d(x,y) = 0 only for equal points.
    bool identity_ok = (d_xx == 0) && ((d_xy == 0) == (t.x == t.y));
    report.rows.rows.push_back({tag + " identity", d_xx, Rational(0),
                                identity_ok ? Verdict::pass : Verdict::fail});
    if (!identity_ok) {
      ++report.identity_failures;
    }

    bool symmetry_ok = (d_xy == d_yx);
    report.rows.rows.push_back({tag + " symmetry", d_xy, d_yx,
                                symmetry_ok ? Verdict::pass : Verdict::fail});
    if (!symmetry_ok) {
      ++report.symmetry_failures;
    }

    const Rational split = space.distance(t.x, t.z) + space.distance(t.z, t.y);
    const Rational bound = space.coefficient_s * split;
    bool triangle_ok = (d_xy <= bound);
    report.rows.rows.push_back(
        {tag + " triangle", d_xy, bound, triangle_ok ? Verdict::pass : Verdict::fail});
    if (!triangle_ok) {
      ++report.triangle_failures;
    }

    if (split > 0) {
      const Rational needed = std::max(Rational(1), Rational(d_xy / split));
      if (!report.min_coefficient || needed > *report.min_coefficient) {
        report.min_coefficient = needed;
      }
    } else if (d_xy > 0) {
      // d(x,z) + d(z,y) = 0 forces x = z = y, so d(x,y) > 0 here means the
      // distance itself is broken; no finite coefficient repairs it.
      no_finite_coefficient = true;
    }
    ++index;
  }
  if (no_finite_coefficient) {
    report.min_coefficient = std::nullopt;
  }
  return report;
}

}  // namespace borbit
