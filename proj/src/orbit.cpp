#include "borbit/orbit.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace borbit {

namespace {

// Iterates of one start point, deduplicated: `steps[k]` is T^k x until the
// first repeat (orbit closed — every later iterate is already listed) or
// until `depth` iterations.
struct OrbitTrace {
  std::vector<SeqPoint> steps;
  bool closed = false;
};

OrbitTrace trace_orbit(const Mapping& map, const SeqPoint& x, int depth) {
  OrbitTrace trace;
  trace.steps.push_back(x);
  for (int k = 1; k <= depth; ++k) {
    SeqPoint next = map.apply(trace.steps.back());
    if (std::find(trace.steps.begin(), trace.steps.end(), next) != trace.steps.end()) {
      trace.closed = true;
      break;
    }
    trace.steps.push_back(std::move(next));
  }
  return trace;
}

DiamEstimate diameter_of(const Mapping& map, std::span<const SeqPoint> starts, int depth) {
  if (depth < 1) {
    throw std::invalid_argument("orbit depth must be >= 1, got " + std::to_string(depth));
  }

  std::vector<OrbitTrace> traces;
  traces.reserve(starts.size());
  bool all_closed = true;
  for (const SeqPoint& start : starts) {
    traces.push_back(trace_orbit(map, start, depth));
    all_closed = all_closed && traces.back().closed;
  }

  std::optional<Rational> max_base_distance;
  if (map.tail_contraction()) {
    const SeqPoint& base = map.tail_contraction()->base;
    Rational worst(0);
    for (const SeqPoint& start : starts) {
      worst = std::max(worst, distance(start, base));
    }
    max_base_distance = worst;
  }

  // Grow the enumerated point pool one truncation level at a time, keeping
  // the running max pairwise distance. At truncation M every iterate T^M of
  // every start is inside the pool (a closed trace's later iterates repeat
  // earlier pool members), so when a tail contraction with factor r holds,
  // any deeper iterate u = T^{M+j} z satisfies — with s = 2 and base b —
  //   d(u, v) <= 2*d(u, T^M z) + 2*d(T^M z, v)
  //            <= 2*(2*d(u, b) + 2*d(T^M z, b)) + 2*lower_M
  //            <= 8*r^M*d(z, b) + 2*lower_M
  // for every pool point v, and the same bound covers pairs of deep
  // iterates. The bound is not monotone in M, so take the min over M.
  Rational lower(0);
  std::vector<const SeqPoint*> pool;
  std::optional<Rational> certified;
  Rational factor_pow(1);
  for (int level = 0; level <= depth; ++level) {
    for (const OrbitTrace& trace : traces) {
      if (static_cast<std::size_t>(level) >= trace.steps.size()) {
        continue;
      }
      const SeqPoint& candidate = trace.steps[level];
      bool duplicate = false;
      for (const SeqPoint* member : pool) {
        if (*member == candidate) {
          duplicate = true;
          break;
        }
      }
      if (duplicate) {
        continue;
      }
      for (const SeqPoint* member : pool) {
        lower = std::max(lower, distance(*member, candidate));
      }
      pool.push_back(&candidate);
    }
    if (max_base_distance) {
      const Rational bound = 2 * lower + 8 * factor_pow * (*max_base_distance);
      if (!certified || bound < *certified) {
        certified = bound;
      }
      factor_pow *= map.tail_contraction()->factor;
    }
  }

  DiamEstimate estimate;
  estimate.lower = lower;
  estimate.depth = depth;
  estimate.closed = all_closed;
  if (all_closed) {
    // Every orbit point is enumerated, so the truncated max is the diameter.
    estimate.upper = lower;
  } else {
    estimate.upper = certified;
  }
  return estimate;
}

}  // namespace

SeqPoint iterate(const Mapping& map, const SeqPoint& x, std::size_t n) {
  SeqPoint current = x;
  for (std::size_t k = 0; k < n; ++k) {
    current = map.apply(current);
  }
  return current;
}

DiamEstimate orbit_diameter(const Mapping& map, const SeqPoint& x, int depth) {
  const SeqPoint starts[] = {x};
  return diameter_of(map, starts, depth);
}

DiamEstimate double_orbit_diameter(const Mapping& map, const SeqPoint& x, const SeqPoint& y,
                                   int depth) {
  const SeqPoint starts[] = {x, y};
  return diameter_of(map, starts, depth);
}

PropertyReport check_weak_quasi_contraction(const Mapping& map, const ComparisonFunction& psi,
                                            std::span<const SamplePair> pairs, int depth) {
  PropertyReport report;
  report.property = "weak quasi-contraction of " + map.name() + " under " + psi.name();
  std::size_t index = 0;
  for (const SamplePair& pair : pairs) {
    const Rational lhs = distance(map.apply(pair.x), map.apply(pair.y));
    const DiamEstimate diam = double_orbit_diameter(map, pair.x, pair.y, depth);
    // psi is increasing, so psi(lower) <= psi(diam) <= psi(upper).
    const Rational rhs_lower = psi.eval(diam.lower);
    Verdict verdict;
    if (lhs <= rhs_lower) {
      verdict = Verdict::pass;
    } else if (diam.bounded() && lhs > psi.eval(*diam.upper)) {
      verdict = Verdict::fail;
    } else {
      verdict = Verdict::indeterminate;
    }
    report.rows.push_back({"pair " + std::to_string(index), lhs, rhs_lower, verdict});
    ++index;
  }
  return report;
}

PropertyReport check_orbit_monotonicity(std::span<const Mapping> family,
                                        std::span<const SamplePair> pairs, int depth) {
  PropertyReport report;
  report.property = "orbit diameters nonincreasing under family members";
  std::size_t pair_index = 0;
  for (const SamplePair& pair : pairs) {
    for (const Mapping& mover : family) {
      const SeqPoint moved_x = mover.apply(pair.x);
      const SeqPoint moved_y = mover.apply(pair.y);
      for (const Mapping& observer : family) {
        const DiamEstimate original = double_orbit_diameter(observer, pair.x, pair.y, depth);
        const DiamEstimate moved = double_orbit_diameter(observer, moved_x, moved_y, depth);
        Verdict verdict;
        if (moved.bounded() && *moved.upper <= original.lower) {
          verdict = Verdict::pass;
        } else if (original.bounded() && moved.lower > *original.upper) {
          verdict = Verdict::fail;
        } else {
          verdict = Verdict::indeterminate;
        }
        const std::string instance = "pair " + std::to_string(pair_index) + " move " +
                                     mover.name() + " observe " + observer.name();
        report.rows.push_back({instance,
                               moved.bounded() ? *moved.upper : moved.lower, original.lower,
                               verdict});
      }
    }
    ++pair_index;
  }
  return report;
}

PropertyReport check_ob_continuity(const Mapping& map, std::span<const SeqPoint> tail,
                                   const SeqPoint& limit, int depth, const Rational& tolerance) {
  PropertyReport report;
  report.property = "orbit continuity of " + map.name() + " along a convergent tail";
  std::optional<Rational> previous;
  std::size_t index = 0;
  for (const SeqPoint& point : tail) {
    const DiamEstimate diam = double_orbit_diameter(map, point, limit, depth);
    const std::string tag = "tail " + std::to_string(index);
    if (!diam.bounded()) {
      report.rows.push_back({tag, diam.lower, tolerance, Verdict::indeterminate});
      previous = std::nullopt;
      ++index;
      continue;
    }
    const Rational& upper = *diam.upper;
    const bool last = (index + 1 == tail.size());
    bool ok = !previous || upper <= *previous;
    if (last) {
      ok = ok && upper < tolerance;
    }
    report.rows.push_back({tag, upper, last ? tolerance : previous.value_or(upper),
                           ok ? Verdict::pass : Verdict::fail});
    previous = upper;
    ++index;
  }
  return report;
}

PropertyReport check_comparison_function(const ComparisonFunction& psi,
                                         std::span<const Rational> samples) {
  PropertyReport report;
  report.property = "comparison gauge " + psi.name();
  std::vector<Rational> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());

  const Rational at_zero = psi.eval(Rational(0));
  report.rows.push_back(
      {"psi(0) = 0", at_zero, Rational(0), at_zero == 0 ? Verdict::pass : Verdict::fail});

  std::optional<Rational> previous_t;
  std::optional<Rational> previous_value;
  std::size_t index = 0;
  for (const Rational& t : sorted) {
    if (t < 0) {
      throw std::invalid_argument("comparison gauge samples must be nonnegative");
    }
    const Rational value = psi.eval(t);
    const std::string tag = "sample " + std::to_string(index);
    if (t > 0) {
      report.rows.push_back(
          {tag + " psi(t) < t", value, t, value < t ? Verdict::pass : Verdict::fail});
    }
    if (previous_t && t > *previous_t) {
      report.rows.push_back({tag + " increasing", *previous_value, value,
                             *previous_value <= value ? Verdict::pass : Verdict::fail});
    }
    previous_t = t;
    previous_value = value;
    ++index;
  }
  return report;
}

}  // namespace borbit
