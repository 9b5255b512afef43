#pragma once

#include "borbit/mappings.hpp"
#include "borbit/metric.hpp"

#include <span>

namespace borbit {

// Default truncation depth for orbit enumeration. Concrete-space orbits of
// finite-support points close (start repeating) long before this.
inline constexpr int kDefaultDepth = 64;

// T^n x.
SeqPoint iterate(const Mapping& map, const SeqPoint& x, std::size_t n);

// A two-sided estimate of an orbit diameter sup over pairwise distances.
//
//   lower  — exact max over the enumerated iterates (a true lower bound for
//            the full orbit's diameter).
//   upper  — certified bound for the *full* orbit, when one is available:
//            either the orbit was fully enumerated within `depth` (`closed`,
//            in which case upper == lower), or the mapping declares a tail
//            contraction and upper = min over truncations M <= depth of
//            2*lower_M + 8*factor^M*max_base_distance. Absent otherwise.
struct DiamEstimate {
  Rational lower;
  std::optional<Rational> upper;
  int depth = 0;
  bool closed = false;

  bool bounded() const { return upper.has_value(); }
};

// Diameter of the orbit {x, Tx, T^2 x, ...}, truncated at `depth` iterations.
DiamEstimate orbit_diameter(const Mapping& map, const SeqPoint& x, int depth = kDefaultDepth);

// Diameter of the union of the orbits of x and y under the same mapping.
DiamEstimate double_orbit_diameter(const Mapping& map, const SeqPoint& x, const SeqPoint& y,
                                   int depth = kDefaultDepth);

struct SamplePair {
  SeqPoint x;
  SeqPoint y;
};

// d(Tx, Ty) <= psi(diam of the joint orbit of x and y), checked with the
// exact lhs against psi of the *lower* diameter estimate: psi is increasing,
// so lhs <= psi(lower) already proves the property and a failure against
// psi(lower) is only reported as such when even the certified upper cannot
// rescue it. Rows where the bounds straddle psi are indeterminate.
PropertyReport check_weak_quasi_contraction(const Mapping& map, const ComparisonFunction& psi,
                                            std::span<const SamplePair> pairs,
                                            int depth = kDefaultDepth);

// For mappings T_i, T_j in a family: applying T_i to both arguments must not
// grow the joint orbit diameter under T_j. Certified comparison:
// pass when upper(moved) <= lower(original), fail when
// lower(moved) > upper(original), indeterminate otherwise.
PropertyReport check_orbit_monotonicity(std::span<const Mapping> family,
                                        std::span<const SamplePair> pairs,
                                        int depth = kDefaultDepth);

// Orbit-continuity along a tail of points approaching `limit`: the certified
// joint-orbit diameters diam(O(x_k, limit)) must be nonincreasing in k and
// the final one must fall below `tolerance`.
PropertyReport check_ob_continuity(const Mapping& map, std::span<const SeqPoint> tail,
                                   const SeqPoint& limit, int depth = kDefaultDepth,
                                   const Rational& tolerance = Rational(1, 1000000));

// psi(0) = 0, psi increasing on the samples, psi(t) < t for t > 0.
PropertyReport check_comparison_function(const ComparisonFunction& psi,
                                         std::span<const Rational> samples);

}  // namespace borbit
