#include "borbit/orbit.hpp"
#include "borbit/sampling.hpp"

#include <doctest.h>

#include <algorithm>
#include <vector>

using namespace borbit;

namespace {

// Independent oracle: enumerate iterates with a plain loop and take the max
// pairwise distance directly. No dedup, no closure logic, no certificates.
Rational brute_truncated_diameter(const Mapping& map, const std::vector<SeqPoint>& starts,
                                  int depth) {
  std::vector<SeqPoint> points;
  for (const SeqPoint& start : starts) {
    SeqPoint current = start;
    for (int k = 0; k <= depth; ++k) {
      points.push_back(current);
      current = map.apply(current);
    }
  }
  Rational best(0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::max(best, distance(points[i], points[j]));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("shift_halve drops the head and halves the tail") {
  CHECK(shift_halve(SeqPoint::from_text("1/2,1/4,1/8")) == SeqPoint::from_text("1/8,1/16"));
  CHECK(shift_halve(SeqPoint::from_text("1")).is_zero());
  CHECK(shift_halve(SeqPoint::zero()).is_zero());
}

TEST_CASE("iterate composes applications") {
  const Mapping map = shift_halve_mapping();
  const SeqPoint x = SeqPoint::from_text("1/2,1/4,1/8");
  CHECK(iterate(map, x, 0) == x);
  CHECK(iterate(map, x, 1) == SeqPoint::from_text("1/8,1/16"));
  CHECK(iterate(map, SeqPoint::from_text("1/2"), 1).is_zero());

  SampleGenerator generator(5);
  for (int i = 0; i < 20; ++i) {
    const SeqPoint p = generator.point();
    const std::size_t a = generator.next_below(5);
    const std::size_t b = generator.next_below(5);
    CHECK(iterate(map, iterate(map, p, a), b) == iterate(map, p, a + b));
  }
}

TEST_CASE("finite-support orbits reach zero and close") {
  const Mapping map = shift_halve_mapping();
  SampleGenerator generator(17);
  for (int i = 0; i < 30; ++i) {
    const SeqPoint p = generator.point();
    CHECK(iterate(map, p, p.support_length()).is_zero());
  }
}

TEST_CASE("the shift-halve step identity holds exactly") {
  // d(Tx, Ty) = (d(x, y) - (x_1 - y_1)^2) / 4, hence <= d(x, y) / 4.
  SampleGenerator generator(23);
  for (int i = 0; i < 100; ++i) {
    const SamplePair pair = generator.pair();
    const Rational head = pair.x.coordinate(1) - pair.y.coordinate(1);
    const Rational lhs = distance(shift_halve(pair.x), shift_halve(pair.y));
    CHECK(lhs == (distance(pair.x, pair.y) - head * head) / 4);
    CHECK(lhs <= distance(pair.x, pair.y) / 4);
  }
}

TEST_CASE("the declared decay certificate of shift_halve is honest") {
  const Mapping map = shift_halve_mapping();
  REQUIRE(map.tail_contraction().has_value());
  CHECK(map.tail_contraction()->factor == Rational(1, 4));
  CHECK(map.tail_contraction()->base.is_zero());

  SampleGenerator generator(29);
  for (int i = 0; i < 100; ++i) {
    const SeqPoint p = generator.point();
    CHECK(distance(map.apply(p), SeqPoint::zero()) <= distance(p, SeqPoint::zero()) / 4);
  }
}

TEST_CASE("orbit diameters: hand-frozen cases") {
  const Mapping map = shift_halve_mapping();

  const DiamEstimate at_zero = orbit_diameter(map, SeqPoint::zero());
  CHECK(at_zero.lower == Rational(0));
  REQUIRE(at_zero.bounded());
  CHECK(*at_zero.upper == Rational(0));
  CHECK(at_zero.closed);

  // Orbit of (1/4) is {(1/4), zero}: diameter exactly 1/16.
  const DiamEstimate quarter = orbit_diameter(map, SeqPoint::from_text("1/4"));
  CHECK(quarter.lower == Rational(1, 16));
  REQUIRE(quarter.bounded());
  CHECK(*quarter.upper == Rational(1, 16));
  CHECK(quarter.closed);
}

TEST_CASE("double orbit diameters match the brute-force oracle") {
  const Mapping map = shift_halve_mapping();
  const SeqPoint x = SeqPoint::from_text("1/2");
  const SeqPoint y = SeqPoint::from_text("1");
  const DiamEstimate estimate = double_orbit_diameter(map, x, y, 3);
  CHECK(estimate.lower == brute_truncated_diameter(map, {x, y}, 3));
  // The joint orbit is {(1/2), (1), zero}; d((1), zero) = 1 dominates.
  CHECK(estimate.lower == Rational(1));

  SampleGenerator generator(41);
  for (int i = 0; i < 50; ++i) {
    const SamplePair pair = generator.pair();
    const DiamEstimate est = double_orbit_diameter(map, pair.x, pair.y, 10);
    CHECK(est.lower == brute_truncated_diameter(map, {pair.x, pair.y}, 10));
    CHECK(est.lower >= distance(pair.x, pair.y));
  }
}

TEST_CASE("closed orbits yield exact diameters: upper equals lower") {
  const Mapping map = shift_halve_mapping();
  SampleGenerator generator(43);
  for (int i = 0; i < 50; ++i) {
    const SamplePair pair = generator.pair();
    const DiamEstimate est = double_orbit_diameter(map, pair.x, pair.y);
    CHECK(est.closed);
    REQUIRE(est.bounded());
    CHECK(*est.upper == est.lower);
  }
}

TEST_CASE("estimates are certified: lower never exceeds upper") {
  const Mapping map = shift_halve_mapping();
  SampleGenerator generator(47);
  for (int i = 0; i < 50; ++i) {
    const SamplePair pair = generator.pair();
    for (int depth : {1, 2, 3, 5, 8}) {
      const DiamEstimate est = double_orbit_diameter(map, pair.x, pair.y, depth);
      if (est.bounded()) {
        CHECK(est.lower <= *est.upper);
      }
    }
  }
}

TEST_CASE("deeper scans tighten both sides monotonically") {
  const Mapping map = shift_halve_mapping();
  SampleGenerator generator(53);
  for (int i = 0; i < 30; ++i) {
    const SamplePair pair = generator.pair();
    Rational previous_lower(-1);
    std::optional<Rational> previous_upper;
    for (int depth = 1; depth <= 12; ++depth) {
      const DiamEstimate est = double_orbit_diameter(map, pair.x, pair.y, depth);
      CHECK(est.lower >= previous_lower);
      if (previous_upper) {
        REQUIRE(est.bounded());
        CHECK(*est.upper <= *previous_upper);
      }
      previous_lower = est.lower;
      if (est.bounded()) {
        previous_upper = est.upper;
      }
    }
  }
}

TEST_CASE("without a decay certificate the upper side is absent until closure") {
  const Mapping id = identity_mapping();
  // The identity's orbit of x is {x}: closes immediately, diameter 0.
  const DiamEstimate self = orbit_diameter(id, SeqPoint::from_text("1/2"));
  CHECK(self.closed);
  REQUIRE(self.bounded());
  CHECK(*self.upper == Rational(0));

  // Two distinct fixed points: closed joint orbit, exact positive diameter.
  const DiamEstimate joint =
      double_orbit_diameter(id, SeqPoint::from_text("1/2"), SeqPoint::zero());
  CHECK(joint.closed);
  REQUIRE(joint.bounded());
  CHECK(*joint.upper == Rational(1, 4));
}

TEST_CASE("depth must be positive") {
  CHECK_THROWS_AS(orbit_diameter(shift_halve_mapping(), SeqPoint::zero(), 0),
                  std::invalid_argument);
}

TEST_CASE("shift_halve is a weak quasi-contraction for psi(t) = t/3 on samples") {
  SampleGenerator generator(59);
  const auto pairs = generator.pairs(100);
  const PropertyReport report =
      check_weak_quasi_contraction(shift_halve_mapping(), psi_one_third(), pairs);
  CHECK(report.all_pass());
  CHECK(report.rows.size() == 100);
}

TEST_CASE("equal arguments satisfy the contraction trivially") {
  const SeqPoint p = SeqPoint::from_text("1/2,1/4");
  const SamplePair pairs[] = {{p, p}};
  CHECK(check_weak_quasi_contraction(shift_halve_mapping(), psi_one_third(), pairs).all_pass());
}

TEST_CASE("the identity mapping is refuted as a weak quasi-contraction") {
  // d(x, y) = 1/4 but psi caps the certified diameter at 1/4 * 1/3 = 1/12.
  const SamplePair pairs[] = {{SeqPoint::from_text("1/2"), SeqPoint::zero()}};
  const PropertyReport report =
      check_weak_quasi_contraction(identity_mapping(), psi_one_third(), pairs);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].verdict == Verdict::fail);
  CHECK(report.rows[0].lhs == Rational(1, 4));
}

TEST_CASE("moving both arguments forward never grows orbit diameters") {
  SampleGenerator generator(61);
  const auto pairs = generator.pairs(60);
  const Mapping family[] = {shift_halve_mapping()};
  const PropertyReport report = check_orbit_monotonicity(family, pairs);
  CHECK(report.all_pass());

  // A strict case frozen by hand: from ((1/2), zero) the moved pair is
  // (zero, zero) with diameter 0 < 1/4.
  const SamplePair strict[] = {{SeqPoint::from_text("1/2"), SeqPoint::zero()}};
  CHECK(check_orbit_monotonicity(family, strict).all_pass());
}

TEST_CASE("orbit continuity holds along a tail collapsing to zero") {
  const Mapping map = shift_halve_mapping();
  std::vector<SeqPoint> tail;
  for (int k = 1; k <= 8; ++k) {
    tail.push_back(SeqPoint({rational_pow(Rational(1, 2), static_cast<unsigned>(k))}));
  }
  const PropertyReport report =
      check_ob_continuity(map, tail, SeqPoint::zero(), kDefaultDepth, Rational(1, 1000));
  CHECK(report.all_pass());
}

TEST_CASE("orbit continuity fails for a tail stuck away from its limit") {
  const Mapping map = shift_halve_mapping();
  const std::vector<SeqPoint> tail(4, SeqPoint::from_text("1/2"));
  const PropertyReport report =
      check_ob_continuity(map, tail, SeqPoint::zero(), kDefaultDepth, Rational(1, 1000000));
  CHECK_FALSE(report.all_pass());
  CHECK(report.count(Verdict::fail) > 0);
}

TEST_CASE("orbit continuity fails for a tail that oscillates instead of settling") {
  const Mapping map = shift_halve_mapping();
  const std::vector<SeqPoint> tail = {SeqPoint::from_text("1/2"), SeqPoint::zero(),
                                      SeqPoint::from_text("1/2"), SeqPoint::zero()};
  const PropertyReport report =
      check_ob_continuity(map, tail, SeqPoint::zero(), kDefaultDepth, Rational(1, 1000));
  // The certified uppers run 1/4, 0, 1/4, 0: the rebound breaks monotonicity.
  CHECK_FALSE(report.all_pass());
  CHECK(report.count(Verdict::fail) == 1);
  CHECK(report.rows[2].verdict == Verdict::fail);
}

TEST_CASE("the comparison gauge checks accept t/3 and refute the identity gauge") {
  const Rational samples[] = {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1),
                              Rational(2)};
  CHECK(check_comparison_function(psi_one_third(), samples).all_pass());

  const ComparisonFunction too_big("psi(t)=t", [](const Rational& t) { return t; });
  CHECK_FALSE(check_comparison_function(too_big, samples).all_pass());
}

TEST_CASE("scale mappings contract with the square of their ratio") {
  const Mapping half = scale_mapping(Rational(1, 2));
  REQUIRE(half.tail_contraction().has_value());
  CHECK(half.tail_contraction()->factor == Rational(1, 4));
  CHECK(half.apply(SeqPoint::from_text("1/2,1/4")) == SeqPoint::from_text("1/4,1/8"));

  SampleGenerator generator(67);
  for (int i = 0; i < 50; ++i) {
    const SeqPoint p = generator.point();
    CHECK(distance(half.apply(p), SeqPoint::zero()) == distance(p, SeqPoint::zero()) / 4);
  }
}

TEST_CASE("mapping construction validates its inputs") {
  CHECK_THROWS_AS(scale_mapping(Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(psi_scale(Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(Mapping("broken", nullptr), std::invalid_argument);
  CHECK_THROWS_AS(
      Mapping("bad tail", [](const SeqPoint& x) { return x; },
              TailContraction{Rational(2), SeqPoint::zero()}),
      std::invalid_argument);
}
