#include "borbit/metric.hpp"
#include "borbit/sampling.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace borbit;

TEST_CASE("distance is the exact sum of squared coordinate gaps") {
  const SeqPoint x = SeqPoint::from_text("1/2");
  CHECK(distance(x, SeqPoint::zero()) == Rational(1, 4));
  CHECK(distance(SeqPoint::zero(), x) == Rational(1, 4));
  CHECK(distance(x, x) == Rational(0));

  // (1/2-1/4)^2 + (1/4-1/2)^2 = 2*(1/4)^2 = 1/8, frozen by hand.
  CHECK(distance(SeqPoint::from_text("1/2,1/4"), SeqPoint::from_text("1/4,1/2")) ==
        Rational(1, 8));

  // Supports of different lengths: the tail counts in full.
  CHECK(distance(SeqPoint::from_text("1/2,1/4"), SeqPoint::from_text("1/2")) ==
        Rational(1, 16));
}

TEST_CASE("target sets are finite, nonempty, and queried exactly") {
  CHECK_THROWS_AS(TargetSet({}), std::invalid_argument);

  const TargetSet zero = TargetSet::zero();
  CHECK(zero.contains(SeqPoint::zero()));
  CHECK_FALSE(zero.contains(SeqPoint::from_text("1/2")));
  CHECK(distance_to_set(SeqPoint::from_text("1/2"), zero) == Rational(1, 4));
  CHECK(distance_to_set(SeqPoint::zero(), zero) == Rational(0));

  const TargetSet pair({SeqPoint::zero(), SeqPoint::from_text("1/2")});
  CHECK(distance_to_set(SeqPoint::from_text("1/2"), pair) == Rational(0));
  CHECK(distance_to_set(SeqPoint::from_text("1/4"), pair) == Rational(1, 16));
}

TEST_CASE("sampled points satisfy the space's membership invariants") {
  SampleGenerator generator(2024);
  for (int i = 0; i < 200; ++i) {
    const SeqPoint p = generator.point();
    CHECK(p.sum() <= Rational(1));
    for (const Rational& e : p.entries()) {
      CHECK(e >= Rational(0));
    }
    if (!p.entries().empty()) {
      CHECK(p.entries().back() != Rational(0));
    }
  }
}

TEST_CASE("identical seeds reproduce identical samples") {
  SampleGenerator a(7), b(7), c(8);
  bool saw_difference = false;
  for (int i = 0; i < 50; ++i) {
    const SeqPoint from_a = a.point();
    CHECK(from_a == b.point());
    if (!(from_a == c.point())) {
      saw_difference = true;
    }
  }
  CHECK(saw_difference);
}

TEST_CASE("the squared distance passes every axiom with s = 2 on samples") {
  SampleGenerator generator(99);
  const auto triples = generator.triples(300);
  const AxiomReport report = check_b_metric_axioms(concrete_space(), triples);
  CHECK(report.all_pass());
  CHECK(report.triples_checked == 300);
  CHECK(report.identity_failures == 0);
  CHECK(report.symmetry_failures == 0);
  CHECK(report.triangle_failures == 0);
  REQUIRE(report.min_coefficient.has_value());
  CHECK(*report.min_coefficient <= Rational(2));
  CHECK(*report.min_coefficient >= Rational(1));
}

TEST_CASE("the plain triangle inequality fails: s = 1 is refuted by one triple") {
  // x = 0, z = (1/2), y = (1): d(x,y) = 1 but d(x,z) + d(z,y) = 1/2.
  const SampleTriple witness{SeqPoint::zero(), SeqPoint::from_text("1/2"),
                             SeqPoint::from_text("1")};
  const SampleTriple triples[] = {witness};

  const AxiomReport strict = check_b_metric_axioms(concrete_space_with(Rational(1)), triples);
  CHECK_FALSE(strict.all_pass());
  CHECK(strict.triangle_failures == 1);
  CHECK(strict.identity_failures == 0);
  CHECK(strict.symmetry_failures == 0);

  // The same triple sits exactly on the s = 2 boundary: 1 <= 2 * (1/2).
  const AxiomReport relaxed = check_b_metric_axioms(concrete_space(), triples);
  CHECK(relaxed.all_pass());
  REQUIRE(relaxed.min_coefficient.has_value());
  CHECK(*relaxed.min_coefficient == Rational(2));
}

TEST_CASE("degenerate triples hold trivially") {
  const SeqPoint p = SeqPoint::from_text("1/4,1/8");
  const SampleTriple triples[] = {{p, p, p}};
  const AxiomReport report = check_b_metric_axioms(concrete_space(), triples);
  CHECK(report.all_pass());
}

TEST_CASE("the relaxed triangle inequality holds as a property, exactly") {
  SampleGenerator generator(31337);
  for (int i = 0; i < 200; ++i) {
    const SampleTriple t = generator.triple();
    const Rational lhs = distance(t.x, t.y);
    const Rational rhs = 2 * (distance(t.x, t.z) + distance(t.z, t.y));
    CHECK(lhs <= rhs);
    CHECK(distance(t.x, t.y) == distance(t.y, t.x));
    CHECK((distance(t.x, t.y) == 0) == (t.x == t.y));
  }
}

TEST_CASE("coefficients below 1 are rejected") {
  CHECK_THROWS_AS(concrete_space_with(Rational(1, 2)), std::invalid_argument);
}

TEST_CASE("property reports aggregate verdicts") {
  PropertyReport report;
  report.property = "sample";
  report.rows.push_back({"a", Rational(0), Rational(1), Verdict::pass});
  CHECK(report.all_pass());
  CHECK(report.aggregate() == Verdict::pass);

  report.rows.push_back({"b", Rational(0), Rational(1), Verdict::indeterminate});
  CHECK_FALSE(report.all_pass());
  CHECK(report.aggregate() == Verdict::indeterminate);

  report.rows.push_back({"c", Rational(2), Rational(1), Verdict::fail});
  CHECK(report.aggregate() == Verdict::fail);
  CHECK(report.count(Verdict::pass) == 1);
  CHECK(report.count(Verdict::fail) == 1);
  CHECK(report.count(Verdict::indeterminate) == 1);
}
