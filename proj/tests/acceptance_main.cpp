// Acceptance gate: one line per criterion, exit code = number of failures.
//
// Every tolerance, seed, and time budget that a criterion depends on is
// pinned here as a named constant, so a green run certifies the same claims
// tomorrow that it certifies today.

#include "borbit/counterexample.hpp"
#include "borbit/product.hpp"
#include "borbit/sampling.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

namespace {

using namespace borbit;

// Shared pins.
constexpr std::uint64_t kSeed = 12345;
const Rational kEpsilon(1, 1000000);
constexpr std::size_t kHorizon = 60;

struct Criterion {
  std::string label;
  std::chrono::milliseconds budget;
  std::function<bool(std::string&)> run;
};

// 1: the canonical escape block, frozen shape and exact escape distance.
bool canonical_block(std::string& detail) {
  const BlockResult block = build_block(SeqPoint::zero(), 0, GammaSequence::constant(kGammaCap));
  if (block.m != 5 || block.n != 6) {
    detail = "expected m=5, n=6, got m=" + std::to_string(block.m) +
             ", n=" + std::to_string(block.n);
    return false;
  }
  const Rational escape = distance(block.w.back(), SeqPoint::zero());
  if (escape != Rational(1, 16384)) {
    detail = "escape distance " + to_string(escape) + " != 1/16384";
    return false;
  }
  const Rational margin = escape - kEscapeThreshold;
  if (margin <= 0) {
    detail = "no positive margin over 1/20000";
    return false;
  }
  const VerificationReport report = verify_block(block, GammaSequence::constant(kGammaCap));
  if (!report.all_pass()) {
    detail = "block verification has " + std::to_string(report.count(Verdict::fail)) +
             " failing rows";
    return false;
  }
  return true;
}

// 2: three chained blocks escape at steps 0 < 6 < 12 < 18 and the stored
// orbit re-verifies from its data alone.
bool chained_blocks(std::string& detail) {
  const DivergentOrbit orbit =
      build_divergent_orbit(SeqPoint::zero(), GammaSequence::constant(kGammaCap), 3);
  const std::vector<std::size_t> expected_t = {0, 6, 12, 18};
  if (orbit.t != expected_t) {
    detail = "escape steps are not 0,6,12,18";
    return false;
  }
  for (std::size_t k = 1; k < orbit.t.size(); ++k) {
    if (orbit.t[k] <= orbit.t[k - 1]) {
      detail = "escape steps do not strictly increase";
      return false;
    }
    const Rational d = distance(orbit.z[orbit.t[k]], SeqPoint::zero());
    if (d < kEscapeThreshold) {
      detail = "escape point " + std::to_string(k) + " sits below 1/20000";
      return false;
    }
  }
  const VerificationReport report = verify_divergence(orbit, kEscapeThreshold);
  if (!report.all_pass()) {
    detail = "divergence verification has " + std::to_string(report.count(Verdict::fail)) +
             " failing rows";
    return false;
  }
  return true;
}

// 3: an inexact product under a vanishing schedule stabilizes near zero and
// every step's certified error respects its schedule value.
bool inexact_stabilization(std::string& detail) {
  const MappingFamily family({shift_halve_mapping()}, psi_one_third());
  const Trajectory run = inexact_orbit(
      family, identity_selector(), SeqPoint({Rational(1, 2)}),
      geometric_schedule(Rational(1, 3), Rational(1, 2)),
      PerturbationRule::first_coordinate_bump(Rational(1, 8)), kHorizon);
  for (std::size_t i = 0; i < run.certified_step_errors.size(); ++i) {
    if (run.certified_step_errors[i] > run.schedule_values[i]) {
      detail = "step " + std::to_string(i) + " exceeds its schedule value";
      return false;
    }
  }
  const MonitorReport monitor = convergence_monitor(run, TargetSet::zero(), kEpsilon);
  if (!monitor.n_bar) {
    detail = "no stabilization index within the horizon";
    return false;
  }
  return true;
}

// 4: the exact per-step decay d(T^n x, T^n y) <= (1/4)^n d(x, y), plus the
// gauge check, on 100 seeded pairs.
bool pairwise_decay(std::string& detail) {
  SampleGenerator generator(kSeed);
  const std::vector<SamplePair> pairs = generator.pairs(100);
  for (const SamplePair& pair : pairs) {
    SeqPoint x = pair.x;
    SeqPoint y = pair.y;
    const Rational base = distance(x, y);
    Rational power(1);
    for (std::size_t n = 1; n <= 20; ++n) {
      x = shift_halve(x);
      y = shift_halve(y);
      power /= 4;
      if (distance(x, y) > power * base) {
        detail = "decay fails at n=" + std::to_string(n);
        return false;
      }
    }
  }
  const PropertyReport report =
      check_weak_quasi_contraction(shift_halve_mapping(), psi_one_third(), pairs);
  if (!report.all_pass()) {
    detail = "gauge check has non-passing rows";
    return false;
  }
  return true;
}

// 5: the distance satisfies the relaxed axioms at s = 2 on 1000 seeded
// triples, while a fixed witness refutes s = 1.
bool axiom_sampling(std::string& detail) {
  SampleGenerator generator(kSeed);
  const AxiomReport at_two = check_b_metric_axioms(concrete_space(), generator.triples(1000));
  if (!at_two.all_pass()) {
    detail = "axioms fail at s=2 (" + std::to_string(at_two.triangle_failures) +
             " triangle failures)";
    return false;
  }
  const std::vector<SampleTriple> witness = {
      {SeqPoint::zero(), SeqPoint({Rational(1, 2)}), SeqPoint({Rational(1)})}};
  const AxiomReport at_one = check_b_metric_axioms(concrete_space_with(Rational(1)), witness);
  if (at_one.triangle_failures != 1) {
    detail = "witness triple does not refute s=1";
    return false;
  }
  return true;
}

// 6: the admissible error thresholds are the frozen rationals and sit
// strictly inside the open bounds they are halves of.
bool threshold_pins(std::string& detail) {
  const Rational target = target_error_threshold(Rational(1, 10), 5, Rational(2));
  if (target != Rational(1, 6400)) {
    detail = "target threshold " + to_string(target) + " != 1/6400";
    return false;
  }
  const Rational coalesce = coalescence_error_threshold(Rational(1), 2, Rational(2));
  if (coalesce != Rational(1, 128)) {
    detail = "coalescence threshold " + to_string(coalesce) + " != 1/128";
    return false;
  }
  if (!(target < Rational(1, 10) / (2 * Rational(5) * 32))) {
    detail = "target threshold is not strictly below its open bound";
    return false;
  }
  if (!(coalesce < Rational(1) / (4 * Rational(2) * 8))) {
    detail = "coalescence threshold is not strictly below its open bound";
    return false;
  }
  return true;
}

// 7: two independently perturbed inexact products coalesce.
bool ergodic_coalescence(std::string& detail) {
  const MappingFamily family({shift_halve_mapping()}, psi_one_third());
  const PairReport report = ergodic_pair_run(
      family, identity_selector(), SeqPoint({Rational(1, 2)}),
      SeqPoint({Rational(1, 4), Rational(1, 8)}),
      geometric_schedule(Rational(1, 3), Rational(1, 2)),
      PerturbationRule::seeded_bump(kSeed, Rational(1, 8)), kHorizon, kEpsilon);
  if (!report.n_check) {
    detail = "pair never stays within epsilon";
    return false;
  }
  return true;
}

// 8: applying the mapping to both points never grows the certified joint
// orbit diameter, across 200 seeded pairs, with almost no indeterminacy.
bool monotonicity_sampling(std::string& detail) {
  SampleGenerator generator(kSeed);
  const std::vector<SamplePair> pairs = generator.pairs(200);
  const std::vector<Mapping> family = {shift_halve_mapping()};
  const PropertyReport report = check_orbit_monotonicity(family, pairs);
  if (report.count(Verdict::fail) != 0) {
    detail = std::to_string(report.count(Verdict::fail)) + " failing rows";
    return false;
  }
  if (report.count(Verdict::indeterminate) >= 10) {
    detail = std::to_string(report.count(Verdict::indeterminate)) + " indeterminate rows";
    return false;
  }
  return true;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"canonical escape block: m=5, n=6, d(w^6, 0) = 1/16384 >= 1/20000",
       std::chrono::milliseconds(1000), canonical_block},
      {"three chained blocks escape at t = 0,6,12,18 and re-verify",
       std::chrono::milliseconds(10000), chained_blocks},
      {"inexact product stabilizes within 1/1000000 under a vanishing schedule",
       std::chrono::milliseconds(5000), inexact_stabilization},
      {"100 seeded pairs decay exactly by 1/4 per step through n = 20",
       std::chrono::milliseconds(5000), pairwise_decay},
      {"1000 seeded triples satisfy the relaxed axioms at s = 2 but not s = 1",
       std::chrono::milliseconds(2000), axiom_sampling},
      {"admissible error thresholds equal 1/6400 and 1/128, strictly inside bounds",
       std::chrono::milliseconds(1000), threshold_pins},
      {"independently perturbed pair coalesces within 1/1000000",
       std::chrono::milliseconds(5000), ergodic_coalescence},
      {"200 seeded pairs keep certified orbit diameters monotone",
       std::chrono::milliseconds(10000), monotonicity_sampling},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& criterion = criteria[i];
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    if (elapsed > criterion.budget) {
      detail = (detail.empty() ? "" : detail + "; ") + "over budget " +
               std::to_string(criterion.budget.count()) + " ms";
      ok = false;
    }
    std::printf("[%s] %zu: %s (%lld ms)%s%s\n", ok ? "PASS" : "FAIL", i + 1,
                criterion.label.c_str(), static_cast<long long>(elapsed.count()),
                detail.empty() ? "" : " — ", detail.c_str());
    if (!ok) {
      ++failures;
    }
  }
  std::printf("accepted %zu/%zu\n", criteria.size() - failures, criteria.size());
  return failures;
}
