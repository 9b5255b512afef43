#pragma once

#include "borbit/orbit.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace borbit {

// A finite family of mappings sharing one comparison gauge. Selector values
// range over all of the naturals; they are folded onto the family by index
// modulo size, so any selector drives any nonempty family.
class MappingFamily {
 public:
  MappingFamily(std::vector<Mapping> members, ComparisonFunction psi);  // throws when empty

  std::size_t size() const { return members_.size(); }
  const std::vector<Mapping>& members() const { return members_; }
  const Mapping& member(std::size_t position) const { return members_.at(position); }
  const Mapping& member_for(std::size_t selector_value) const {
    return members_[selector_value % members_.size()];
  }
  const ComparisonFunction& psi() const { return psi_; }

  // Checks every member against the shared gauge on the given pairs.
  PropertyReport validate(std::span<const SamplePair> pairs, int depth = kDefaultDepth) const;

 private:
  std::vector<Mapping> members_;
  ComparisonFunction psi_;
};

// f : step index -> selector value. Total on the naturals.
class IndexSelector {
 public:
  IndexSelector(std::string name, std::function<std::size_t(std::size_t)> select);

  const std::string& name() const { return name_; }
  std::size_t operator()(std::size_t step) const { return select_(step); }

  // The selector g(i) = f(i + offset); products driven by g are the "tail"
  // products of those driven by f.
  IndexSelector shifted(std::size_t offset) const;

 private:
  std::string name_;
  std::function<std::size_t(std::size_t)> select_;
};

IndexSelector identity_selector();                  // f(i) = i
IndexSelector constant_selector(std::size_t value); // f(i) = value

// delta_i, the admissible error at step i. Exact rationals; `vanishing`
// records whether delta_i -> 0 (declared, not inferred).
class ErrorSchedule {
 public:
  ErrorSchedule(std::string name, std::function<Rational(std::size_t)> delta, bool vanishing);

  const std::string& name() const { return name_; }
  Rational at(std::size_t step) const;  // throws when the schedule is not positive
  bool vanishing() const { return vanishing_; }

 private:
  std::string name_;
  std::function<Rational(std::size_t)> delta_;
  bool vanishing_;
};

ErrorSchedule constant_schedule(const Rational& value);
// delta_i = initial * ratio^i with 0 < ratio < 1.
ErrorSchedule geometric_schedule(const Rational& initial, const Rational& ratio);

// How an inexact step perturbs the exact image T_{f(i)} x_i. `propose` must
// return a valid point for every shrink factor; the runner retries with
// geometrically smaller factors until the perturbed point certifies against
// the schedule.
class PerturbationRule {
 public:
  // x_{i+1} = exact image, untouched.
  static PerturbationRule zero();
  // Adds magnitude*shrink to the first coordinate, clipped so the
  // coordinate sum stays <= 1.
  static PerturbationRule first_coordinate_bump(const Rational& magnitude);
  // Adds a seeded pseudo-random fraction of scale*shrink to one of the
  // first four coordinates; deterministic per (seed, step).
  static PerturbationRule seeded_bump(std::uint64_t seed, const Rational& scale);

  const std::string& name() const { return name_; }
  SeqPoint propose(const SeqPoint& exact, std::size_t step, const Rational& shrink) const;

  // A rule of the same kind that perturbs independently (different seed);
  // rules without internal randomness return themselves.
  PerturbationRule reseeded(std::uint64_t salt) const;

 private:
  PerturbationRule(std::string name,
                   std::function<SeqPoint(const SeqPoint&, std::size_t, const Rational&)> propose,
                   std::optional<std::uint64_t> seed);

  std::string name_;
  std::function<SeqPoint(const SeqPoint&, std::size_t, const Rational&)> propose_;
  std::optional<std::uint64_t> seed_;
};

// An orbit x_0, x_1, ... together with, per step, the raw selector value,
// the certified bound on diam(O(x_{i+1}, T_{f(i)} x_i)) under every family
// member, and the schedule value it was certified against. For exact
// products the bounds are identically zero.
struct Trajectory {
  std::vector<SeqPoint> points;
  std::vector<std::size_t> selector_trace;
  std::vector<Rational> certified_step_errors;
  std::vector<Rational> schedule_values;
};

// The error-free product: x_{i+1} = T_{f(i)} x_i for n steps.
Trajectory exact_product(const MappingFamily& family, const IndexSelector& f, const SeqPoint& x0,
                         std::size_t n);

// Raised when no shrink of the perturbation certifies within the schedule.
struct ScheduleTooTightError : std::runtime_error {
  ScheduleTooTightError(std::size_t step, Rational delta, Rational best_bound);

  std::size_t step;
  Rational delta;
  Rational best_bound;  // smallest certified bound reached before giving up
};

inline constexpr int kMaxShrinks = 64;

// An inexact product: each step applies T_{f(i)}, perturbs the image, and
// certifies diam(O(x_{i+1}, T_{f(i)} x_i)) <= delta_i under every family
// member, shrinking the perturbation by halves (up to kMaxShrinks times)
// until the certificate holds. Throws ScheduleTooTightError when even the
// unperturbed image cannot be certified within delta_i.
Trajectory inexact_orbit(const MappingFamily& family, const IndexSelector& f, const SeqPoint& x0,
                         const ErrorSchedule& schedule, const PerturbationRule& perturb,
                         std::size_t n, int depth = kDefaultDepth);

// Admissible per-step error for keeping n0-step products within epsilon of
// a target: half of the open bound epsilon / (2 * n0 * s^n0).
Rational target_error_threshold(const Rational& epsilon, std::size_t n0, const Rational& s);

// Admissible per-step error for driving two inexact orbits together within
// n steps: half of the open bound epsilon / (4 * n * s^(n+1)).
Rational coalescence_error_threshold(const Rational& epsilon, std::size_t n, const Rational& s);

// Smallest k with factor^k * initial < epsilon (exact scan; factor < 1).
std::size_t geometric_decay_length(const Rational& factor, const Rational& initial,
                                   const Rational& epsilon);

// Raised when a stability scan hits its horizon without succeeding.
struct HorizonExhausted : std::runtime_error {
  HorizonExhausted(std::size_t horizon, Rational best_distance);

  std::size_t horizon;
  Rational best_distance;
};

// Smallest n such that every sample's exact product has landed within
// epsilon of the target by step n and stays there through the scanned
// horizon. Throws HorizonExhausted when no such n <= horizon exists.
std::size_t first_stable_product_length(const MappingFamily& family, const IndexSelector& f,
                                        const TargetSet& target, const Rational& epsilon,
                                        std::span<const SeqPoint> samples, std::size_t horizon);

// Stabilization summary of one trajectory against a target set.
struct MonitorReport {
  std::vector<Rational> distances;      // d(x_i, E) per point
  std::optional<std::size_t> n_bar;     // first index from which d stays < epsilon
  Rational epsilon;
  Rational peak_after_n_bar;            // max distance at/after n_bar (0 when absent)
};

MonitorReport convergence_monitor(const Trajectory& trajectory, const TargetSet& target,
                                  const Rational& epsilon);

// Two inexact orbits driven by the same selector and schedule but
// independently perturbed, watched for coalescence d(x_i, y_i) < epsilon.
struct PairReport {
  Trajectory x;
  Trajectory y;
  std::vector<Rational> pair_distances;
  std::optional<std::size_t> n_check;  // first index from which d(x_i, y_i) stays < epsilon
  Rational epsilon;
};

PairReport ergodic_pair_run(const MappingFamily& family, const IndexSelector& f,
                            const SeqPoint& x0, const SeqPoint& y0,
                            const ErrorSchedule& schedule, const PerturbationRule& perturb,
                            std::size_t n, const Rational& epsilon, int depth = kDefaultDepth);

// Certifies diam(O(T_i; x, theta)) <= bound / s for every family member —
// the premiss that keeps inexact orbits inside a bounded ball.
PropertyReport check_base_orbit_bound(const MappingFamily& family, const SeqPoint& x,
                                      const SeqPoint& theta, const Rational& bound,
                                      const Rational& s, int depth = kDefaultDepth);

// Every target point must have a preimage inside the target under every
// member (the set is invariant enough to be converged to).
PropertyReport check_target_preimages(const MappingFamily& family, const TargetSet& target);

}  // namespace borbit
