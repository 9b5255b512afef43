#include "borbit/product.hpp"

#include <algorithm>
#include <random>
#include <utility>

namespace borbit {

MappingFamily::MappingFamily(std::vector<Mapping> members, ComparisonFunction psi)
    : members_(std::move(members)), psi_(std::move(psi)) {
  if (members_.empty()) {
    throw std::invalid_argument("mapping family must be nonempty");
  }
}

PropertyReport MappingFamily::validate(std::span<const SamplePair> pairs, int depth) const {
  PropertyReport combined;
  combined.property = "weak quasi-contraction of every family member under " + psi_.name();
  for (const Mapping& member : members_) {
    PropertyReport member_report = check_weak_quasi_contraction(member, psi_, pairs, depth);
    for (PropertyRow& row : member_report.rows) {
      row.instance = member.name() + " " + row.instance;
      combined.rows.push_back(std::move(row));
    }
  }
  return combined;
}

IndexSelector::IndexSelector(std::string name, std::function<std::size_t(std::size_t)> select)
    : name_(std::move(name)), select_(std::move(select)) {
  if (!select_) {
    throw std::invalid_argument("selector '" + name_ + "' has no function");
  }
}

IndexSelector IndexSelector::shifted(std::size_t offset) const {
  auto base = select_;
  return IndexSelector(name_ + "+" + std::to_string(offset),
                       [base, offset](std::size_t step) { return base(step + offset); });
}

IndexSelector identity_selector() {
  return IndexSelector("identity", [](std::size_t step) { return step; });
}

IndexSelector constant_selector(std::size_t value) {
  return IndexSelector("constant(" + std::to_string(value) + ")",
                       [value](std::size_t) { return value; });
}

ErrorSchedule::ErrorSchedule(std::string name, std::function<Rational(std::size_t)> delta,
                             bool vanishing)
    : name_(std::move(name)), delta_(std::move(delta)), vanishing_(vanishing) {
  if (!delta_) {
    throw std::invalid_argument("schedule '" + name_ + "' has no function");
  }
}

Rational ErrorSchedule::at(std::size_t step) const {
  Rational value = delta_(step);
  if (value <= 0) {
    throw std::invalid_argument("schedule '" + name_ + "' is not positive at step " +
                                std::to_string(step) + ": " + value.str());
  }
  return value;
}

ErrorSchedule constant_schedule(const Rational& value) {
  if (value <= 0) {
    throw std::invalid_argument("constant schedule must be positive, got " + value.str());
  }
  return ErrorSchedule("constant(" + value.str() + ")",
                       [value](std::size_t) { return value; }, false);
}

ErrorSchedule geometric_schedule(const Rational& initial, const Rational& ratio) {
  if (initial <= 0) {
    throw std::invalid_argument("geometric schedule start must be positive, got " +
                                initial.str());
  }
  if (ratio <= 0 || ratio >= 1) {
    throw std::invalid_argument("geometric schedule ratio must lie in (0, 1), got " +
                                ratio.str());
  }
  return ErrorSchedule(
      "geometric(" + initial.str() + "," + ratio.str() + ")",
      [initial, ratio](std::size_t step) {
        return initial * rational_pow(ratio, static_cast<unsigned>(step));
      },
      true);
}

namespace {

// Adds `amount` to the 1-based coordinate, clipped so the total stays <= 1.
SeqPoint bump_coordinate(const SeqPoint& point, std::size_t index, const Rational& amount) {
  const Rational headroom = Rational(1) - point.sum();
  const Rational actual = std::min(amount, headroom);
  if (actual <= 0) {
    return point;
  }
  std::vector<Rational> entries = point.entries();
  if (entries.size() < index) {
    entries.resize(index, Rational(0));
  }
  entries[index - 1] += actual;
  return SeqPoint(std::move(entries));
}

}  // namespace

PerturbationRule::PerturbationRule(
    std::string name,
    std::function<SeqPoint(const SeqPoint&, std::size_t, const Rational&)> propose,
    std::optional<std::uint64_t> seed)
    : name_(std::move(name)), propose_(std::move(propose)), seed_(seed) {}

SeqPoint PerturbationRule::propose(const SeqPoint& exact, std::size_t step,
                                   const Rational& shrink) const {
  return propose_(exact, step, shrink);
}

PerturbationRule PerturbationRule::zero() {
  return PerturbationRule(
      "zero", [](const SeqPoint& exact, std::size_t, const Rational&) { return exact; },
      std::nullopt);
}

PerturbationRule PerturbationRule::first_coordinate_bump(const Rational& magnitude) {
  if (magnitude <= 0) {
    throw std::invalid_argument("bump magnitude must be positive, got " + magnitude.str());
  }
  return PerturbationRule(
      "bump(" + magnitude.str() + ")",
      [magnitude](const SeqPoint& exact, std::size_t, const Rational& shrink) {
        return bump_coordinate(exact, 1, magnitude * shrink);
      },
      std::nullopt);
}

PerturbationRule PerturbationRule::seeded_bump(std::uint64_t seed, const Rational& scale) {
  if (scale <= 0) {
    throw std::invalid_argument("bump scale must be positive, got " + scale.str());
  }
  auto propose = [seed, scale](const SeqPoint& exact, std::size_t step, const Rational& shrink) {
    // One generator per (seed, step) keeps steps reproducible regardless of
    // how many shrink retries earlier steps consumed.
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (step + 1)));
    const std::size_t index = 1 + static_cast<std::size_t>(rng() % 4);
    const Rational fraction(1 + static_cast<unsigned>(rng() % 63), 64);
    return bump_coordinate(exact, index, scale * fraction * shrink);
  };
  return PerturbationRule("seeded_bump(" + std::to_string(seed) + "," + scale.str() + ")",
                          std::move(propose), seed);
}

PerturbationRule PerturbationRule::reseeded(std::uint64_t salt) const {
  if (!seed_) {
    return *this;
  }
  // Rebuild with a displaced seed; the scale is baked into propose_, so
  // reconstruct from scratch is not possible here — wrap instead.
  auto base = propose_;
  const std::uint64_t new_seed = *seed_ + salt;
  auto propose = [base, salt](const SeqPoint& exact, std::size_t step, const Rational& shrink) {
    // Displace the step stream instead of the baked-in seed; distinct salts
    // decorrelate the draws just the same.
    return base(exact, step + salt * 0x100000000ULL, shrink);
  };
  return PerturbationRule(name_ + "#" + std::to_string(salt), std::move(propose), new_seed);
}

Trajectory exact_product(const MappingFamily& family, const IndexSelector& f, const SeqPoint& x0,
                         std::size_t n) {
  Trajectory trajectory;
  trajectory.points.reserve(n + 1);
  trajectory.points.push_back(x0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t selector_value = f(i);
    trajectory.points.push_back(family.member_for(selector_value).apply(trajectory.points.back()));
    trajectory.selector_trace.push_back(selector_value);
    trajectory.certified_step_errors.push_back(Rational(0));
    trajectory.schedule_values.push_back(Rational(0));
  }
  return trajectory;
}

ScheduleTooTightError::ScheduleTooTightError(std::size_t step_, Rational delta_,
                                             Rational best_bound_)
    : std::runtime_error("schedule too tight at step " + std::to_string(step_) + ": delta = " +
                         delta_.str() + " but the best certified step bound is " +
                         best_bound_.str()),
      step(step_),
      delta(std::move(delta_)),
      best_bound(std::move(best_bound_)) {}

namespace {

// Certified bound on diam(O(candidate, exact)) under every family member;
// absent when any member's estimate is unbounded.
std::optional<Rational> certified_step_bound(const MappingFamily& family,
                                             const SeqPoint& candidate, const SeqPoint& exact,
                                             int depth) {
  std::optional<Rational> worst;
  for (const Mapping& member : family.members()) {
    const DiamEstimate estimate = double_orbit_diameter(member, candidate, exact, depth);
    if (!estimate.bounded()) {
      return std::nullopt;
    }
    if (!worst || *estimate.upper > *worst) {
      worst = *estimate.upper;
    }
  }
  return worst;
}

// One inexact step: perturb, certify, shrink on failure.
SeqPoint certified_step(const MappingFamily& family, const SeqPoint& exact,
                        const PerturbationRule& perturb, std::size_t step, const Rational& delta,
                        int depth, Rational& bound_out) {
  Rational shrink(1);
  std::optional<Rational> best_bound;
  for (int attempt = 0; attempt <= kMaxShrinks; ++attempt) {
    const SeqPoint candidate = perturb.propose(exact, step, shrink);
    const std::optional<Rational> bound = certified_step_bound(family, candidate, exact, depth);
    if (bound && (!best_bound || *bound < *best_bound)) {
      best_bound = *bound;
    }
    if (bound && *bound <= delta) {
      bound_out = *bound;
      return candidate;
    }
    shrink /= 2;
  }
  throw ScheduleTooTightError(step, delta, best_bound.value_or(Rational(-1)));
}

}  // namespace

Trajectory inexact_orbit(const MappingFamily& family, const IndexSelector& f, const SeqPoint& x0,
                         const ErrorSchedule& schedule, const PerturbationRule& perturb,
                         std::size_t n, int depth) {
  Trajectory trajectory;
  trajectory.points.reserve(n + 1);
  trajectory.points.push_back(x0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t selector_value = f(i);
    const SeqPoint exact = family.member_for(selector_value).apply(trajectory.points.back());
    const Rational delta = schedule.at(i);
    Rational bound(0);
    SeqPoint next = certified_step(family, exact, perturb, i, delta, depth, bound);
    trajectory.points.push_back(std::move(next));
    trajectory.selector_trace.push_back(selector_value);
    trajectory.certified_step_errors.push_back(bound);
    trajectory.schedule_values.push_back(delta);
  }
  return trajectory;
}

Rational target_error_threshold(const Rational& epsilon, std::size_t n0, const Rational& s) {
  if (epsilon <= 0 || n0 == 0 || s < 1) {
    throw std::invalid_argument("target error threshold needs epsilon > 0, n0 >= 1, s >= 1");
  }
  return epsilon / (4 * Rational(n0) * rational_pow(s, static_cast<unsigned>(n0)));
}

Rational coalescence_error_threshold(const Rational& epsilon, std::size_t n, const Rational& s) {
  if (epsilon <= 0 || n == 0 || s < 1) {
    throw std::invalid_argument("coalescence error threshold needs epsilon > 0, n >= 1, s >= 1");
  }
  return epsilon / (8 * Rational(n) * rational_pow(s, static_cast<unsigned>(n) + 1));
}

std::size_t geometric_decay_length(const Rational& factor, const Rational& initial,
                                   const Rational& epsilon) {
  if (factor < 0 || factor >= 1 || epsilon <= 0) {
    throw std::invalid_argument("geometric decay length needs 0 <= factor < 1, epsilon > 0");
  }
  Rational value = initial;
  std::size_t steps = 0;
  while (value >= epsilon) {
    value *= factor;
    ++steps;
  }
  return steps;
}

HorizonExhausted::HorizonExhausted(std::size_t horizon_, Rational best_distance_)
    : std::runtime_error("no stable product length within horizon " + std::to_string(horizon_) +
                         "; best distance reached " + best_distance_.str()),
      horizon(horizon_),
      best_distance(std::move(best_distance_)) {}

std::size_t first_stable_product_length(const MappingFamily& family, const IndexSelector& f,
                                        const TargetSet& target, const Rational& epsilon,
                                        std::span<const SeqPoint> samples, std::size_t horizon) {
  if (epsilon <= 0) {
    throw std::invalid_argument("epsilon must be positive");
  }
  // Walk every sample out to the horizon, then find the last step at which
  // any sample sat at distance >= epsilon.
  std::size_t n = 0;
  for (const SeqPoint& sample : samples) {
    const Trajectory trajectory = exact_product(family, f, sample, horizon);
    std::size_t last_outside = 0;
    bool any_outside = false;
    Rational final_distance(0);
    for (std::size_t i = 0; i < trajectory.points.size(); ++i) {
      const Rational d = distance_to_set(trajectory.points[i], target);
      if (d >= epsilon) {
        last_outside = i;
        any_outside = true;
      }
      if (i + 1 == trajectory.points.size()) {
        final_distance = d;
      }
    }
    if (any_outside && last_outside == horizon) {
      // Still outside at the end of the scan — no stable length observed.
      throw HorizonExhausted(horizon, final_distance);
    }
    if (any_outside) {
      n = std::max(n, last_outside + 1);
    }
  }

  // Cross-check against the analytic bound when one applies: a singleton
  // family contracting toward the single target point must stabilize no
  // later than the geometric decay of the worst initial distance.
  if (family.size() == 1 && family.member(0).tail_contraction() &&
      target.points().size() == 1 &&
      family.member(0).tail_contraction()->base == target.points().front()) {
    Rational worst_initial(0);
    for (const SeqPoint& sample : samples) {
      worst_initial = std::max(worst_initial, distance(sample, target.points().front()));
    }
    const std::size_t analytic = geometric_decay_length(
        family.member(0).tail_contraction()->factor, worst_initial, epsilon);
    if (n > analytic) {
      throw std::logic_error("stable product length " + std::to_string(n) +
                             " exceeds the analytic bound " + std::to_string(analytic));
    }
  }
  return n;
}

MonitorReport convergence_monitor(const Trajectory& trajectory, const TargetSet& target,
                                  const Rational& epsilon) {
  if (epsilon <= 0) {
    throw std::invalid_argument("epsilon must be positive");
  }
  MonitorReport report;
  report.epsilon = epsilon;
  report.distances.reserve(trajectory.points.size());
  for (const SeqPoint& point : trajectory.points) {
    report.distances.push_back(distance_to_set(point, target));
  }
  std::size_t first_stable = 0;
  for (std::size_t i = 0; i < report.distances.size(); ++i) {
    if (report.distances[i] >= epsilon) {
      first_stable = i + 1;
    }
  }
  report.peak_after_n_bar = Rational(0);
  if (first_stable < report.distances.size()) {
    report.n_bar = first_stable;
    for (std::size_t i = first_stable; i < report.distances.size(); ++i) {
      report.peak_after_n_bar = std::max(report.peak_after_n_bar, report.distances[i]);
    }
  }
  return report;
}

PairReport ergodic_pair_run(const MappingFamily& family, const IndexSelector& f,
                            const SeqPoint& x0, const SeqPoint& y0,
                            const ErrorSchedule& schedule, const PerturbationRule& perturb,
                            std::size_t n, const Rational& epsilon, int depth) {
  if (epsilon <= 0) {
    throw std::invalid_argument("epsilon must be positive");
  }
  PairReport report;
  report.epsilon = epsilon;
  report.x = inexact_orbit(family, f, x0, schedule, perturb, n, depth);
  report.y = inexact_orbit(family, f, y0, schedule, perturb.reseeded(1), n, depth);
  report.pair_distances.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    report.pair_distances.push_back(distance(report.x.points[i], report.y.points[i]));
  }
  std::size_t first_stable = 0;
  for (std::size_t i = 0; i < report.pair_distances.size(); ++i) {
    if (report.pair_distances[i] >= epsilon) {
      first_stable = i + 1;
    }
  }
  if (first_stable < report.pair_distances.size()) {
    report.n_check = first_stable;
  }
  return report;
}

PropertyReport check_base_orbit_bound(const MappingFamily& family, const SeqPoint& x,
                                      const SeqPoint& theta, const Rational& bound,
                                      const Rational& s, int depth) {
  if (bound <= 0 || s < 1) {
    throw std::invalid_argument("base orbit bound needs bound > 0 and s >= 1");
  }
  PropertyReport report;
  report.property = "joint orbit of the start and theta within " + bound.str() + "/" + s.str();
  const Rational rhs = bound / s;
  for (const Mapping& member : family.members()) {
    const DiamEstimate estimate = double_orbit_diameter(member, x, theta, depth);
    Verdict verdict;
    if (estimate.bounded() && *estimate.upper <= rhs) {
      verdict = Verdict::pass;
    } else if (estimate.lower > rhs) {
      verdict = Verdict::fail;
    } else {
      verdict = Verdict::indeterminate;
    }
    report.rows.push_back(
        {member.name(), estimate.bounded() ? *estimate.upper : estimate.lower, rhs, verdict});
  }
  return report;
}

PropertyReport check_target_preimages(const MappingFamily& family, const TargetSet& target) {
  PropertyReport report;
  report.property = "every target point has an in-target preimage under every member";
  for (const Mapping& member : family.members()) {
    for (std::size_t i = 0; i < target.points().size(); ++i) {
      const SeqPoint& goal = target.points()[i];
      std::size_t found = 0;
      for (const SeqPoint& source : target.points()) {
        if (member.apply(source) == goal) {
          ++found;
        }
      }
      report.rows.push_back({member.name() + " target " + std::to_string(i), Rational(found),
                             Rational(1), found >= 1 ? Verdict::pass : Verdict::fail});
    }
  }
  return report;
}

}  // namespace borbit
