#include "borbit/counterexample.hpp"

#include <stdexcept>
#include <utility>

namespace borbit {

GammaSequence::GammaSequence(std::string description,
                             std::function<Rational(std::size_t)> gamma, bool uniform_cap)
    : description_(std::move(description)), gamma_(std::move(gamma)), uniform_cap_(uniform_cap) {
  if (!gamma_) {
    throw std::invalid_argument("gamma sequence '" + description_ + "' has no function");
  }
}

GammaSequence GammaSequence::constant(const Rational& value) {
  if (value <= 0) {
    throw std::invalid_argument("gamma must be positive, got " + value.str());
  }
  return GammaSequence("constant(" + value.str() + ")",
                       [value](std::size_t) { return value; }, value <= kGammaCap);
}

Rational GammaSequence::at(std::size_t index) const {
  Rational value = gamma_(index);
  if (value <= 0) {
    throw std::invalid_argument("gamma_" + std::to_string(index) + " = " + value.str() +
                                " is not positive");
  }
  if (uniform_cap_ && value > kGammaCap) {
    throw std::invalid_argument("gamma_" + std::to_string(index) + " = " + value.str() +
                                " breaks the declared cap " + kGammaCap.str());
  }
  return value;
}

BlockResult build_block(const SeqPoint& w0, std::size_t q, const GammaSequence& gamma, int depth,
                        std::size_t scan_limit) {
  if (!gamma.uniform_cap()) {
    throw std::invalid_argument("block construction needs the uniform gamma cap " +
                                kGammaCap.str() + "; '" + gamma.description() +
                                "' does not declare it");
  }
  const Mapping map = shift_halve_mapping();
  {
    const DiamEstimate start_diam = orbit_diameter(map, w0, depth);
    if (!start_diam.bounded() || *start_diam.upper > kDiamCap) {
      throw std::invalid_argument("block start's orbit diameter does not certify within " +
                                  kDiamCap.str());
    }
  }

  BlockResult block;
  block.q = q;

  // Minimal m > 4 whose tail mass is at most 1/32. The tail is empty once m
  // passes the support, so the scan always terminates.
  const Rational tail_cap(1, 32);
  std::size_t m = 5;
  while (true) {
    Rational tail(0);
    for (std::size_t i = m; i <= w0.support_length(); ++i) {
      tail += w0.coordinate(i);
    }
    if (tail <= tail_cap) {
      break;
    }
    ++m;
  }
  block.m = m;

  // Minimal n > m accumulating at least 1/32 of gamma mass over the window
  // q+m..q+n. With every gamma at most 1/64 the sum right before crossing
  // sits in [1/64, 1/32): one term cannot jump the whole window.
  const Rational window_cap(1, 32);
  Rational window = gamma.at(q + m);
  std::size_t n = m;
  while (window < window_cap) {
    ++n;
    if (n - m > scan_limit) {
      throw std::runtime_error("gamma window sum did not reach " + window_cap.str() +
                               " within " + std::to_string(scan_limit) + " candidate lengths");
    }
    window += gamma.at(q + n);
  }
  if (n == m) {
    // gamma_{q+m} alone reached 1/32 — impossible under the 1/64 cap.
    throw std::logic_error("gamma window closed with a single term despite the cap");
  }
  block.n = n;
  block.window_sum = window;
  block.prefix_sum = window - gamma.at(q + n);

  // Points. Up to m: plain iterates. Past m: the iterate pattern continues
  // except at coordinate n+1-i, which also carries half of the gamma mass
  // accumulated so far; that pile is what the endpoint keeps.
  block.w.reserve(n + 1);
  block.w.push_back(w0);
  for (std::size_t i = 1; i <= m; ++i) {
    block.w.push_back(map.apply(block.w.back()));
  }
  Rational accumulated(0);  // sum_{j=q+m}^{q+i-1} gamma_j
  for (std::size_t i = m + 1; i <= n; ++i) {
    accumulated += gamma.at(q + i - 1);
    const Rational power = rational_pow(Rational(1, 2), static_cast<unsigned>(i));
    const std::size_t pile_index = n + 1 - i;
    std::size_t width = pile_index;
    if (w0.support_length() > i) {
      width = std::max(width, w0.support_length() - i);
    }
    std::vector<Rational> entries(width, Rational(0));
    for (std::size_t j = 1; j <= width; ++j) {
      entries[j - 1] = w0.coordinate(j + i) * power;
    }
    entries[pile_index - 1] = w0.coordinate(n + 1) * power + accumulated / 2;
    block.w.push_back(SeqPoint(std::move(entries)));
  }

  if (block.prefix_sum < Rational(1, 64) || block.prefix_sum >= window_cap) {
    throw std::logic_error("gamma prefix sum " + block.prefix_sum.str() +
                           " escaped [1/64, 1/32)");
  }
  return block;
}

std::size_t VerificationReport::count(Verdict v) const {
  std::size_t n = 0;
  for (const VerificationRow& row : rows) {
    if (row.verdict == v) {
      ++n;
    }
  }
  return n;
}

bool VerificationReport::all_pass() const {
  return count(Verdict::pass) == rows.size();
}

Verdict VerificationReport::aggregate() const {
  if (count(Verdict::fail) > 0) {
    return Verdict::fail;
  }
  return all_pass() ? Verdict::pass : Verdict::indeterminate;
}

namespace {

// lhs must stay below rhs, with lhs an interval-certified diameter: compare
// the certified upper for a pass, the exact lower for a refutation.
VerificationRow diameter_below_row(std::string inequality, const DiamEstimate& estimate,
                                   const Rational& rhs) {
  VerificationRow row;
  row.inequality = std::move(inequality);
  row.rhs = rhs;
  if (estimate.bounded()) {
    row.lhs = *estimate.upper;
    row.verdict = (*estimate.upper <= rhs) ? Verdict::pass
                  : (estimate.lower > rhs) ? Verdict::fail
                                           : Verdict::indeterminate;
  } else {
    row.lhs = estimate.lower;
    row.verdict = (estimate.lower > rhs) ? Verdict::fail : Verdict::indeterminate;
  }
  row.margin = row.rhs - row.lhs;
  return row;
}

void note_indeterminate(VerificationReport& report) {
  if (report.count(Verdict::indeterminate) > 0) {
    report.note = "some diameter bounds did not certify; retry with a larger depth";
  }
}

}  // namespace

VerificationReport verify_block(const BlockResult& block, const GammaSequence& gamma, int depth) {
  VerificationReport report;
  const Mapping map = shift_halve_mapping();

  for (std::size_t i = 0; i < block.w.size(); ++i) {
    const DiamEstimate diam = orbit_diameter(map, block.w[i], depth);
    report.rows.push_back(
        diameter_below_row("diam orbit(w_" + std::to_string(i) + ") <= 1/3", diam, kDiamCap));
  }

  for (std::size_t i = 0; i + 1 < block.w.size(); ++i) {
    const DiamEstimate diam =
        double_orbit_diameter(map, block.w[i + 1], map.apply(block.w[i]), depth);
    const Rational slack = gamma.at(block.q + i) + kDiamCap;
    report.rows.push_back(diameter_below_row(
        "diam orbit(w_" + std::to_string(i + 1) + ", T w_" + std::to_string(i) + ") <= gamma_" +
            std::to_string(block.q + i) + " + 1/3",
        diam, slack));
  }

  {
    VerificationRow row;
    row.inequality = "d(w_" + std::to_string(block.n) + ", zero) >= " + kEscapeThreshold.str();
    row.lhs = distance(block.w.back(), SeqPoint::zero());
    row.rhs = kEscapeThreshold;
    row.margin = row.lhs - row.rhs;
    row.verdict = (row.lhs >= row.rhs) ? Verdict::pass : Verdict::fail;
    report.rows.push_back(std::move(row));
  }

  note_indeterminate(report);
  return report;
}

DivergentOrbit build_divergent_orbit(const SeqPoint& x, const GammaSequence& gamma,
                                     std::size_t num_blocks, int depth,
                                     std::size_t scan_limit) {
  if (num_blocks == 0) {
    throw std::invalid_argument("need at least one block");
  }
  DivergentOrbit orbit;
  orbit.z.push_back(x);
  orbit.t.push_back(0);
  for (std::size_t k = 0; k < num_blocks; ++k) {
    const BlockResult block = build_block(orbit.z.back(), orbit.t.back(), gamma, depth,
                                          scan_limit);
    for (std::size_t i = 1; i <= block.n; ++i) {
      orbit.z.push_back(block.w[i]);
      orbit.delta.push_back(gamma.at(block.q + i - 1) + kDiamCap);
    }
    orbit.t.push_back(block.q + block.n);
  }
  return orbit;
}

VerificationReport verify_divergence(const DivergentOrbit& orbit, const Rational& threshold,
                                     int depth) {
  VerificationReport report;
  if (orbit.z.empty() || orbit.t.empty() || orbit.t.front() != 0 ||
      orbit.delta.size() + 1 != orbit.z.size() || orbit.t.back() + 1 != orbit.z.size()) {
    throw std::invalid_argument("orbit arrays are inconsistent");
  }
  const Mapping map = shift_halve_mapping();

  for (std::size_t k = 0; k + 1 < orbit.t.size(); ++k) {
    VerificationRow row;
    row.inequality = "t_" + std::to_string(k + 1) + " > t_" + std::to_string(k);
    row.lhs = Rational(orbit.t[k + 1]);
    row.rhs = Rational(orbit.t[k]);
    row.margin = row.lhs - row.rhs;
    row.verdict = (orbit.t[k + 1] > orbit.t[k]) ? Verdict::pass : Verdict::fail;
    report.rows.push_back(std::move(row));
  }

  for (std::size_t k = 1; k < orbit.t.size(); ++k) {
    VerificationRow row;
    row.inequality =
        "d(z_" + std::to_string(orbit.t[k]) + ", zero) >= " + threshold.str();
    row.lhs = distance(orbit.z[orbit.t[k]], SeqPoint::zero());
    row.rhs = threshold;
    row.margin = row.lhs - row.rhs;
    row.verdict = (row.lhs >= row.rhs) ? Verdict::pass : Verdict::fail;
    report.rows.push_back(std::move(row));
  }

  for (std::size_t i = 0; i < orbit.z.size(); ++i) {
    const DiamEstimate diam = orbit_diameter(map, orbit.z[i], depth);
    report.rows.push_back(
        diameter_below_row("diam orbit(z_" + std::to_string(i) + ") <= 1/3", diam, kDiamCap));
  }

  for (std::size_t i = 0; i + 1 < orbit.z.size(); ++i) {
    const DiamEstimate diam =
        double_orbit_diameter(map, orbit.z[i + 1], map.apply(orbit.z[i]), depth);
    report.rows.push_back(diameter_below_row(
        "diam orbit(z_" + std::to_string(i + 1) + ", T z_" + std::to_string(i) + ") <= delta_" +
            std::to_string(i),
        diam, orbit.delta[i]));
  }

  {
    // The schedule the orbit actually admits never vanishes — that is the
    // point: bounded slack forever, yet the orbit keeps escaping.
    Rational minimum = orbit.delta.empty() ? kDiamCap : orbit.delta.front();
    for (const Rational& d : orbit.delta) {
      minimum = std::min(minimum, d);
    }
    VerificationRow row;
    row.inequality = "inf delta_i >= 1/3";
    row.lhs = minimum;
    row.rhs = kDiamCap;
    row.margin = row.lhs - row.rhs;
    row.verdict = (minimum >= kDiamCap) ? Verdict::pass : Verdict::fail;
    report.rows.push_back(std::move(row));
  }

  note_indeterminate(report);
  return report;
}

}  // namespace borbit
