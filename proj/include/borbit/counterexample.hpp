#pragma once

#include "borbit/orbit.hpp"

#include <functional>
#include <string>
#include <vector>

namespace borbit {

// The distance below which a point counts as "near zero" in the divergence
// verdicts: block endpoints must stay at or above it.
inline const Rational kEscapeThreshold(1, 20000);

// Cap on the per-block orbit diameters: every block point's orbit under
// shift_halve must stay within 1/3.
inline const Rational kDiamCap(1, 3);

// Uniform cap on the step slack gamma_i. Keeping every gamma_i <= 1/64
// forces the first window sum past 1/32 to start from below it, which is
// what pins the escape distance away from zero.
inline const Rational kGammaCap(1, 64);

// How many candidate block lengths to scan before giving up on a gamma
// whose window sums grow too slowly.
inline constexpr std::size_t kDefaultScanLimit = 100000;

// A positive step-slack sequence gamma_0, gamma_1, ... The block builder
// requires the uniform cap (declared, spot-checked on access).
class GammaSequence {
 public:
  GammaSequence(std::string description, std::function<Rational(std::size_t)> gamma,
                bool uniform_cap);

  static GammaSequence constant(const Rational& value);

  // Validates positivity and (when declared) the cap. Throws on violation.
  Rational at(std::size_t index) const;
  bool uniform_cap() const { return uniform_cap_; }
  const std::string& description() const { return description_; }

 private:
  std::string description_;
  std::function<Rational(std::size_t)> gamma_;
  bool uniform_cap_;
};

// One block of the divergence construction, started at global step q from a
// point w^(0) whose orbit diameter certifies <= 1/3:
//
//   m — minimal integer > 4 with sum_{i >= m} w^(0)_i <= 1/32;
//   n — minimal integer > m with sum_{j=q+m..q+n} gamma_j >= 1/32;
//   w — points w^(0..n): iterates of shift_halve up to m, then copies with
//       an extra pile of half the accumulated gamma mass on coordinate
//       n+1-i, so that each step stays within slack gamma_{q+i} + 1/3 while
//       d(w^(n), zero) ends at or above the escape threshold.
struct BlockResult {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t q = 0;
  std::vector<SeqPoint> w;
  Rational window_sum;  // sum_{j=q+m}^{q+n} gamma_j, the first sum >= 1/32
  Rational prefix_sum;  // sum_{j=q+m}^{q+n-1} gamma_j, always in [1/64, 1/32)
};

BlockResult build_block(const SeqPoint& w0, std::size_t q, const GammaSequence& gamma,
                        int depth = kDefaultDepth, std::size_t scan_limit = kDefaultScanLimit);

// One verified inequality with its exact or certified sides and the margin
// rhs - lhs (for <= rows) or lhs - rhs (for >= rows) — positive slack means
// the inequality holds with room.
struct VerificationRow {
  std::string inequality;
  Rational lhs;
  Rational rhs;
  Rational margin;
  Verdict verdict = Verdict::indeterminate;
};

struct VerificationReport {
  std::vector<VerificationRow> rows;
  std::string note;  // set when indeterminate rows suggest a deeper scan

  std::size_t count(Verdict v) const;
  bool all_pass() const;
  Verdict aggregate() const;
};

// Re-derives the block guarantees from the stored points alone: per-point
// orbit diameters within 1/3, per-step joint orbit diameters within
// gamma_{q+i} + 1/3, and the endpoint's distance from zero at or above the
// escape threshold.
VerificationReport verify_block(const BlockResult& block, const GammaSequence& gamma,
                                int depth = kDefaultDepth);

// Blocks chained end to end: z^0 = x, each block starts where the previous
// one escaped, and t_k marks the escape steps. delta_i = gamma_i + 1/3 is
// the per-step slack actually available to an inexact orbit following z.
struct DivergentOrbit {
  std::vector<SeqPoint> z;
  std::vector<std::size_t> t;   // t_0 = 0 < t_1 < ... escape step indices
  std::vector<Rational> delta;  // one per step, size z.size() - 1
};

DivergentOrbit build_divergent_orbit(const SeqPoint& x, const GammaSequence& gamma,
                                     std::size_t num_blocks, int depth = kDefaultDepth,
                                     std::size_t scan_limit = kDefaultScanLimit);

// Checks a stored orbit without trusting its construction: escape steps
// strictly increase, every escape point sits at or above `threshold`, every
// point's orbit diameter certifies within 1/3, every step's joint orbit
// diameter certifies within its recorded delta_i, and the recorded schedule
// never falls below 1/3 (it does not vanish, yet the orbit keeps escaping).
VerificationReport verify_divergence(const DivergentOrbit& orbit, const Rational& threshold,
                                     int depth = kDefaultDepth);

}  // namespace borbit
