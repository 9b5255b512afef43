#pragma once

#include "borbit/rational.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace borbit {

// A point of the sequence space: finitely many nonnegative rational
// coordinates summing to at most 1. Trailing zeros are implicit — the stored
// form never has them — so structural equality is equality of sequences.
class SeqPoint {
 public:
  // The zero sequence.
  SeqPoint() = default;

  // Validates nonnegativity and the sum bound, then strips trailing zeros.
  // Throws std::invalid_argument when the entries are not a valid point.
  explicit SeqPoint(std::vector<Rational> entries);

  static SeqPoint zero() { return SeqPoint(); }

  // Comma-separated coordinates, e.g. "1/2,1/4,0,1/8"; "" is the zero
  // sequence. Interior zeros are kept, trailing ones dropped.
  static SeqPoint from_text(std::string_view text);
  std::string to_text() const;

  const std::vector<Rational>& entries() const { return entries_; }

  // Number of stored coordinates (index of the last nonzero one).
  std::size_t support_length() const { return entries_.size(); }

  // 1-based coordinate access; 0 beyond the support.
  Rational coordinate(std::size_t index) const;

  Rational sum() const;

  bool is_zero() const { return entries_.empty(); }

  friend bool operator==(const SeqPoint& a, const SeqPoint& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<Rational> entries_;
};

}  // namespace borbit
