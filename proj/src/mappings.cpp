#include "borbit/mappings.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace borbit {

SeqPoint shift_halve(const SeqPoint& x) {
  const auto& entries = x.entries();
  if (entries.size() <= 1) {
    return SeqPoint::zero();
  }
  std::vector<Rational> shifted(entries.begin() + 1, entries.end());
  for (Rational& e : shifted) {
    e /= 2;
  }
  return SeqPoint(std::move(shifted));
}

Mapping::Mapping(std::string name, std::function<SeqPoint(const SeqPoint&)> apply,
                 std::optional<TailContraction> tail)
    : name_(std::move(name)), apply_(std::move(apply)), tail_(std::move(tail)) {
  if (!apply_) {
    throw std::invalid_argument("mapping '" + name_ + "' has no apply function");
  }
  if (tail_ && (tail_->factor < 0 || tail_->factor >= 1)) {
    throw std::invalid_argument("tail contraction factor must lie in [0, 1), got " +
                                tail_->factor.str());
  }
}

Mapping shift_halve_mapping() {
  return Mapping("shift_halve", [](const SeqPoint& x) { return shift_halve(x); },
                 TailContraction{Rational(1, 4), SeqPoint::zero()});
}

Mapping identity_mapping() {
  return Mapping("identity", [](const SeqPoint& x) { return x; });
}

Mapping scale_mapping(const Rational& ratio) {
  if (ratio < 0 || ratio >= 1) {
    throw std::invalid_argument("scale ratio must lie in [0, 1), got " + ratio.str());
  }
  auto apply = [ratio](const SeqPoint& x) {
    std::vector<Rational> scaled = x.entries();
    for (Rational& e : scaled) {
      e *= ratio;
    }
    return SeqPoint(std::move(scaled));
  };
  return Mapping("scale(" + ratio.str() + ")", std::move(apply),
                 TailContraction{ratio * ratio, SeqPoint::zero()});
}

ComparisonFunction::ComparisonFunction(std::string name,
                                       std::function<Rational(const Rational&)> eval)
    : name_(std::move(name)), eval_(std::move(eval)) {
  if (!eval_) {
    throw std::invalid_argument("comparison function '" + name_ + "' has no evaluator");
  }
}

ComparisonFunction psi_one_third() {
  return psi_scale(Rational(1, 3));
}

ComparisonFunction psi_scale(const Rational& ratio) {
  if (ratio < 0 || ratio >= 1) {
    throw std::invalid_argument("comparison ratio must lie in [0, 1), got " + ratio.str());
  }
  return ComparisonFunction("psi(t)=" + ratio.str() + "*t",
                            [ratio](const Rational& t) { return ratio * t; });
}

}  // namespace borbit
