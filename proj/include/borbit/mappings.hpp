#pragma once

#include "borbit/seq_point.hpp"

#include <functional>
#include <optional>
#include <string>

namespace borbit {

// The shift-halve operator: Tx = (x_2/2, x_3/2, ...). Drops the head
// coordinate and halves the rest, so d(Tx, Ty) <= d(x, y)/4 exactly, and a
// point of support length L reaches the zero sequence after L steps.
SeqPoint shift_halve(const SeqPoint& x);

// A declared geometric decay toward a base point:
// d(Tx, base) <= factor * d(x, base) for every x. The orbit engine uses it
// to turn truncated orbit maxima into certified bounds on full orbits.
struct TailContraction {
  Rational factor;  // in [0, 1)
  SeqPoint base;
};

class Mapping {
 public:
  Mapping(std::string name, std::function<SeqPoint(const SeqPoint&)> apply,
          std::optional<TailContraction> tail = std::nullopt);

  const std::string& name() const { return name_; }
  SeqPoint apply(const SeqPoint& x) const { return apply_(x); }
  const std::optional<TailContraction>& tail_contraction() const { return tail_; }

 private:
  std::string name_;
  std::function<SeqPoint(const SeqPoint&)> apply_;
  std::optional<TailContraction> tail_;
};

// shift_halve with its exact decay certificate (factor 1/4 toward zero).
Mapping shift_halve_mapping();

// x -> x, no decay certificate. Useful as a mapping that is *not* a weak
// quasi-contraction.
Mapping identity_mapping();

// x -> ratio*x coordinatewise for 0 <= ratio < 1; decays with factor
// ratio^2 toward zero (the distance is quadratic in coordinates).
Mapping scale_mapping(const Rational& ratio);

// A comparison gauge: increasing, psi(0) = 0, psi(t) < t for t > 0. The
// contraction checks compare orbit diameters through it.
class ComparisonFunction {
 public:
  ComparisonFunction(std::string name, std::function<Rational(const Rational&)> eval);

  const std::string& name() const { return name_; }
  Rational eval(const Rational& t) const { return eval_(t); }

 private:
  std::string name_;
  std::function<Rational(const Rational&)> eval_;
};

// psi(t) = t/3, the gauge used throughout the concrete experiments.
ComparisonFunction psi_one_third();

// psi(t) = ratio*t for 0 <= ratio < 1.
ComparisonFunction psi_scale(const Rational& ratio);

}  // namespace borbit
