#pragma once

#include "borbit/metric.hpp"
#include "borbit/orbit.hpp"

#include <cstdint>
#include <random>

namespace borbit {

// Deterministic sample source: one seeded engine feeds every draw, so a
// fixed seed reproduces the full sample stream byte for byte.
class SampleGenerator {
 public:
  explicit SampleGenerator(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t next_below(std::uint64_t bound);

  // A point with at most max_support coordinates, each a small dyadic
  // rational scaled so the sum bound holds for any support.
  SeqPoint point(std::size_t max_support = 8);

  SamplePair pair(std::size_t max_support = 8);
  SampleTriple triple(std::size_t max_support = 8);

  std::vector<SeqPoint> points(std::size_t count, std::size_t max_support = 8);
  std::vector<SamplePair> pairs(std::size_t count, std::size_t max_support = 8);
  std::vector<SampleTriple> triples(std::size_t count, std::size_t max_support = 8);

 private:
  std::mt19937_64 rng_;
};

}  // namespace borbit
