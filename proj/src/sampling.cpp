#include "borbit/sampling.hpp"

#include <stdexcept>

namespace borbit {

std::uint64_t SampleGenerator::next_below(std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("bound must be positive");
  }
  // The slight modulo bias is irrelevant here; what matters is that the
  // draw is fully determined by the engine state (hence by the seed).
  return rng_() % bound;
}

SeqPoint SampleGenerator::point(std::size_t max_support) {
  if (max_support == 0) {
    return SeqPoint::zero();
  }
  const std::size_t support = next_below(max_support + 1);
  // Numerators below 64 over 64*max_support keep any sum strictly under 1.
  const Rational unit(1, 64 * static_cast<unsigned long>(max_support));
  std::vector<Rational> entries;
  entries.reserve(support);
  for (std::size_t i = 0; i < support; ++i) {
    entries.push_back(Rational(next_below(64)) * unit);
  }
  return SeqPoint(std::move(entries));
}

SamplePair SampleGenerator::pair(std::size_t max_support) {
  SamplePair result;
  result.x = point(max_support);
  result.y = point(max_support);
  return result;
}

SampleTriple SampleGenerator::triple(std::size_t max_support) {
  SampleTriple result;
  result.x = point(max_support);
  result.z = point(max_support);
  result.y = point(max_support);
  return result;
}

std::vector<SeqPoint> SampleGenerator::points(std::size_t count, std::size_t max_support) {
  std::vector<SeqPoint> result;
  result.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    result.push_back(point(max_support));
  }
  return result;
}

std::vector<SamplePair> SampleGenerator::pairs(std::size_t count, std::size_t max_support) {
  std::vector<SamplePair> result;
  result.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    result.push_back(pair(max_support));
  }
  return result;
}

std::vector<SampleTriple> SampleGenerator::triples(std::size_t count, std::size_t max_support) {
  std::vector<SampleTriple> result;
  result.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    result.push_back(triple(max_support));
  }
  return result;
}

}  // namespace borbit
