#include "borbit/seq_point.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace borbit {

SeqPoint::SeqPoint(std::vector<Rational> entries) : entries_(std::move(entries)) {
  Rational total(0);
  for (const Rational& e : entries_) {
    if (e < 0) {
      throw std::invalid_argument("sequence coordinate is negative: " + e.str());
    }
    total += e;
  }
  if (total > 1) {
    throw std::invalid_argument("sequence coordinates sum to " + total.str() + " > 1");
  }
  while (!entries_.empty() && entries_.back() == 0) {
    entries_.pop_back();
  }
}

SeqPoint SeqPoint::from_text(std::string_view text) {
  std::vector<Rational> entries;
  // Whitespace-only text also means the zero sequence.
  std::size_t pos = 0;
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
    ++pos;
  }
  if (pos == text.size()) {
    return SeqPoint();
  }
  std::string buffer(text);
  std::istringstream in(buffer);
  std::string field;
  while (std::getline(in, field, ',')) {
    entries.push_back(parse_rational(field));
  }
  if (!buffer.empty() && buffer.back() == ',') {
    throw std::invalid_argument("trailing comma in point text: '" + buffer + "'");
  }
  return SeqPoint(std::move(entries));
}

std::string SeqPoint::to_text() const {
  std::string out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i != 0) {
      out += ',';
    }
    out += entries_[i].str();
  }
  return out;
}

Rational SeqPoint::coordinate(std::size_t index) const {
  if (index == 0) {
    throw std::invalid_argument("coordinates are 1-based");
  }
  if (index > entries_.size()) {
    return Rational(0);
  }
  return entries_[index - 1];
}

Rational SeqPoint::sum() const {
  Rational total(0);
  for (const Rational& e : entries_) {
    total += e;
  }
  return total;
}

}  // namespace borbit
