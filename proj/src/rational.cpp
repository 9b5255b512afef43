#include "borbit/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace borbit {

namespace {

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  return text;
}

bool is_integer_literal(std::string_view text) {
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    text.remove_prefix(1);
  }
  if (text.empty()) {
    return false;
  }
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  return true;
}

boost::multiprecision::cpp_int parse_integer(std::string_view text, std::string_view whole) {
  if (!is_integer_literal(text)) {
    throw std::invalid_argument("not a rational: '" + std::string(whole) + "'");
  }
  return boost::multiprecision::cpp_int(std::string(text));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  text = trim(text);
  if (text.empty()) {
    throw std::invalid_argument("not a rational: ''");
  }
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text, whole));
  }
  const auto numerator = parse_integer(trim(text.substr(0, slash)), whole);
  const auto denominator = parse_integer(trim(text.substr(slash + 1)), whole);
  if (denominator == 0) {
    throw std::invalid_argument("zero denominator: '" + std::string(whole) + "'");
  }
  return Rational(numerator, denominator);
}

std::string to_string(const Rational& value) {
  return value.str();
}

double to_double(const Rational& value) {
  return value.convert_to<double>();
}

Rational rational_pow(const Rational& base, unsigned exp) {
  Rational result(1);
  Rational factor = base;
  while (exp != 0) {
    if (exp & 1u) {
      result *= factor;
    }
    exp >>= 1u;
    if (exp != 0) {
      factor *= factor;
    }
  }
  return result;
}

}  // namespace borbit
