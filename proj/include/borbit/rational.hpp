#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace borbit {

// Every quantity the library reasons about is an exact rational; doubles
// appear only in report columns meant for plotting.
using Rational = boost::multiprecision::cpp_rational;

// Parses "p/q" or a bare integer ("1/2", "-3", "0"). Throws
// std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

// Canonical "p/q" form; bare integer when the denominator is 1.
std::string to_string(const Rational& value);

// Nearest double, for the *_float report columns only.
double to_double(const Rational& value);

// base^exp for exp >= 0, exactly.
Rational rational_pow(const Rational& base, unsigned exp);

}  // namespace borbit
