#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace angles {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Exact value of a decimal literal such as "2", "0.25", "-1.5e3" or "3/4".
/// Throws InputError on anything else.
Rational parse_rational(const std::string& text);

/// Rational -> nearest double.
double to_double(const Rational& r);

std::string to_string(const Rational& r);

}  // namespace angles
