#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace ultrapower {

// Exact arbitrary precision scalars. No floating point is used anywhere in
// the library; every order comparison is exact.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Decimal integer, optional leading '-'. Throws ParseError on anything else.
Int parse_int(const std::string& text);

// "n" or "n/d" with d > 0 after sign normalization; reduced on construction.
Rat parse_rat(const std::string& text);

std::string format_int(const Int& value);

// Lowest terms; "n" when the denominator is 1, "n/d" otherwise.
std::string format_rat(const Rat& value);

}  // namespace ultrapower
