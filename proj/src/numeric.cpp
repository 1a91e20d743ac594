#include "ultrapower/numeric.hpp"

#include <cctype>

#include "ultrapower/error.hpp"

namespace ultrapower {

namespace {

bool is_decimal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Int parse_int(const std::string& text) {
  if (!is_decimal(text)) {
    throw ParseError("not a decimal integer: '" + text + "'");
  }
  return Int(text);
}

Rat parse_rat(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    return Rat(parse_int(text));
  }
  Int num = parse_int(text.substr(0, slash));
  Int den = parse_int(text.substr(slash + 1));
  if (den == 0) {
    throw ParseError("zero denominator in '" + text + "'");
  }
  return Rat(num, den);
}

std::string format_int(const Int& value) { return value.str(); }

std::string format_rat(const Rat& value) {
  const Int num = boost::multiprecision::numerator(value);
  const Int den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace ultrapower
