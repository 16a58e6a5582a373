#include "wco/rational.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "wco/measure_space.hpp"

namespace wco {

Rational parse_decimal(std::string_view text) {
  const std::string original(text);
  auto fail = [&]() -> Rational { throw InputError("not a decimal literal: \"" + original + "\""); };

  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) negative = text[pos++] == '-';

  BigInt digits = 0;
  long long frac_digits = 0;
  bool any_digit = false;
  bool in_fraction = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = digits * 10 + (c - '0');
      any_digit = true;
      if (in_fraction) ++frac_digits;
    } else if (c == '.' && !in_fraction) {
      in_fraction = true;
    } else {
      break;
    }
  }
  if (!any_digit) return fail();

  long long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    const char* first = text.data() + pos;
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (ec != std::errc{} || ptr != last) return fail();
    pos = text.size();
  }
  if (pos != text.size()) return fail();

  const long long scale = exponent - frac_digits;
  Rational value(digits);
  if (scale > 0) {
    value *= Rational(boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(scale)));
  } else if (scale < 0) {
    value /= Rational(boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(-scale)));
  }
  return negative ? Rational(-value) : value;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw InputError("non-finite value has no rational form");
  int exp = 0;
  const double mantissa = std::frexp(x, &exp);
  // mantissa * 2^53 is an exact integer for binary64.
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  Rational q(scaled);
  const int shift = exp - 53;
  if (shift > 0) q *= Rational(BigInt(1) << shift);
  if (shift < 0) q /= Rational(BigInt(1) << -shift);
  return q;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (unsigned i = 1; i <= k; ++i) {
    result *= (n - k + i);
    result /= i;
  }
  return result;
}

}  // namespace wco
