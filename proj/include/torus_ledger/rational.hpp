#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "torus_ledger/error.hpp"

namespace torus_ledger {

// Expression templates are off so that `auto` always holds a value.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::rational_adaptor<
                                      boost::multiprecision::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

/// 3^{-e} as an exact rational.
inline Rational inverse_power_of_three(unsigned e) {
  BigInt den = boost::multiprecision::pow(BigInt(3), e);
  return Rational(BigInt(1), den);
}

/// Renders "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.str(); }

/// Parses "p/q" or "p" (optional leading '-'). Decimal points, exponents and
/// whitespace are rejected: only exact rationals are accepted.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { throw Error(ErrorKind::InvalidInput, "malformed rational \"" + std::string(text) + "\""); };
  auto is_integer = [](std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && s.front() == '-') s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  if (!is_integer(num, true)) fail();
  if (slash == std::string_view::npos) return Rational(BigInt(std::string(num)));
  std::string_view den = text.substr(slash + 1);
  if (!is_integer(den, false)) fail();
  BigInt d(std::string{den});
  if (d == 0) fail();
  return Rational(BigInt(std::string(num)), d);
}

inline int sign(const Rational& r) { return r < 0 ? -1 : (r > 0 ? 1 : 0); }

}  // namespace torus_ledger
