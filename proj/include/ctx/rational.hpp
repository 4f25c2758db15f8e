#pragma once

#include <gmpxx.h>

#include <string>

#include "ctx/error.hpp"

namespace ctx {

// Exact arithmetic throughout; no floating point in the core.
using Rational = mpq_class;

// Renders "p/q", or just "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  Rational c(r);
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

// Parses "p/q" or "p" with arbitrary-precision parts.
inline Rational parse_rational(const std::string& text) {
  try {
    Rational r(text);
    if (r.get_den() == 0) fail(ErrorCode::ParseError, "zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    fail(ErrorCode::ParseError, "invalid rational '" + text + "'");
  }
}

}  // namespace ctx
