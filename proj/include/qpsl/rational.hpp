#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "qpsl/error.hpp"

namespace qpsl {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string to_string(const Int& n) { return n.str(); }

// Rationals print as "p" or "p/q", q > 0.
inline std::string to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline Rat parse_rational(const std::string& text) {
  try {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rat(Int(text));
    Int num(text.substr(0, slash));
    Int den(text.substr(slash + 1));
    require(den != 0, errc::parse_error, "rational with zero denominator: " + text);
    return Rat(num, den);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(errc::parse_error, "malformed rational: " + text);
  }
}

} // namespace qpsl
