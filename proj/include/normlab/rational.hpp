#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <sstream>
#include <string>

#include "normlab/errors.hpp"

namespace normlab {

using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline std::string to_string(const Rational& r) {
  std::ostringstream os;
  if (r.denominator() == 1) {
    os << r.numerator();
  } else {
    os << r.numerator() << "/" << r.denominator();
  }
  return os.str();
}

// Parses "p/q" or a bare integer "p".
inline Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(std::stoll(text), 1);
    }
    long long num = std::stoll(text.substr(0, slash));
    long long den = std::stoll(text.substr(slash + 1));
    if (den == 0) throw ParseError("rational with zero denominator: " + text);
    return Rational(num, den);
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed rational: " + text);
  } catch (const std::out_of_range&) {
    throw ParseError("rational out of range: " + text);
  }
}

// Phase reduced to [0, 1) turns; used for exact character arithmetic.
inline Rational mod1(Rational q) {
  long long n = q.numerator();
  long long d = q.denominator();
  long long m = n % d;
  if (m < 0) m += d;
  return Rational(m, d);
}

}  // namespace normlab
