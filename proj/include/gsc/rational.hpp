#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

#include "gsc/error.hpp"

namespace gsc {

using Rational = boost::rational<std::int64_t>;

// "p/q" or "p".
inline Rational parse_rational(const std::string& text) {
  try {
    auto slash = text.find('/');
    std::size_t used = 0;
    if (slash == std::string::npos) {
      auto v = std::stoll(text, &used);
      if (used != text.size()) throw InputError("trailing characters");
      return Rational(v);
    }
    auto num_text = text.substr(0, slash), den_text = text.substr(slash + 1);
    auto p = std::stoll(num_text, &used);
    if (used != num_text.size()) throw InputError("trailing characters");
    auto q = std::stoll(den_text, &used);
    if (used != den_text.size()) throw InputError("trailing characters");
    if (q == 0) throw InputError("zero denominator");
    return Rational(p, q);
  } catch (const std::exception& e) {
    throw InputError("malformed rational '" + text + "': " + e.what());
  }
}

inline std::string format_rational(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Least integer L with L >= r * n.
inline std::size_t ceil_times(const Rational& r, std::size_t n) {
  auto num = r.numerator() * static_cast<std::int64_t>(n);
  auto den = r.denominator();
  return static_cast<std::size_t>((num + den - 1) / den);
}

}  // namespace gsc
