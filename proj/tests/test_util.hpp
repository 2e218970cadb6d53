#pragma once

#include <doctest.h>

#include "refcurve/laurent.hpp"

namespace doctest {
template <>
struct StringMaker<refcurve::LaurentY> {
  static String convert(const refcurve::LaurentY& v) { return v.to_text().c_str(); }
};
template <>
struct StringMaker<refcurve::Rational> {
  static String convert(const refcurve::Rational& v) { return v.get_str().c_str(); }
};
}  // namespace doctest
