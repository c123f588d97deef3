// SPDX-License-Identifier: Apache-2.0
#pragma once

// Arithmetic backends for the exact recursions.
//
// `native` is IEEE double. `extended` is IEEE binary128 (113-bit mantissa,
// 15-bit exponent) through Boost.Multiprecision's float128 wrapper, which is
// what lets the volume recursions survive the cancellation that appears once
// the truncation size reaches a few hundred samples.

#include <cmath>
#include <limits>
#include <string_view>

#include <boost/multiprecision/float128.hpp>

namespace ssct {

enum class Precision { native, extended, automatic };

std::string_view to_string(Precision p);
Precision precision_from_string(std::string_view name);

using Extended = boost::multiprecision::float128;

template <class Real>
struct RealTraits;

template <>
struct RealTraits<double> {
  static constexpr Precision precision = Precision::native;
  static double unit_roundoff() { return std::numeric_limits<double>::epsilon() / 2; }
  static double log_max() { return 709.782712893384; }
  static double log_min_normal() { return -708.396418532264; }
};

template <>
struct RealTraits<Extended> {
  static constexpr Precision precision = Precision::extended;
  static Extended unit_roundoff() { return std::numeric_limits<Extended>::epsilon() / 2; }
  static Extended log_max() { return Extended(11356.5234062941439494); }
  static Extended log_min_normal() { return Extended(-11355.1371119530215594); }
};

template <class Real>
inline double to_double(const Real& x) {
  return static_cast<double>(x);
}

/// A value together with the same computation carried out on absolute
/// values. The ratio magnitude/|value| is the condition number of the
/// cancellation that produced `value`; rounding error is bounded by
/// (ops * unit_roundoff) * magnitude to first order.
template <class Real>
struct Tracked {
  Real value{0};
  Real magnitude{0};

  Tracked() = default;
  Tracked(const Real& v, const Real& m) : value(v), magnitude(m) {}

  static Tracked exact(const Real& v) {
    using std::abs;
    return Tracked(v, abs(v));
  }

  Tracked& operator+=(const Tracked& o) {
    value += o.value;
    magnitude += o.magnitude;
    return *this;
  }
  Tracked& operator-=(const Tracked& o) {
    value -= o.value;
    magnitude += o.magnitude;
    return *this;
  }
  Tracked& operator*=(const Real& s) {
    using std::abs;
    value *= s;
    magnitude *= abs(s);
    return *this;
  }

  friend Tracked operator+(Tracked a, const Tracked& b) { return a += b; }
  friend Tracked operator-(Tracked a, const Tracked& b) { return a -= b; }
  friend Tracked operator-(const Tracked& a) { return Tracked(-a.value, a.magnitude); }
  friend Tracked operator*(Tracked a, const Real& s) { return a *= s; }
  friend Tracked operator*(const Real& s, Tracked a) { return a *= s; }
  friend Tracked operator*(const Tracked& a, const Tracked& b) {
    return Tracked(a.value * b.value, a.magnitude * b.magnitude);
  }
};

}  // namespace ssct
