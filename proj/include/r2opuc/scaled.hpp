#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

namespace r2opuc {

/// value = mantissa * 2^exp2 with mantissa in [1/2, 1) in magnitude (or zero,
/// with exp2 = 0).  Keeps the (x^2 + 1)^n growth of the recurrences in range.
template <typename T>
struct Scaled {
  T mantissa{};
  int exp2 = 0;

  static Scaled from(T v) { return Scaled{v, 0}.normalized(); }

  T value() const { return scale(mantissa, exp2); }

  Scaled normalized() const {
    const double mag = magnitude(mantissa);
    if (mag == 0.0 || !std::isfinite(mag)) return Scaled{mantissa, mag == 0.0 ? 0 : exp2};
    int e = 0;
    std::frexp(mag, &e);
    return Scaled{scale(mantissa, -e), exp2 + e};
  }

  static double magnitude(double v) { return std::abs(v); }
  static double magnitude(const std::complex<double>& v) {
    return std::max(std::abs(v.real()), std::abs(v.imag()));
  }
  static double scale(double v, int e) { return std::ldexp(v, e); }
  static std::complex<double> scale(const std::complex<double>& v, int e) {
    return {std::ldexp(v.real(), e), std::ldexp(v.imag(), e)};
  }
};

using PolyValue = Scaled<double>;
using ComplexPolyValue = Scaled<std::complex<double>>;

template <typename T, typename U>
auto operator*(const Scaled<T>& a, const Scaled<U>& b) {
  using R = decltype(a.mantissa * b.mantissa);
  return Scaled<R>{a.mantissa * b.mantissa, a.exp2 + b.exp2}.normalized();
}

template <typename T, typename U>
auto operator/(const Scaled<T>& a, const Scaled<U>& b) {
  using R = decltype(a.mantissa / b.mantissa);
  return Scaled<R>{a.mantissa / b.mantissa, a.exp2 - b.exp2}.normalized();
}

template <typename T>
Scaled<T> operator+(const Scaled<T>& a, const Scaled<T>& b) {
  if (a.mantissa == T{}) return b;
  if (b.mantissa == T{}) return a;
  const int e = std::max(a.exp2, b.exp2);
  return Scaled<T>{Scaled<T>::scale(a.mantissa, a.exp2 - e) + Scaled<T>::scale(b.mantissa, b.exp2 - e), e}
      .normalized();
}

template <typename T>
Scaled<T> operator-(const Scaled<T>& a, const Scaled<T>& b) {
  return a + Scaled<T>{-b.mantissa, b.exp2};
}

/// Exact sign of a scaled real value.
inline int sign(const PolyValue& v) { return (v.mantissa > 0) - (v.mantissa < 0); }

}  // namespace r2opuc
