#pragma once

#include "rational.hpp"

#include <complex>

namespace oddext {

/// Per-scalar-type hooks used by the generic form containers and operators.
///
/// Every specialization provides `exact`, `zero()`, `one()`, `from_int()`,
/// `is_zero()` and `conj()`. Field scalars used by the Fourier backend also
/// provide `imag_unit()` and `abs2()`.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_int(long long v) { return Rational(v); }
  static bool is_zero(const Rational& x) { return x == 0; }
  static Rational conj(const Rational& x) { return x; }
  static double abs2(const Rational& x) { return to_double(x * x); }
};

template <>
struct ScalarTraits<GaussRational> {
  static constexpr bool exact = true;
  static GaussRational zero() { return {}; }
  static GaussRational one() { return GaussRational(1); }
  static GaussRational from_int(long long v) { return GaussRational(v); }
  static GaussRational imag_unit() { return GaussRational::i(); }
  static bool is_zero(const GaussRational& x) { return x.is_zero(); }
  static GaussRational conj(const GaussRational& x) { return x.conj(); }
  static double abs2(const GaussRational& x) { return to_double(x.norm2()); }
};

template <>
struct ScalarTraits<std::complex<double>> {
  using C = std::complex<double>;
  static constexpr bool exact = false;
  static C zero() { return {}; }
  static C one() { return {1.0, 0.0}; }
  static C from_int(long long v) { return {static_cast<double>(v), 0.0}; }
  static C imag_unit() { return {0.0, 1.0}; }
  static bool is_zero(const C& x) { return x.real() == 0.0 && x.imag() == 0.0; }
  static C conj(const C& x) { return std::conj(x); }
  static double abs2(const C& x) { return std::norm(x); }
};

template <class S>
concept FieldScalar = requires(const S& a) {
  { ScalarTraits<S>::imag_unit() };
  { ScalarTraits<S>::abs2(a) };
  { a / a };
};

} // namespace oddext
