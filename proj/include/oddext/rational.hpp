#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <complex>
#include <string>
#include <string_view>

namespace oddext {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Parses "p/q" (q > 0) or a bare integer "p". Throws ParseError otherwise.
Rational parse_rational(std::string_view text);

/// Always emits "p/q" with q > 0, including integers ("3/1", "0/1").
std::string format_rational(const Rational& value);

double to_double(const Rational& value);

/// Exact complex number a + b i with rational parts.
struct GaussRational {
  Rational re;
  Rational im;

  GaussRational() = default;
  GaussRational(Rational real, Rational imag = Rational(0)) : re(std::move(real)), im(std::move(imag)) {}
  GaussRational(long long real) : re(real), im(0) {}

  static GaussRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re == 0 && im == 0; }
  GaussRational conj() const { return {re, -im}; }
  /// |z|^2, exact.
  Rational norm2() const { return re * re + im * im; }
  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

  GaussRational& operator+=(const GaussRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) = default;
};

} // namespace oddext
