#pragma once

#include "rational.hpp"
#include "scalar.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace oddext {

/// Multivariate polynomial in x_1, x_2, ... with exact rational coefficients.
///
/// Exponent vectors have trailing zeros trimmed, so the constant monomial is
/// the empty vector and a polynomial does not need to know its ambient dimension.
class Polynomial {
public:
  using Exponent = std::vector<int>;
  using Terms = std::map<Exponent, Rational>;

  Polynomial() = default;
  Polynomial(Rational constant);
  Polynomial(long long constant) : Polynomial(Rational(constant)) {}

  /// x_j, 1-based.
  static Polynomial variable(int j);
  static Polynomial monomial(Exponent alpha, Rational coefficient);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;
  /// Largest variable index that appears (0 for constants).
  int max_variable() const;

  Rational coefficient(const Exponent& alpha) const;
  void add_monomial(Exponent alpha, const Rational& coefficient);

  /// Exact partial derivative with respect to x_j (1-based).
  Polynomial derivative(int j) const;

  /// p(L_1(x), ..., L_k(x)): substitutes the j-th polynomial for x_j.
  /// Variables beyond the substitution list are left in place.
  Polynomial substitute(std::span<const Polynomial> replacements) const;

  Rational evaluate(std::span<const Rational> point) const;

  std::string to_string() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& s, const Polynomial& p);
  friend Polynomial operator-(const Polynomial& p);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial pow(int e) const;

private:
  static void trim(Exponent& alpha);
  Terms terms_;
};

template <>
struct ScalarTraits<Polynomial> {
  static constexpr bool exact = true;
  static Polynomial zero() { return {}; }
  static Polynomial one() { return Polynomial(1); }
  static Polynomial from_int(long long v) { return Polynomial(v); }
  static bool is_zero(const Polynomial& p) { return p.is_zero(); }
  static Polynomial conj(const Polynomial& p) { return p; }
};

} // namespace oddext
