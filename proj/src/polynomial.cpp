#include "oddext/polynomial.hpp"

#include "oddext/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace oddext {

void Polynomial::trim(Exponent& alpha) {
  while (!alpha.empty() && alpha.back() == 0) alpha.pop_back();
}

Polynomial::Polynomial(Rational constant) {
  if (constant != 0) terms_.emplace(Exponent{}, std::move(constant));
}

Polynomial Polynomial::variable(int j) {
  if (j < 1) throw InvalidArgument("Polynomial::variable: index must be >= 1");
  Exponent alpha(static_cast<std::size_t>(j), 0);
  alpha.back() = 1;
  return monomial(std::move(alpha), Rational(1));
}

Polynomial Polynomial::monomial(Exponent alpha, Rational coefficient) {
  Polynomial p;
  p.add_monomial(std::move(alpha), coefficient);
  return p;
}

int Polynomial::total_degree() const {
  int best = 0;
  for (const auto& [alpha, c] : terms_) best = std::max(best, std::accumulate(alpha.begin(), alpha.end(), 0));
  return best;
}

int Polynomial::max_variable() const {
  int best = 0;
  for (const auto& [alpha, c] : terms_) best = std::max(best, static_cast<int>(alpha.size()));
  return best;
}

Rational Polynomial::coefficient(const Exponent& alpha) const {
  Exponent key = alpha;
  trim(key);
  auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_monomial(Exponent alpha, const Rational& coefficient) {
  for (int e : alpha)
    if (e < 0) throw InvalidArgument("Polynomial: negative exponent");
  trim(alpha);
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(std::move(alpha), coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::derivative(int j) const {
  Polynomial out;
  const auto pos = static_cast<std::size_t>(j - 1);
  for (const auto& [alpha, c] : terms_) {
    if (pos >= alpha.size() || alpha[pos] == 0) continue;
    Exponent beta = alpha;
    const int e = beta[pos]--;
    out.add_monomial(std::move(beta), c * e);
  }
  return out;
}

Polynomial Polynomial::pow(int e) const {
  Polynomial result(1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Polynomial Polynomial::substitute(std::span<const Polynomial> replacements) const {
  // Powers are cached per variable; substitution is done monomial by monomial.
  std::vector<std::vector<Polynomial>> powers(replacements.size());
  auto power_of = [&](std::size_t var, int e) -> const Polynomial& {
    auto& cache = powers[var];
    if (cache.empty()) cache.emplace_back(1);
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * replacements[var]);
    return cache[e];
  };
  Polynomial out;
  for (const auto& [alpha, c] : terms_) {
    Polynomial term(c);
    Exponent untouched;
    for (std::size_t var = 0; var < alpha.size(); ++var) {
      if (alpha[var] == 0) continue;
      if (var < replacements.size()) {
        term *= power_of(var, alpha[var]);
      } else {
        untouched.resize(var + 1, 0);
        untouched[var] = alpha[var];
      }
    }
    if (!untouched.empty()) term *= monomial(untouched, Rational(1));
    out += term;
  }
  return out;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  Rational sum(0);
  for (const auto& [alpha, c] : terms_) {
    if (alpha.size() > point.size()) throw DimensionMismatch("Polynomial::evaluate: point too short");
    Rational term = c;
    for (std::size_t var = 0; var < alpha.size(); ++var)
      for (int e = 0; e < alpha[var]; ++e) term *= point[var];
    sum += term;
  }
  return sum;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [alpha, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    for (std::size_t var = 0; var < alpha.size(); ++var) {
      if (alpha[var] == 0) continue;
      os << "*x" << var + 1;
      if (alpha[var] > 1) os << '^' << alpha[var];
    }
  }
  return os.str();
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [alpha, c] : o.terms_) add_monomial(alpha, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [alpha, c] : o.terms_) add_monomial(alpha, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [alpha, ca] : a.terms_) {
    for (const auto& [beta, cb] : b.terms_) {
      Polynomial::Exponent gamma(std::max(alpha.size(), beta.size()), 0);
      for (std::size_t v = 0; v < alpha.size(); ++v) gamma[v] += alpha[v];
      for (std::size_t v = 0; v < beta.size(); ++v) gamma[v] += beta[v];
      out.add_monomial(std::move(gamma), ca * cb);
    }
  }
  return out;
}

Polynomial operator*(const Rational& s, const Polynomial& p) {
  Polynomial out;
  if (s == 0) return out;
  for (const auto& [alpha, c] : p.terms_) out.terms_.emplace(alpha, s * c);
  return out;
}

Polynomial operator-(const Polynomial& p) {
  Polynomial out;
  for (const auto& [alpha, c] : p.terms_) out.terms_.emplace(alpha, -c);
  return out;
}

} // namespace oddext
