#include "oddext/rational.hpp"

#include "oddext/errors.hpp"

#include <cctype>

namespace oddext {

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t start = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) start = 1;
  if (start == s.size()) return false;
  for (std::size_t p = start; p < s.size(); ++p)
    if (!std::isdigit(static_cast<unsigned char>(s[p]))) return false;
  return true;
}

} // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  if (!is_integer_literal(num, true)) throw ParseError("malformed rational '" + std::string(text) + "'");
  using boost::multiprecision::mpz_int;
  mpz_int numerator(std::string(num[0] == '+' ? num.substr(1) : num));
  if (slash == std::string_view::npos) return Rational(numerator);
  const auto den = text.substr(slash + 1);
  if (!is_integer_literal(den, false)) throw ParseError("malformed rational denominator in '" + std::string(text) + "'");
  mpz_int denominator{std::string(den)};
  if (denominator == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(numerator, denominator);
}

std::string format_rational(const Rational& value) {
  return boost::multiprecision::numerator(value).str() + "/" + boost::multiprecision::denominator(value).str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  const Rational d = o.norm2();
  if (d == 0) throw InvalidArgument("GaussRational: division by zero");
  *this *= o.conj();
  re /= d;
  im /= d;
  return *this;
}

} // namespace oddext
