#include "oddext/random_forms.hpp"

#include <array>
#include <numeric>

namespace oddext {

PolyForm random_poly_form(int n, int q, const RandomPolyOptions& options, Rng& rng) {
  PolyForm out(n, q);
  if (q < 0 || q > n) return out;
  const auto slots = IndexSet::all_of_degree(n, q);

  auto random_polynomial = [&] {
    Polynomial p;
    for (int t = 0; t < options.monomials_per_component; ++t) {
      Polynomial::Exponent alpha(static_cast<std::size_t>(n), 0);
      const long degree = rng.uniform_int(0, options.max_degree);
      for (long e = 0; e < degree; ++e) ++alpha[rng.uniform_int(0, n - 1)];
      long num = 0;
      while (num == 0) num = rng.uniform_int(-options.amplitude, options.amplitude);
      p.add_monomial(std::move(alpha), Rational(num, rng.uniform_int(1, 3)));
    }
    return p;
  };

  while (out.is_zero()) {
    for (const auto& index : slots)
      if (rng.bernoulli(options.component_density)) out.add_term(index, random_polynomial());
  }
  return out;
}

AffineMap random_rational_isometry(int n, Rng& rng) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform_int(0, i)]);
  std::vector<int> signs(static_cast<std::size_t>(n));
  for (auto& s : signs) s = rng.bernoulli(0.5) ? 1 : -1;
  AffineMap map = AffineMap::signed_permutation(perm, signs);

  static constexpr std::array<std::array<long, 3>, 3> triples{{{3, 4, 5}, {5, 12, 13}, {8, 15, 17}}};
  if (n >= 2) {
    const long rotations = rng.uniform_int(1, 2);
    for (long r = 0; r < rotations; ++r) {
      const auto& t = triples[static_cast<std::size_t>(rng.uniform_int(0, 2))];
      const int i = static_cast<int>(rng.uniform_int(1, n));
      int j = static_cast<int>(rng.uniform_int(1, n - 1));
      if (j >= i) ++j;
      map = AffineMap::pythagorean_rotation(n, i, j, t[0], t[1], t[2]).compose(map);
    }
  }
  std::vector<Rational> offset(static_cast<std::size_t>(n));
  for (auto& b : offset) b = Rational(rng.uniform_int(-3, 3), rng.uniform_int(1, 4));
  AffineMap translate(AffineMap::identity(n).matrix(), offset);
  return translate.compose(map);
}

} // namespace oddext
