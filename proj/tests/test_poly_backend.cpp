#include "oddext/poly_backend.hpp"

#include "test_support.hpp"

#include <doctest.h>

using namespace oddext;
using oddext::testing::ix;

namespace {

Polynomial x(int j) { return Polynomial::variable(j); }
Polynomial c(long num, long den = 1) { return Polynomial(Rational(num, den)); }

PolyForm pf(int n, std::vector<int> index, Polynomial p) { return PolyForm::basis(n, IndexSet(n, std::move(index)), p); }

// Classical vector-calculus formulas in R^3, written out by hand.
PolyForm grad_oracle(const Polynomial& u) {
  PolyForm out(3, 1);
  for (int j = 1; j <= 3; ++j) out.add_term(ix(3, {j}), u.derivative(j));
  return out;
}

PolyForm d_one_form_oracle(const PolyForm& w) {
  auto comp = [&](int i) { return w.coefficient(ix(3, {i})); };
  PolyForm out(3, 2);
  out.add_term(ix(3, {1, 2}), comp(2).derivative(1) - comp(1).derivative(2));
  out.add_term(ix(3, {1, 3}), comp(3).derivative(1) - comp(1).derivative(3));
  out.add_term(ix(3, {2, 3}), comp(3).derivative(2) - comp(2).derivative(3));
  return out;
}

Polynomial neg_div_oracle(const PolyForm& w) {
  Polynomial out;
  for (int j = 1; j <= 3; ++j) out -= w.coefficient(ix(3, {j})).derivative(j);
  return out;
}

} // namespace

TEST_CASE("Polynomial arithmetic and differentiation") {
  const Polynomial p = x(1) * x(1) * x(2) + c(3, 2);
  CHECK(p.derivative(1) == c(2) * x(1) * x(2));
  CHECK(p.derivative(3).is_zero());
  CHECK(p.total_degree() == 3);
  CHECK((p - p).is_zero());
  CHECK(Polynomial::monomial({0, 0, 0}, Rational(2)) == c(2));
  const std::vector<Rational> point{Rational(2), Rational(-1)};
  CHECK(p.evaluate(point) == Rational(-4) + Rational(3, 2));
  // substitute x1 -> x2, x2 -> x1 + 1
  const std::vector<Polynomial> sub{x(2), x(1) + c(1)};
  CHECK(p.substitute(sub) == x(2) * x(2) * (x(1) + c(1)) + c(3, 2));
}

TEST_CASE("AffineMap classifies isometries") {
  CHECK(AffineMap::identity(3).is_isometry());
  CHECK(AffineMap::signed_permutation({2, 1, 3}, {1, -1, 1}).is_isometry());
  CHECK(AffineMap::pythagorean_rotation(3, 1, 3, 3, 4, 5).is_isometry());
  CHECK_FALSE(AffineMap::diagonal({Rational(2), Rational(1)}).is_isometry());
  CHECK_THROWS_AS(AffineMap::diagonal({Rational(0), Rational(1)}), InvalidArgument);
  CHECK_THROWS_AS(AffineMap::pythagorean_rotation(2, 1, 2, 3, 4, 6), InvalidArgument);
}

TEST_CASE("d_poly examples") {
  CHECK(d_poly(PolyForm::scalar(2, x(1))) == pf(2, {1}, c(1)));
  CHECK(d_poly(pf(2, {1}, x(1) * x(2))) == pf(2, {1, 2}, -x(1)));
  CHECK(d_poly(pf(2, {1}, x(1))).is_zero());
  // top degree maps to the zero (n+1)-form
  auto top = d_poly(pf(2, {1, 2}, x(1)));
  CHECK(top.is_zero());
  CHECK(top.degree() == 3);
}

TEST_CASE("dstar_poly examples") {
  CHECK(dstar_poly(pf(2, {1}, x(1))) == PolyForm::scalar(2, c(-1)));
  CHECK(dstar_poly(pf(2, {1}, x(2))).is_zero());
  CHECK(dstar_poly(pf(3, {1, 3}, c(5))).is_zero());
  auto low = dstar_poly(PolyForm::scalar(2, x(1)));
  CHECK(low.is_zero());
  CHECK(low.degree() == -1);
}

TEST_CASE("s_odd_poly and s_odd_star_poly examples") {
  Rng rng(11);
  const PolyForm w = random_poly_form(3, 1, {}, rng);
  CHECK(s_odd_poly(0, w) == d_poly(w));
  CHECK(s_odd_star_poly(0, w) == dstar_poly(w));

  const PolyForm u = PolyForm::scalar(2, x(1) * x(1) * x(2));
  // stepwise: d u, then d*, then d
  const PolyForm du = d_poly(u);
  CHECK(du == pf(2, {1}, c(2) * x(1) * x(2)) + pf(2, {2}, x(1) * x(1)));
  CHECK(dstar_poly(du) == PolyForm::scalar(2, c(-2) * x(2)));
  CHECK(s_odd_poly(1, u) == pf(2, {2}, c(-2)));

  const PolyForm v = pf(2, {1}, x(1) * x(1) * x(1));
  CHECK(dstar_poly(v) == PolyForm::scalar(2, c(-3) * x(1) * x(1)));
  CHECK(s_odd_star_poly(1, v) == PolyForm::scalar(2, c(6)));

  for (int m = 0; m <= 2; ++m) {
    CHECK(s_odd_poly(m, s_odd_poly(m, w)).is_zero());
    CHECK(s_odd_star_poly(m, s_odd_star_poly(m, w)).is_zero());
  }
  CHECK_THROWS_AS(s_odd_poly(-1, w), InvalidArgument);
}

TEST_CASE("d and d* agree with hand-written vector calculus in R^3") {
  Rng rng(5);
  RandomPolyOptions po;
  po.monomials_per_component = 3;
  for (int trial = 0; trial < 30; ++trial) {
    const PolyForm u = random_poly_form(3, 0, po, rng);
    CHECK(d_poly(u) == grad_oracle(u.coefficient(IndexSet::empty(3))));
    const PolyForm w = random_poly_form(3, 1, po, rng);
    CHECK(d_poly(w) == d_one_form_oracle(w));
    CHECK(dstar_poly(w) == PolyForm::scalar(3, neg_div_oracle(w)));
  }
}

TEST_CASE("pullback_affine examples") {
  const auto rot = AffineMap::pythagorean_rotation(2, 1, 2, 3, 4, 5);
  const PolyForm one = pf(2, {1}, c(1));
  CHECK(pullback_affine(AffineMap::identity(2), one) == one);
  CHECK(pullback_affine(rot, one) == pf(2, {1}, c(3, 5)) + pf(2, {2}, c(-4, 5)));
  CHECK(pullback_affine(rot, PolyForm::scalar(2, x(1))) == PolyForm::scalar(2, c(3, 5) * x(1) - c(4, 5) * x(2)));
  // translation shifts the argument
  const AffineMap shift(AffineMap::identity(2).matrix(), {Rational(1), Rational(0)});
  CHECK(pullback_affine(shift, PolyForm::scalar(2, x(1) * x(1))) ==
        PolyForm::scalar(2, x(1) * x(1) + c(2) * x(1) + c(1)));
}

TEST_CASE("exact complex identities on random polynomial forms, n <= 4") {
  Rng rng(99);
  for (int n = 1; n <= 4; ++n)
    for (int q = 0; q <= n; ++q)
      for (int trial = 0; trial < 4; ++trial) {
        const PolyForm w = random_poly_form(n, q, {}, rng);
        CHECK(d_poly(d_poly(w)).is_zero());
        CHECK(dstar_poly(dstar_poly(w)).is_zero());
        CHECK(box_poly(w) == neg_laplacian_poly(w));
        for (int m = 0; m <= 3; ++m) {
          RandomPolyOptions po;
          po.max_degree = 2 * m + 3;
          const PolyForm u = random_poly_form(n, q, po, rng);
          CHECK(d_poly(s_odd_poly(m, u)).is_zero());
          CHECK(dstar_poly(s_odd_star_poly(m, u)).is_zero());
          CHECK(s_odd_poly(m, s_odd_poly(m, u)).is_zero());
        }
      }
}

TEST_CASE("pullback equivariance") {
  Rng rng(31);
  for (int n = 2; n <= 4; ++n)
    for (int trial = 0; trial < 6; ++trial) {
      const int q = static_cast<int>(rng.uniform_int(0, n));
      const PolyForm w = random_poly_form(n, q, {}, rng);
      const AffineMap iso = random_rational_isometry(n, rng);
      REQUIRE(iso.is_isometry());
      const PolyForm pulled = pullback_affine(iso, w);
      CHECK(pullback_affine(iso, d_poly(w)) == d_poly(pulled));
      CHECK(pullback_affine(iso, dstar_poly(w)) == dstar_poly(pulled));
      for (int m = 1; m <= 2; ++m) {
        CHECK(pullback_affine(iso, s_odd_poly(m, w)) == s_odd_poly(m, pulled));
        CHECK(pullback_affine(iso, s_odd_star_poly(m, w)) == s_odd_star_poly(m, pulled));
      }
      // d is invariant under any invertible affine map
      AffineMap::Matrix a(n, std::vector<Rational>(n, Rational(0)));
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) a[i][j] = Rational(rng.uniform_int(1, 4), rng.uniform_int(1, 3));
      const AffineMap shear(a, std::vector<Rational>(n, Rational(1, 2)));
      CHECK_FALSE(shear.is_isometry());
      CHECK(pullback_affine(shear, d_poly(w)) == d_poly(pullback_affine(shear, w)));
    }
}

TEST_CASE("a non-isometry breaks d* equivariance") {
  const AffineMap stretch = AffineMap::diagonal({Rational(2), Rational(1)});
  const PolyForm w = pf(2, {1}, x(1));
  // psi^* w = 4 x1 dx1, so d* psi^* w = -4 while psi^* d* w = -1.
  CHECK(dstar_poly(pullback_affine(stretch, w)) == PolyForm::scalar(2, c(-4)));
  CHECK(pullback_affine(stretch, dstar_poly(w)) == PolyForm::scalar(2, c(-1)));
}

TEST_CASE("d* = (-1)^{n(q+1)+1} * d * on q-forms") {
  Rng rng(17);
  for (int n = 1; n <= 5; ++n)
    for (int q = 1; q <= n; ++q) {
      const int sign = (n * (q + 1) + 1) % 2 == 0 ? 1 : -1;
      for (int trial = 0; trial < 3; ++trial) {
        RandomPolyOptions po;
        po.max_degree = 3;
        const PolyForm w = random_poly_form(n, q, po, rng);
        CHECK(dstar_poly(w) == hodge_star(d_poly(hodge_star(w))).scaled(Rational(sign)));
      }
    }
}
