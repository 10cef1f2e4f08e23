#include "oddext/random_forms.hpp"

#include "test_support.hpp"

#include <doctest.h>

using namespace oddext;
using oddext::testing::ix;

using G = GaussRational;
using FF = FourierForm<G>;
using CF = FourierForm<std::complex<double>>;

namespace {

Mode mode(std::vector<int> k) { return Mode(std::move(k)); }

FF single(std::vector<int> k, int n, std::vector<int> index, G c = G(1)) {
  return FF::single(mode(std::move(k)), IndexSet(n, std::move(index)), c);
}

FF random_form(int n, int q, Rng& rng, int bandwidth = 2, bool real = false) {
  RandomFormOptions o;
  o.density = 0.35;
  o.real_valued = real;
  return random_fourier_form<G>(n, q, bandwidth, o, rng);
}

} // namespace

TEST_CASE("d_fourier examples") {
  CHECK(d_fourier(single({2, 0}, 2, {2})) == single({2, 0}, 2, {1, 2}, G(0, 2)));
  CHECK(d_fourier(single({1, 0}, 2, {1})).is_zero());
  CHECK(d_fourier(single({0, 0}, 2, {1}, G(3))).is_zero());
}

TEST_CASE("dstar_fourier examples") {
  CHECK(dstar_fourier(single({2, 0}, 2, {1})) == single({2, 0}, 2, {}, G(0, -2)));
  CHECK(dstar_fourier(single({2, 0}, 2, {2})).is_zero());
  CHECK(dstar_fourier(single({0, 0}, 2, {1, 2}, G(3))).is_zero());
  CHECK(dstar_fourier(single({1, 0}, 2, {})).degree() == -1);
}

TEST_CASE("box_apply examples") {
  CHECK(box_apply(single({1, 2}, 2, {1})) == single({1, 2}, 2, {1}, G(5)));
  CHECK(box_apply(single({0, 0}, 2, {2}, G(7))).is_zero());
  for (int j = 1; j <= 3; ++j) {
    const FF w = single({1, 0, 0}, 3, {j});
    CHECK(box_apply(w) == w);
  }
}

TEST_CASE("box_inverse_power examples") {
  const FF unit = single({1, 0}, 2, {1});
  CHECK(box_inverse_power(2, unit) == unit);
  CHECK(box_inverse_power(1, single({1, 1}, 2, {1})) == single({1, 1}, 2, {1}, G(Rational(1, 2))));
  CHECK_THROWS_AS(box_inverse_power(1, unit + single({0, 0}, 2, {1})), NonTrivialKernel);
  CHECK_THROWS_AS(box_inverse_power(0, unit), InvalidArgument);
}

TEST_CASE("l2_inner examples") {
  const FF w = single({1, 0}, 2, {1});
  CHECK(l2_inner(w, w) == G(1));
  CHECK(l2_inner(w, single({0, 1}, 2, {1})) == G(0));
  // conjugate-linear in the second slot
  CHECK(l2_inner(w, w.scaled(G::i())) == G(0, -1));
  CHECK_THROWS_AS(l2_inner(w, single({1, 0}, 2, {1, 2})), DegreeMismatch);
}

TEST_CASE("deriv_multi examples") {
  const FF scalar = single({1, 0}, 2, {});
  CHECK(deriv_multi({0, 0}, scalar) == scalar);
  CHECK(deriv_multi({2, 0}, scalar) == scalar.scaled(G(-1)));
  CHECK(deriv_multi({0, 1}, scalar).is_zero());
  CHECK(deriv_multi({1, 1}, single({2, 3}, 2, {1})) == single({2, 3}, 2, {1}, G(-6)));
}

TEST_CASE("pullback_lattice_isometry examples") {
  const FF w = single({1, 0}, 2, {1});
  CHECK(pullback_lattice_isometry(LatticeIsometry::identity(2), w) == w);

  LatticeIsometry swap{{2, 1}, {1, 1}, {Rational(0), Rational(0)}};
  CHECK(pullback_lattice_isometry(swap, w) == single({0, 1}, 2, {2}));

  LatticeIsometry shift = LatticeIsometry::identity(2);
  shift.translation_over_pi = {Rational(1, 2), Rational(0)};
  const FF s = single({1, 0}, 2, {});
  CHECK(pullback_lattice_isometry(shift, s) == s.scaled(G::i()));

  LatticeIsometry flip{{1, 2}, {-1, 1}, {Rational(0), Rational(0)}};
  CHECK(pullback_lattice_isometry(flip, w) == single({-1, 0}, 2, {1}, G(-1)));

  shift.translation_over_pi = {Rational(1, 3), Rational(0)};
  CHECK_THROWS_AS(pullback_lattice_isometry(shift, s), TranslationNotExact);
  const auto floated = pullback_lattice_isometry(shift, to_complex(s));
  const auto c = floated.coefficient(mode({1, 0}), IndexSet::empty(2));
  CHECK(c.real() == doctest::Approx(0.5));
  CHECK(c.imag() == doctest::Approx(std::sqrt(3.0) / 2));

  LatticeIsometry bad{{1, 1}, {1, 1}, {Rational(0), Rational(0)}};
  CHECK_THROWS_AS(pullback_lattice_isometry(bad, w), InvalidArgument);
}

TEST_CASE("s_odd_fourier on a single mode is |k|^{2m} d") {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(2, 4));
    const int q = static_cast<int>(rng.uniform_int(0, n - 1));
    Mode k = Mode::zero(n);
    for (auto& v : k.k) v = static_cast<int>(rng.uniform_int(-3, 3));
    AlgForm<G> a(n, q);
    for (const auto& index : IndexSet::all_of_degree(n, q))
      if (rng.bernoulli(0.6)) a.add_term(index, random_scalar<G>(rng, {}));
    const FF w = FF::single(k, a);
    for (int m = 0; m <= 3; ++m) {
      G factor(1);
      for (int r = 0; r < m; ++r) factor *= G(k.norm2());
      CHECK(s_odd_fourier(m, w) == d_fourier(w).scaled(factor));
    }
    CHECK(s_odd_fourier(0, w) == d_fourier(w));
    CHECK(s_odd_star_fourier(0, w) == dstar_fourier(w));
  }
}

TEST_CASE("exact Fourier identities on random forms, n <= 4") {
  Rng rng(77);
  for (int n = 1; n <= 4; ++n)
    for (int q = 0; q <= n; ++q)
      for (int trial = 0; trial < 4; ++trial) {
        const FF w = random_form(n, q, rng);
        CHECK(d_fourier(d_fourier(w)).is_zero());
        CHECK(dstar_fourier(dstar_fourier(w)).is_zero());
        CHECK(box_apply(w) == d_fourier(dstar_fourier(w)) + dstar_fourier(d_fourier(w)));
        for (int m = 0; m <= 2; ++m) {
          CHECK(s_odd_fourier(m, s_odd_fourier(m, w)).is_zero());
          CHECK(d_fourier(s_odd_fourier(m, w)).is_zero());
          CHECK(dstar_fourier(s_odd_star_fourier(m, w)).is_zero());
        }
        for (int s = 1; s <= 3; ++s) {
          CHECK(box_inverse_power(s, box_apply_power(s, w)) == w);
          CHECK(box_apply_power(s, box_inverse_power(s, w)) == w);
        }
        if (q < n) {
          const FF eta = random_form(n, q + 1, rng);
          CHECK(l2_inner(d_fourier(w), eta) == l2_inner(w, dstar_fourier(eta)));
        }
        // Energy identity in the spectrum.
        double grad = 0.0;
        for (int j = 0; j < n; ++j) {
          std::vector<int> beta(static_cast<std::size_t>(n), 0);
          beta[j] = 1;
          grad += l2_norm_sq(deriv_multi(beta, w));
        }
        const G lhs = l2_inner(d_fourier(w), d_fourier(w)) + l2_inner(dstar_fourier(w), dstar_fourier(w));
        G rhs(0);
        for (int j = 0; j < n; ++j) {
          std::vector<int> beta(static_cast<std::size_t>(n), 0);
          beta[j] = 1;
          const FF dj = deriv_multi(beta, w);
          rhs += l2_inner(dj, dj);
        }
        CHECK(lhs == rhs);
        CHECK(to_double(lhs.re) == doctest::Approx(grad));
      }
}

TEST_CASE("lattice isometries commute with d and d*") {
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(2, 4));
    const int q = static_cast<int>(rng.uniform_int(0, n));
    LatticeIsometry psi = LatticeIsometry::identity(n);
    for (int i = n - 1; i > 0; --i) std::swap(psi.perm[i], psi.perm[rng.uniform_int(0, i)]);
    for (auto& s : psi.signs) s = rng.bernoulli(0.5) ? 1 : -1;
    for (auto& t : psi.translation_over_pi) t = Rational(rng.uniform_int(-3, 3), 2);
    const FF w = random_form(n, q, rng);
    const FF pulled = pullback_lattice_isometry(psi, w);
    CHECK(pullback_lattice_isometry(psi, d_fourier(w)) == d_fourier(pulled));
    CHECK(pullback_lattice_isometry(psi, dstar_fourier(w)) == dstar_fourier(pulled));
    CHECK(pullback_lattice_isometry(psi, s_odd_fourier(1, w)) == s_odd_fourier(1, pulled));
  }
}

TEST_CASE("the float backend agrees with the exact backend") {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const FF w = random_form(3, 1, rng, 3);
    const CF x = s_odd_fourier(2, to_complex(w));
    const CF y = to_complex(s_odd_fourier(2, w));
    CHECK(std::sqrt(l2_norm_sq(x - y)) <= 1e-12 * std::sqrt(l2_norm_sq(y)));
  }
}

TEST_CASE("random real-valued forms are conjugate-symmetric and mean-zero") {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const FF w = random_form(3, 2, rng, 2, true);
    CHECK_FALSE(w.is_zero());
    CHECK_FALSE(w.has_constant_mode());
    CHECK(is_real_valued(w));
    CHECK(w.max_frequency() <= 2);
  }
  CHECK_FALSE(is_real_valued(single({1, 0}, 2, {1})));
  const FF closed = random_closed<G>(3, 2, 2, 0.3, 9);
  CHECK(d_fourier(closed).is_zero());
  const FF coclosed = random_coclosed<G>(3, 1, 2, 0.3, 9);
  CHECK(dstar_fourier(coclosed).is_zero());
  CHECK(random_closed<G>(3, 2, 2, 0.3, 9) == closed);
}
