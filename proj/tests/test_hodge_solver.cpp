#include "oddext/hodge_solver.hpp"
#include "oddext/random_forms.hpp"

#include <doctest.h>

using namespace oddext;

using G = GaussRational;
using FF = FourierForm<G>;
using CF = FourierForm<std::complex<double>>;

namespace {

const Mode kDiag({1, 1});

FF e_diag() { return FF::single(kDiag, IndexSet::empty(2)); }

/// f = i e^{i(x1+x2)} (dx^1 + dx^2)
FF worked_f() {
  FF f(2, 1);
  f.add(kDiag, IndexSet(2, {1}), G::i());
  f.add(kDiag, IndexSet(2, {2}), G::i());
  return f;
}

FF zero(int n, int q) { return FF(n, q); }

RandomFormOptions complex_options() {
  RandomFormOptions o;
  o.real_valued = false;
  o.density = 0.3;
  return o;
}

} // namespace

TEST_CASE("solve_first_order worked example") {
  const HodgeSystem<G> sys(0, 0, worked_f(), zero(2, -1));
  const auto u = solve_first_order(sys);
  CHECK(u.v == e_diag());
  CHECK(u.report.residual_primal == 0.0);
  CHECK(u.report.residual_dual == 0.0);
  CHECK_FALSE(u.report.failed);
  CHECK(u.report.backend == Backend::exact_rational);
}

TEST_CASE("solve_odd worked example and the box relation") {
  const HodgeSystem<G> sys(0, 1, worked_f(), zero(2, -1));
  const auto v = solve_odd(sys);
  CHECK(v.v == e_diag().scaled(G(Rational(1, 2))));
  CHECK(s_odd_fourier(1, v.v) == worked_f());
  const auto u = solve_first_order(sys);
  CHECK(relate_box_m(1, v.v, u.v));
  CHECK(relate_box_m(0, u.v, u.v));
  CHECK_FALSE(relate_box_m(0, v.v, u.v));
  CHECK_FALSE(relate_box_m(1, v.v, FF(2, 1)));
  CHECK(solve_odd(sys.with_m(0)).v == u.v);
}

TEST_CASE("zero data gives the zero solution") {
  const HodgeSystem<G> sys(1, 2, zero(3, 2), zero(3, 0));
  const auto v = solve_odd(sys);
  CHECK(v.v.is_zero());
  CHECK(v.v.degree() == 1);
  CHECK_FALSE(v.report.exceptional());
}

TEST_CASE("errors") {
  // constant mode
  FF f = worked_f();
  f.add(Mode::zero(2), IndexSet(2, {1}), G(1));
  const HodgeSystem<G> with_constant(0, 0, f, zero(2, -1));
  CHECK_THROWS_AS(solve_first_order(with_constant), NonTrivialKernel);
  CHECK_THROWS_AS(solve_odd(with_constant), NonTrivialKernel);

  // df != 0
  const FF not_closed = FF::single(Mode({1, 0}), IndexSet(2, {2}));
  CHECK_THROWS_AS(HodgeSystem<G>(0, 0, not_closed, zero(2, -1)), IncompatibleData);
  // d*g != 0
  const FF not_coclosed = FF::single(Mode({1, 0}), IndexSet(2, {1}));
  CHECK_THROWS_AS(HodgeSystem<G>(2, 0, zero(2, 3), not_coclosed), IncompatibleData);
  // wrong degrees
  CHECK_THROWS_AS(HodgeSystem<G>(1, 0, worked_f(), zero(2, 0)), DegreeMismatch);
  CHECK_THROWS_AS(HodgeSystem<G>(0, -1, worked_f(), zero(2, -1)), InvalidArgument);
}

TEST_CASE("exceptional flags") {
  Rng rng(1);
  const auto o = complex_options();
  // n = 3, q = 1 with g != 0
  const HodgeSystem<G> q1(1, 0, zero(3, 2), random_coclosed<G>(3, 0, 2, o, rng));
  CHECK(solve_odd(q1).report.flag_q1);
  CHECK_FALSE(solve_odd(q1).report.flag_qn1);
  // n = 3, q = 2 with f != 0
  const HodgeSystem<G> q2(2, 1, random_closed<G>(3, 3, 2, o, rng), zero(3, 1));
  CHECK(solve_odd(q2).report.flag_qn1);
  CHECK_FALSE(solve_odd(q2).report.flag_q1);
  // n = 3, q = 1 with g = 0 is not exceptional
  const HodgeSystem<G> q1f(1, 0, random_closed<G>(3, 2, 2, o, rng), zero(3, 0));
  CHECK_FALSE(solve_odd(q1f).report.exceptional());
}

TEST_CASE("round trip: solve_odd(S a, S* a) = a for mean-zero a") {
  Rng rng(21);
  const auto o = complex_options();
  for (int n = 2; n <= 4; ++n)
    for (int q = 0; q <= n; ++q)
      for (int m = 0; m <= 2; ++m) {
        const FF a = random_fourier_form<G>(n, q, 2, o, rng);
        const HodgeSystem<G> sys(q, m, s_odd_fourier(m, a), s_odd_star_fourier(m, a));
        const auto sol = solve_odd(sys);
        CHECK(sol.v == a);
        CHECK_FALSE(sol.report.failed);
        const auto [x, y] = split_solution(sys);
        CHECK(x + y == sol.v);
        CHECK(s_odd_star_fourier(m, x).is_zero());
        CHECK(s_odd_fourier(m, y).is_zero());
        CHECK(s_odd_fourier(m, x) == sys.f());
        CHECK(s_odd_star_fourier(m, y) == sys.g());
        CHECK(relate_box_m(m, sol.v, solve_first_order(sys).v));
      }
}

TEST_CASE("split_solution with one side zero") {
  Rng rng(2);
  const auto o = complex_options();
  const HodgeSystem<G> only_f(1, 1, random_closed<G>(3, 2, 2, o, rng), zero(3, 0));
  const auto [x, y] = split_solution(only_f);
  CHECK(y.is_zero());
  CHECK(x == solve_odd(only_f).v);
  const HodgeSystem<G> only_g(1, 1, zero(3, 2), random_coclosed<G>(3, 0, 2, o, rng));
  const auto [x2, y2] = split_solution(only_g);
  CHECK(x2.is_zero());
  CHECK(y2 == solve_odd(only_g).v);
}

TEST_CASE("float backend residuals at bandwidth 8") {
  Rng rng(5);
  RandomFormOptions o;
  o.density = 0.05;
  for (int q = 0; q <= 3; ++q)
    for (int m = 0; m <= 2; ++m) {
      const HodgeSystem<std::complex<double>> sys(q, m, random_closed<std::complex<double>>(3, q + 1, 8, o, rng),
                                                  random_coclosed<std::complex<double>>(3, q - 1, 8, o, rng));
      const auto sol = solve_odd(sys);
      CHECK(sol.report.backend == Backend::complex_float);
      CHECK(sol.report.residual_primal <= kFloatResidualTolerance);
      CHECK(sol.report.residual_dual <= kFloatResidualTolerance);
      CHECK_FALSE(sol.report.failed);
      CHECK(relate_box_m(m, sol.v, solve_first_order(sys).v, 1e-12));
    }
}

TEST_CASE("Hodge-dual symmetry in R^3") {
  // S(*v) = a *g and S*(*v) = b *f for q-form solutions v, indexed by q.
  const int a_sign[] = {1, -1, 1, -1};
  const int b_sign[] = {-1, 1, -1, 1};
  Rng rng(13);
  const auto o = complex_options();
  for (int q = 0; q <= 3; ++q)
    for (int m = 0; m <= 2; ++m) {
      const HodgeSystem<G> sys(q, m, random_closed<G>(3, q + 1, 2, o, rng), random_coclosed<G>(3, q - 1, 2, o, rng));
      const FF v = solve_odd(sys).v;
      const FF f_dual = hodge_star_form(sys.g()).scaled(G(a_sign[q]));
      const FF g_dual = hodge_star_form(sys.f()).scaled(G(b_sign[q]));
      const HodgeSystem<G> dual(3 - q, m, f_dual, g_dual);
      CHECK(solve_odd(dual).v == hodge_star_form(v));
    }
}
