#include "oddext/verify.hpp"

#include "oddext/form_io.hpp"
#include "oddext/hodge_solver.hpp"
#include "oddext/random_forms.hpp"

#include <functional>
#include <sstream>

namespace oddext {

namespace {

using ExactForm = FourierForm<GaussRational>;

class Suite {
public:
  explicit Suite(VerifyReport& report) : report_(report) {}

  void check(const std::string& name, bool ok, const std::function<std::string()>& witness) {
    IdentityResult& r = result(name);
    ++r.checks;
    if (!ok && r.passed) {
      r.passed = false;
      r.witness = witness();
    }
  }

private:
  IdentityResult& result(const std::string& name) {
    for (auto& r : report_.results)
      if (r.name == name) return r;
    report_.results.push_back(IdentityResult{name, 0, true, {}});
    return report_.results.back();
  }

  VerifyReport& report_;
};

AlgForm<Rational> random_alg_form(int n, int q, Rng& rng) {
  AlgForm<Rational> out(n, q);
  for (const auto& index : IndexSet::all_of_degree(n, q))
    if (rng.bernoulli(0.7)) out.add_term(index, Rational(rng.uniform_int(-5, 5), rng.uniform_int(1, 3)));
  return out;
}

std::string alg_witness(const AlgForm<Rational>& a) {
  std::ostringstream os;
  os << "{\"n\":" << a.n() << ",\"q\":" << a.degree() << ",\"terms\":[";
  bool first = true;
  for (const auto& [index, c] : a.terms()) {
    os << (first ? "" : ",") << "{\"I\":\"" << index.to_string() << "\",\"c\":\"" << format_rational(c) << "\"}";
    first = false;
  }
  os << "]}";
  return os.str();
}

std::string witness(const PolyForm& f) { return io::to_json(f).dump(); }
std::string witness(const ExactForm& f) { return io::to_json(f).dump(); }

AffineMap random_affine(int n, Rng& rng) {
  while (true) {
    AffineMap::Matrix a(n, std::vector<Rational>(n));
    for (auto& row : a)
      for (auto& x : row) x = Rational(rng.uniform_int(-3, 3), rng.uniform_int(1, 2));
    std::vector<Rational> b(n);
    for (auto& x : b) x = Rational(rng.uniform_int(-2, 2), rng.uniform_int(1, 3));
    try {
      return AffineMap(std::move(a), std::move(b));
    } catch (const InvalidArgument&) {
    }
  }
}

LatticeIsometry random_lattice_isometry(int n, Rng& rng) {
  LatticeIsometry psi = LatticeIsometry::identity(n);
  for (int i = n - 1; i > 0; --i) std::swap(psi.perm[i], psi.perm[rng.uniform_int(0, i)]);
  for (auto& s : psi.signs) s = rng.bernoulli(0.5) ? 1 : -1;
  for (auto& t : psi.translation_over_pi) t = Rational(rng.uniform_int(0, 3), 2);
  return psi;
}

RandomFormOptions exact_options() {
  RandomFormOptions o;
  o.density = 0.15;
  o.real_valued = false;
  return o;
}

/// Decides a sign a with lhs = a * rhs; 0 when both vanish, 2 when no sign fits.
template <class Form>
int sign_relation(const Form& lhs, const Form& rhs) {
  if (lhs.is_zero() && rhs.is_zero()) return 0;
  if (lhs == rhs) return 1;
  if (lhs == -rhs) return -1;
  return 2;
}

/// Records a sign in `slot`, failing if it contradicts an earlier determination.
bool settle_sign(int observed, int& slot) {
  if (observed == 2) return false;
  if (observed == 0) return true;
  if (slot == 0) slot = observed;
  return slot == observed;
}

void exterior_identities(const VerifyOptions& o, Suite& suite, Rng& rng) {
  const int n = o.n;
  const int max_q = o.max_q < 0 ? n : std::min(o.max_q, n);
  for (int q = 0; q <= max_q; ++q) {
    for (int t = 0; t < o.trials; ++t) {
      const auto w = random_alg_form(n, q, rng);
      const auto eta = random_alg_form(n, q, rng);
      const int p = static_cast<int>(rng.uniform_int(0, n));
      const auto mu = random_alg_form(n, p, rng);
      const int sign = (q * (n - q)) % 2 == 0 ? 1 : -1;
      suite.check("exterior: ** = (-1)^{q(n-q)}", hodge_star(hodge_star(w)) == w.scaled(Rational(sign)),
                  [&] { return alg_witness(w); });
      const int graded = (p * q) % 2 == 0 ? 1 : -1;
      suite.check("exterior: w^m = (-1)^{pq} m^w", wedge(w, mu) == wedge(mu, w).scaled(Rational(graded)),
                  [&] { return alg_witness(w); });
      suite.check("exterior: <w,h> = vol coefficient of w ^ *h",
                  pointwise_inner(w, eta) == volume_coefficient(wedge(w, hodge_star(eta))),
                  [&] { return alg_witness(w); });
      if (q >= 1) {
        std::vector<Rational> k(static_cast<std::size_t>(n));
        for (auto& x : k) x = Rational(rng.uniform_int(-4, 4));
        const auto once = interior<Rational>(k, w);
        suite.check("exterior: k_|(k_|w) = 0", once.degree() < 1 || interior<Rational>(k, once).is_zero(),
                    [&] { return alg_witness(w); });
      }
    }
  }
}

void poly_identities(const VerifyOptions& o, Suite& suite, VerifyReport& report, Rng& rng) {
  const int n = o.n;
  const int max_q = o.max_q < 0 ? n : std::min(o.max_q, n);
  for (int q = 0; q <= max_q; ++q) {
    int& star_sign = report.codifferential_signs[q];
    for (int t = 0; t < o.trials; ++t) {
      RandomPolyOptions po;
      const PolyForm w = random_poly_form(n, q, po, rng);
      auto wit = [&] { return witness(w); };
      suite.check("poly: d d = 0", d_poly(d_poly(w)).is_zero(), wit);
      suite.check("poly: d* d* = 0", dstar_poly(dstar_poly(w)).is_zero(), wit);
      suite.check("poly: dd* + d*d = -Laplacian", box_poly(w) == neg_laplacian_poly(w), wit);

      const PolyForm dual_route = hodge_star(d_poly(hodge_star(w)));
      suite.check("poly: d* = s(n,q) * d * (sign stable)",
                  q == 0 || settle_sign(sign_relation(dstar_poly(w), dual_route), star_sign), wit);

      const AffineMap general = random_affine(n, rng);
      suite.check("poly: psi^* d = d psi^* (invertible affine psi)",
                  pullback_affine(general, d_poly(w)) == d_poly(pullback_affine(general, w)), wit);

      const AffineMap iso = random_rational_isometry(n, rng);
      suite.check("poly: psi^* d* = d* psi^* (rational isometry)",
                  pullback_affine(iso, dstar_poly(w)) == dstar_poly(pullback_affine(iso, w)), wit);

      for (int m = 0; m <= o.max_m; ++m) {
        po.max_degree = 2 * m + 3;
        const PolyForm u = random_poly_form(n, q, po, rng);
        auto uwit = [&] { return witness(u); };
        const PolyForm s = s_odd_poly(m, u);
        const PolyForm ss = s_odd_star_poly(m, u);
        suite.check("poly: S o S = 0", s_odd_poly(m, s).is_zero(), uwit);
        suite.check("poly: S* o S* = 0", s_odd_star_poly(m, ss).is_zero(), uwit);
        suite.check("poly: d o S = 0", d_poly(s).is_zero(), uwit);
        suite.check("poly: d* o S* = 0", dstar_poly(ss).is_zero(), uwit);
        const PolyForm pulled = pullback_affine(iso, u);
        suite.check("poly: psi^* S = S psi^* (rational isometry)",
                    pullback_affine(iso, s) == s_odd_poly(m, pulled), uwit);
        suite.check("poly: psi^* S* = S* psi^* (rational isometry)",
                    pullback_affine(iso, ss) == s_odd_star_poly(m, pulled), uwit);
      }
    }
    if (star_sign == 0) report.codifferential_signs.erase(q);
  }

  // d* is not invariant under a non-isometric map: psi = diag(2, 1, ...), w = x_1 dx^1.
  if (n >= 1) {
    std::vector<Rational> scales(static_cast<std::size_t>(n), Rational(1));
    scales[0] = 2;
    const AffineMap stretch = AffineMap::diagonal(scales);
    const PolyForm w = PolyForm::basis(n, IndexSet(n, {1}), Polynomial::variable(1));
    suite.check("poly: non-isometry witness breaks d* equivariance",
                pullback_affine(stretch, dstar_poly(w)) != dstar_poly(pullback_affine(stretch, w)),
                [&] { return witness(w); });
  }
}

void fourier_identities(const VerifyOptions& o, Suite& suite, VerifyReport& report, Rng& rng) {
  const int n = o.n;
  const int max_q = o.max_q < 0 ? n : std::min(o.max_q, n);
  const RandomFormOptions ro = exact_options();
  constexpr int bandwidth = 2;
  for (int q = 0; q <= max_q; ++q) {
    for (int t = 0; t < o.trials; ++t) {
      const ExactForm w = random_fourier_form<GaussRational>(n, q, bandwidth, ro, rng);
      auto wit = [&] { return witness(w); };
      const ExactForm box = box_apply(w);
      suite.check("fourier: box = dd* + d*d", box == d_fourier(dstar_fourier(w)) + dstar_fourier(d_fourier(w)), wit);
      bool symbol_ok = true;
      for (const auto& [k, a] : w.spectrum())
        symbol_ok = symbol_ok && box.at(k) == a.scaled(GaussRational(k.norm2()));
      suite.check("fourier: box multiplies mode k by |k|^2", symbol_ok, wit);
      for (int s = 1; s <= 3; ++s) {
        suite.check("fourier: (box^s)^{-1} box^s = id", box_inverse_power(s, box_apply_power(s, w)) == w, wit);
        suite.check("fourier: box^s (box^s)^{-1} = id", box_apply_power(s, box_inverse_power(s, w)) == w, wit);
      }
      if (q + 1 <= n) {
        const ExactForm eta = random_fourier_form<GaussRational>(n, q + 1, bandwidth, ro, rng);
        suite.check("fourier: <dw, h> = <w, d*h>", l2_inner(d_fourier(w), eta) == l2_inner(w, dstar_fourier(eta)),
                    wit);
      }
      const GaussRational energy = l2_inner(d_fourier(w), d_fourier(w)) + l2_inner(dstar_fourier(w), dstar_fourier(w));
      GaussRational gradient;
      for (const auto& [k, a] : w.spectrum()) gradient += GaussRational(k.norm2()) * pointwise_inner(a, a);
      suite.check("fourier: ||dh||^2 + ||d*h||^2 = ||grad h||^2", energy == gradient, wit);

      const LatticeIsometry psi = random_lattice_isometry(n, rng);
      const ExactForm pulled = pullback_lattice_isometry(psi, w);
      suite.check("fourier: psi^* d = d psi^*", pullback_lattice_isometry(psi, d_fourier(w)) == d_fourier(pulled), wit);
      suite.check("fourier: psi^* d* = d* psi^*",
                  pullback_lattice_isometry(psi, dstar_fourier(w)) == dstar_fourier(pulled), wit);

      for (int m = 0; m <= o.max_m; ++m) {
        const ExactForm s = s_odd_fourier(m, w);
        const ExactForm ss = s_odd_star_fourier(m, w);
        suite.check("fourier: S o S = 0", s_odd_fourier(m, s).is_zero(), wit);
        suite.check("fourier: S* o S* = 0", s_odd_star_fourier(m, ss).is_zero(), wit);
        suite.check("fourier: d o S = 0", d_fourier(s).is_zero(), wit);
        suite.check("fourier: d* o S* = 0", dstar_fourier(ss).is_zero(), wit);
        bool collapse = true;
        for (const auto& [k, a] : w.spectrum()) {
          const ExactForm single = ExactForm::single(k, a);
          const GaussRational factor = detail::int_power(GaussRational(k.norm2()), m);
          collapse = collapse && s_odd_fourier(m, single) == d_fourier(single).scaled(factor);
        }
        suite.check("fourier: S(2m+1) = |k|^{2m} d on single modes", collapse, wit);
        suite.check("fourier: psi^* S = S psi^*", pullback_lattice_isometry(psi, s) == s_odd_fourier(m, pulled), wit);
        suite.check("fourier: psi^* S* = S* psi^*",
                    pullback_lattice_isometry(psi, ss) == s_odd_star_fourier(m, pulled), wit);

        // Hodge-dual symmetry of the odd system: *v solves the system with data (a *g, b *f).
        const ExactForm f = random_closed<GaussRational>(n, q + 1, bandwidth, ro, rng);
        const ExactForm g = random_coclosed<GaussRational>(n, q - 1, bandwidth, ro, rng);
        const HodgeSystem<GaussRational> sys(q, m, f, g);
        const ExactForm v = solve_odd(sys).v;
        const ExactForm w_dual = hodge_star_form(v);
        auto& signs = report.dual_system_signs[{q, m}];
        const bool a_ok = settle_sign(sign_relation(s_odd_fourier(m, w_dual), hodge_star_form(g)), signs.first);
        const bool b_ok = settle_sign(sign_relation(s_odd_star_fourier(m, w_dual), hodge_star_form(f)), signs.second);
        bool dual_ok = a_ok && b_ok;
        if (dual_ok) {
          const int a = signs.first == 0 ? 1 : signs.first;
          const int b = signs.second == 0 ? 1 : signs.second;
          const HodgeSystem<GaussRational> dual(n - q, m, hodge_star_form(g).scaled(GaussRational(a)),
                                                hodge_star_form(f).scaled(GaussRational(b)));
          dual_ok = solve_odd(dual).v == w_dual;
        }
        suite.check("solver: *v solves the Hodge-dual system (sign stable)", dual_ok, [&] { return witness(f); });
      }
    }
  }
}

} // namespace

bool VerifyReport::passed() const {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

std::string VerifyReport::text() const {
  std::ostringstream os;
  for (const auto& r : results) {
    os << (r.passed ? "PASS " : "FAIL ") << r.name << "  [" << r.checks << " checks]\n";
    if (!r.passed) os << "  witness: " << r.witness << '\n';
  }
  if (!codifferential_signs.empty()) {
    os << "sign table d* = s * d * :";
    for (const auto& [q, s] : codifferential_signs) os << "  q=" << q << ": " << (s > 0 ? "+1" : "-1");
    os << '\n';
  }
  if (!dual_system_signs.empty()) {
    os << "sign table S(*v) = a *g, S*(*v) = b *f (0 = not determined):";
    for (const auto& [qm, ab] : dual_system_signs)
      os << "  (q=" << qm.first << ",m=" << qm.second << "): (" << ab.first << "," << ab.second << ")";
    os << '\n';
  }
  return os.str();
}

VerifyReport run_verify(const VerifyOptions& options) {
  if (options.n < 1) throw InvalidArgument("verify: n must be >= 1");
  if (options.max_m < 0) throw InvalidArgument("verify: max_m must be >= 0");
  if (options.trials < 0) throw InvalidArgument("verify: trials must be >= 0");
  VerifyReport report;
  if (options.trials == 0) return report;
  Suite suite(report);
  Rng rng(options.seed);
  exterior_identities(options, suite, rng);
  poly_identities(options, suite, report, rng);
  fourier_identities(options, suite, report, rng);
  return report;
}

} // namespace oddext
