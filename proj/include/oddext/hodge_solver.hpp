#pragma once

// Odd-order Hodge system on the torus:
//
//   d (d*d)^m v = f,   (d*d)^m d* v = g,
//
// with df = 0 and d*g = 0. Applying d* to the first equation, d to the second
// and adding gives box^{m+1} v = d*f + dg, which is inverted mode by mode.

#include "fourier.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace oddext {

enum class Backend { exact_rational, complex_float };

inline const char* backend_name(Backend b) { return b == Backend::exact_rational ? "exact" : "float"; }

template <class S>
constexpr Backend backend_of() {
  return ScalarTraits<S>::exact ? Backend::exact_rational : Backend::complex_float;
}

/// Relative residual ceiling for the float backend.
inline constexpr double kFloatResidualTolerance = 1e-9;

struct SolveReport {
  double residual_primal = 0.0; ///< ||S v - f||, relative in the float backend
  double residual_dual = 0.0;   ///< ||S* v - g||, relative in the float backend
  /// q = 1 with g != 0: the L^1 bound on g is replaced by a Hardy-space one.
  bool flag_q1 = false;
  /// q = n - 1 with f != 0: same caveat for f.
  bool flag_qn1 = false;
  Backend backend = Backend::exact_rational;
  bool failed = false;

  bool exceptional() const { return flag_q1 || flag_qn1; }
};

template <class S>
class HodgeSystem {
public:
  /// Throws DegreeMismatch on inconsistent degrees and IncompatibleData
  /// unless df = 0 and d*g = 0 (up to rounding in the float backend).
  HodgeSystem(int q, int m, FourierForm<S> f, FourierForm<S> g)
      : q_(q), m_(m), f_(std::move(f)), g_(std::move(g)) {
    if (m < 0) throw InvalidArgument("HodgeSystem: m must be nonnegative");
    if (f_.n() != g_.n()) throw DimensionMismatch("HodgeSystem: f and g live in different dimensions");
    if (q < 0 || q > f_.n()) throw InvalidArgument("HodgeSystem: q outside [0, n]");
    if (f_.degree() != q + 1) throw DegreeMismatch("HodgeSystem: f must have degree q+1");
    if (g_.degree() != q - 1) throw DegreeMismatch("HodgeSystem: g must have degree q-1");
    if (!negligible(d_fourier(f_), f_)) throw IncompatibleData("HodgeSystem: df != 0");
    if (!negligible(dstar_fourier(g_), g_)) throw IncompatibleData("HodgeSystem: d*g != 0");
  }

  int n() const { return f_.n(); }
  int q() const { return q_; }
  int m() const { return m_; }
  const FourierForm<S>& f() const { return f_; }
  const FourierForm<S>& g() const { return g_; }

  bool is_mean_zero() const { return !f_.has_constant_mode() && !g_.has_constant_mode(); }
  HodgeSystem with_m(int m) const { return HodgeSystem(q_, m, f_, g_); }
  HodgeSystem with_data(FourierForm<S> f, FourierForm<S> g) const { return HodgeSystem(q_, m_, std::move(f), std::move(g)); }

private:
  static bool negligible(const FourierForm<S>& image, const FourierForm<S>& source) {
    if constexpr (ScalarTraits<S>::exact) {
      return image.is_zero();
    } else {
      const double scale = (1.0 + source.max_frequency()) * std::sqrt(l2_norm_sq(source));
      return std::sqrt(l2_norm_sq(image)) <= 1e-10 * scale;
    }
  }

  int q_;
  int m_;
  FourierForm<S> f_;
  FourierForm<S> g_;
};

template <class S>
struct Solution {
  FourierForm<S> v;
  SolveReport report;
};

namespace detail {

template <class S>
double residual_size(const FourierForm<S>& residual, const FourierForm<S>& target) {
  const double r = std::sqrt(l2_norm_sq(residual));
  if constexpr (ScalarTraits<S>::exact) {
    return r;
  } else {
    const double t = std::sqrt(l2_norm_sq(target));
    return t > 0.0 ? r / t : r;
  }
}

template <class S>
Solution<S> solve_with_order(const HodgeSystem<S>& sys, int m) {
  if (!sys.is_mean_zero())
    throw NonTrivialKernel("Hodge system data has a constant (k = 0) mode; only mean-zero data is solvable on the torus");
  const FourierForm<S> rhs = dstar_fourier(sys.f()) + d_fourier(sys.g());
  Solution<S> out{box_inverse_power(m + 1, rhs), {}};

  SolveReport& report = out.report;
  report.backend = backend_of<S>();
  report.flag_q1 = sys.q() == 1 && !sys.g().is_zero();
  report.flag_qn1 = sys.q() == sys.n() - 1 && !sys.f().is_zero();

  const FourierForm<S> primal = s_odd_fourier(m, out.v) - sys.f();
  const FourierForm<S> dual = s_odd_star_fourier(m, out.v) - sys.g();
  report.residual_primal = residual_size(primal, sys.f());
  report.residual_dual = residual_size(dual, sys.g());
  if constexpr (ScalarTraits<S>::exact)
    report.failed = !primal.is_zero() || !dual.is_zero();
  else
    report.failed = !(report.residual_primal <= kFloatResidualTolerance && report.residual_dual <= kFloatResidualTolerance);
  return out;
}

} // namespace detail

/// du = f, d*u = g (the m = 0 system with the same data, whatever sys.m() is).
template <class S>
Solution<S> solve_first_order(const HodgeSystem<S>& sys) {
  return detail::solve_with_order(sys, 0);
}

/// v = (box^{m+1})^{-1} (d*f + dg), the unique mean-zero solution.
template <class S>
Solution<S> solve_odd(const HodgeSystem<S>& sys) {
  return detail::solve_with_order(sys, sys.m());
}

/// True iff box^m v = u; exact comparison when rel_tolerance is 0.
template <class S>
bool relate_box_m(int m, const FourierForm<S>& v, const FourierForm<S>& u, double rel_tolerance = 0.0) {
  if (v.n() != u.n() || v.degree() != u.degree()) return false;
  const FourierForm<S> diff = box_apply_power(m, v) - u;
  if (rel_tolerance == 0.0) return diff.is_zero();
  return std::sqrt(l2_norm_sq(diff)) <= rel_tolerance * std::max(1.0, std::sqrt(l2_norm_sq(u)));
}

/// v = X + Y with S X = f, S* X = 0 and S Y = 0, S* Y = g.
template <class S>
std::pair<FourierForm<S>, FourierForm<S>> split_solution(const HodgeSystem<S>& sys) {
  const FourierForm<S> zero_f(sys.n(), sys.q() + 1);
  const FourierForm<S> zero_g(sys.n(), sys.q() - 1);
  auto x = solve_odd(sys.with_data(sys.f(), zero_g));
  auto y = solve_odd(sys.with_data(zero_f, sys.g()));
  return {std::move(x.v), std::move(y.v)};
}

} // namespace oddext
