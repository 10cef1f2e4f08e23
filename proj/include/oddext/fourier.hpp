#pragma once

// Trigonometric-polynomial forms on the torus [0, 2pi)^n. Every operator is a
// Fourier multiplier and acts mode by mode on a sparse spectrum:
//
//   d   : a(k) -> ik ^ a(k)
//   d*  : a(k) -> -i k _| a(k)
//   box : a(k) -> |k|^2 a(k)
//
// The scalar type is either GaussRational (exact) or std::complex<double>.

#include "exterior.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <type_traits>
#include <vector>

namespace oddext {

/// Lattice frequency k in Z^n.
struct Mode {
  std::vector<int> k;

  Mode() = default;
  explicit Mode(std::vector<int> components) : k(std::move(components)) {}
  static Mode zero(int n) { return Mode(std::vector<int>(static_cast<std::size_t>(n), 0)); }

  int n() const { return static_cast<int>(k.size()); }
  bool is_zero() const {
    return std::all_of(k.begin(), k.end(), [](int v) { return v == 0; });
  }
  long long norm2() const {
    long long s = 0;
    for (int v : k) s += static_cast<long long>(v) * v;
    return s;
  }
  int max_abs() const {
    int m = 0;
    for (int v : k) m = std::max(m, std::abs(v));
    return m;
  }
  Mode operator-() const {
    Mode out = *this;
    for (int& v : out.k) v = -v;
    return out;
  }

  friend auto operator<=>(const Mode&, const Mode&) = default;
  friend bool operator==(const Mode&, const Mode&) = default;
};

/// sum_k sum_I a_I(k) e^{i k.x} dx^I, stored sparsely (no zero modes kept).
template <class S>
class FourierForm {
public:
  using Scalar = S;
  using Traits = ScalarTraits<S>;
  using Coefficients = AlgForm<S>;
  using Spectrum = std::map<Mode, Coefficients>;

  FourierForm() = default;
  FourierForm(int n, int q) : n_(n), q_(q) {}

  static FourierForm single(const Mode& k, const Coefficients& coefficients) {
    FourierForm out(coefficients.n(), coefficients.degree());
    out.add(k, coefficients);
    return out;
  }
  static FourierForm single(const Mode& k, const IndexSet& index, S c = Traits::one()) {
    return single(k, Coefficients::basis(index.n(), index, std::move(c)));
  }

  int n() const { return n_; }
  int degree() const { return q_; }
  const Spectrum& spectrum() const { return spectrum_; }
  bool is_zero() const { return spectrum_.empty(); }
  std::size_t mode_count() const { return spectrum_.size(); }
  std::size_t term_count() const {
    std::size_t total = 0;
    for (const auto& [k, a] : spectrum_) total += a.size();
    return total;
  }

  bool has_constant_mode() const { return spectrum_.count(Mode::zero(n_)) > 0; }
  int max_frequency() const {
    int m = 0;
    for (const auto& [k, a] : spectrum_) m = std::max(m, k.max_abs());
    return m;
  }

  Coefficients at(const Mode& k) const {
    auto it = spectrum_.find(k);
    return it == spectrum_.end() ? Coefficients(n_, q_) : it->second;
  }
  S coefficient(const Mode& k, const IndexSet& index) const {
    auto it = spectrum_.find(k);
    return it == spectrum_.end() ? Traits::zero() : it->second.coefficient(index);
  }

  void add(const Mode& k, const Coefficients& coefficients) {
    check_mode(k);
    if (coefficients.n() != n_) throw DimensionMismatch("FourierForm::add: ambient dimension mismatch");
    if (coefficients.degree() != q_) throw DegreeMismatch("FourierForm::add: degree mismatch");
    if (coefficients.is_zero()) return;
    auto [it, inserted] = spectrum_.try_emplace(k, coefficients);
    if (!inserted) {
      it->second += coefficients;
      if (it->second.is_zero()) spectrum_.erase(it);
    }
  }
  void add(const Mode& k, const IndexSet& index, const S& c) {
    Coefficients single(n_, q_);
    single.add_term(index, c);
    add(k, single);
  }
  /// Overwrites the coefficient block at k (erasing it if zero).
  void set(const Mode& k, Coefficients coefficients) {
    check_mode(k);
    if (coefficients.degree() != q_) throw DegreeMismatch("FourierForm::set: degree mismatch");
    if (coefficients.is_zero())
      spectrum_.erase(k);
    else
      spectrum_.insert_or_assign(k, std::move(coefficients));
  }

  FourierForm& operator+=(const FourierForm& o) {
    check_shape(o);
    for (const auto& [k, a] : o.spectrum_) add(k, a);
    return *this;
  }
  FourierForm& operator-=(const FourierForm& o) {
    check_shape(o);
    for (const auto& [k, a] : o.spectrum_) add(k, -a);
    return *this;
  }
  friend FourierForm operator+(FourierForm a, const FourierForm& b) { return a += b; }
  friend FourierForm operator-(FourierForm a, const FourierForm& b) { return a -= b; }
  friend FourierForm operator-(const FourierForm& a) { return a.scaled(S(-Traits::one())); }

  FourierForm scaled(const S& factor) const {
    FourierForm out(n_, q_);
    for (const auto& [k, a] : spectrum_) out.set(k, a.scaled(factor));
    return out;
  }

  /// Applies a per-mode map a(k) -> op(k, a(k)) producing a form of degree `out_degree`.
  template <class Op>
  FourierForm<S> map_modes(int out_degree, Op&& op) const {
    FourierForm out(n_, out_degree);
    for (const auto& [k, a] : spectrum_) out.set(k, op(k, a));
    return out;
  }

  friend bool operator==(const FourierForm& a, const FourierForm& b) {
    return a.n_ == b.n_ && a.q_ == b.q_ && a.spectrum_ == b.spectrum_;
  }

private:
  void check_mode(const Mode& k) const {
    if (k.n() != n_) throw DimensionMismatch("FourierForm: mode length differs from ambient dimension");
  }
  void check_shape(const FourierForm& o) const {
    if (o.n_ != n_) throw DimensionMismatch("FourierForm: ambient dimension mismatch");
    if (o.q_ != q_) throw DegreeMismatch("FourierForm: degree mismatch");
  }

  int n_ = 0;
  int q_ = 0;
  Spectrum spectrum_;
};

namespace detail {

template <class S>
std::vector<S> covector(const Mode& k) {
  std::vector<S> out;
  out.reserve(k.k.size());
  for (int v : k.k) out.push_back(ScalarTraits<S>::from_int(v));
  return out;
}

template <class S>
S int_power(S base, long long e) {
  S out = ScalarTraits<S>::one();
  for (long long r = 0; r < e; ++r) out *= base;
  return out;
}

} // namespace detail

template <class S>
FourierForm<S> d_fourier(const FourierForm<S>& form) {
  const S i = ScalarTraits<S>::imag_unit();
  return form.map_modes(form.degree() + 1, [&](const Mode& k, const AlgForm<S>& a) {
    std::vector<S> ik = detail::covector<S>(k);
    for (auto& c : ik) c = i * c;
    return wedge(one_form<S>(ik), a);
  });
}

template <class S>
FourierForm<S> dstar_fourier(const FourierForm<S>& form) {
  if (form.degree() < 1) return FourierForm<S>(form.n(), form.degree() - 1);
  const S minus_i = -ScalarTraits<S>::imag_unit();
  return form.map_modes(form.degree() - 1, [&](const Mode& k, const AlgForm<S>& a) {
    const std::vector<S> kv = detail::covector<S>(k);
    return interior<S>(kv, a).scaled(minus_i);
  });
}

template <class S>
FourierForm<S> box_apply(const FourierForm<S>& form) {
  return form.map_modes(form.degree(), [](const Mode& k, const AlgForm<S>& a) {
    return a.scaled(ScalarTraits<S>::from_int(k.norm2()));
  });
}

template <class S>
FourierForm<S> box_apply_power(int s, FourierForm<S> form) {
  for (int r = 0; r < s; ++r) form = box_apply(form);
  return form;
}

/// (box^s)^{-1} on mean-zero forms: divides mode k by |k|^{2s}.
/// Throws NonTrivialKernel when a k = 0 mode is present.
template <class S>
FourierForm<S> box_inverse_power(int s, const FourierForm<S>& form) {
  if (s < 1) throw InvalidArgument("box_inverse_power: s must be positive");
  if (form.has_constant_mode())
    throw NonTrivialKernel("box_inverse_power: constant (k = 0) mode lies in the kernel of the Hodge Laplacian");
  return form.map_modes(form.degree(), [s](const Mode& k, const AlgForm<S>& a) {
    const S denom = detail::int_power(ScalarTraits<S>::from_int(k.norm2()), s);
    return a.scaled(ScalarTraits<S>::one() / denom);
  });
}

/// d (d* d)^m.
template <class S>
FourierForm<S> s_odd_fourier(int m, const FourierForm<S>& form) {
  if (m < 0) throw InvalidArgument("s_odd_fourier: m must be nonnegative");
  FourierForm<S> current = form;
  for (int r = 0; r < m; ++r) current = dstar_fourier(d_fourier(current));
  return d_fourier(current);
}

/// (d* d)^m d*.
template <class S>
FourierForm<S> s_odd_star_fourier(int m, const FourierForm<S>& form) {
  if (m < 0) throw InvalidArgument("s_odd_star_fourier: m must be nonnegative");
  FourierForm<S> current = dstar_fourier(form);
  for (int r = 0; r < m; ++r) current = dstar_fourier(d_fourier(current));
  return current;
}

/// L^2 inner product under the normalized Haar measure (total mass 1).
template <class S>
S l2_inner(const FourierForm<S>& a, const FourierForm<S>& b) {
  if (a.n() != b.n()) throw DimensionMismatch("l2_inner: ambient dimension mismatch");
  if (a.degree() != b.degree()) throw DegreeMismatch("l2_inner: degree mismatch");
  S sum = ScalarTraits<S>::zero();
  for (const auto& [k, coeffs] : a.spectrum()) {
    auto it = b.spectrum().find(k);
    if (it != b.spectrum().end()) sum += pointwise_inner(coeffs, it->second);
  }
  return sum;
}

/// ||form||_2^2 as a double.
template <class S>
double l2_norm_sq(const FourierForm<S>& form) {
  double sum = 0.0;
  for (const auto& [k, coeffs] : form.spectrum())
    for (const auto& [index, c] : coeffs.terms()) sum += ScalarTraits<S>::abs2(c);
  return sum;
}

/// D^beta: mode k is multiplied by prod_j (i k_j)^{beta_j}.
template <class S>
FourierForm<S> deriv_multi(const std::vector<int>& beta, const FourierForm<S>& form) {
  if (static_cast<int>(beta.size()) != form.n()) throw DimensionMismatch("deriv_multi: multi-index length");
  for (int b : beta)
    if (b < 0) throw InvalidArgument("deriv_multi: negative multi-index entry");
  const S i = ScalarTraits<S>::imag_unit();
  return form.map_modes(form.degree(), [&](const Mode& k, const AlgForm<S>& a) {
    S symbol = ScalarTraits<S>::one();
    for (std::size_t j = 0; j < beta.size(); ++j)
      symbol *= detail::int_power(S(i * ScalarTraits<S>::from_int(k.k[j])), beta[j]);
    return a.scaled(symbol);
  });
}

/// Hodge star applied mode by mode.
template <class S>
FourierForm<S> hodge_star_form(const FourierForm<S>& form) {
  return form.map_modes(form.n() - form.degree(), [](const Mode&, const AlgForm<S>& a) { return hodge_star(a); });
}

/// Torus-preserving isometry x -> P x + pi * t where (P x)_i = sign_i x_{perm_i}.
struct LatticeIsometry {
  std::vector<int> perm;  ///< 1-based permutation of 1..n
  std::vector<int> signs; ///< +-1 per row
  std::vector<Rational> translation_over_pi;

  static LatticeIsometry identity(int n) {
    LatticeIsometry out;
    for (int i = 1; i <= n; ++i) out.perm.push_back(i);
    out.signs.assign(static_cast<std::size_t>(n), 1);
    out.translation_over_pi.assign(static_cast<std::size_t>(n), Rational(0));
    return out;
  }
  int n() const { return static_cast<int>(perm.size()); }
  void validate() const;
};

namespace detail {

/// e^{i pi theta} in the scalar ring; exact rings need 2 theta in Z.
template <class S>
S phase(const Rational& theta) {
  const Rational doubled = theta * 2;
  if (boost::multiprecision::denominator(doubled) == 1) {
    // i^{2 theta}
    long quarter = static_cast<long>(boost::multiprecision::numerator(doubled) % 4);
    if (quarter < 0) quarter += 4;
    S out = ScalarTraits<S>::one();
    for (long r = 0; r < quarter; ++r) out *= ScalarTraits<S>::imag_unit();
    return out;
  }
  if constexpr (ScalarTraits<S>::exact) {
    throw TranslationNotExact("pullback_lattice_isometry: phase e^{i pi " + format_rational(theta) +
                              "} is not a Gaussian rational");
  } else {
    return std::polar(1.0, 3.14159265358979323846 * to_double(theta));
  }
}

} // namespace detail

template <class S>
FourierForm<S> pullback_lattice_isometry(const LatticeIsometry& psi, const FourierForm<S>& form) {
  const int n = form.n();
  if (psi.n() != n) throw DimensionMismatch("pullback_lattice_isometry: dimension mismatch");
  psi.validate();

  // psi^* dx^i = sign_i dx^{perm_i}
  std::vector<AlgForm<S>> differentials;
  for (int i = 0; i < n; ++i)
    differentials.push_back(AlgForm<S>::basis(n, IndexSet(n, {psi.perm[i]}), ScalarTraits<S>::from_int(psi.signs[i])));

  FourierForm<S> out(n, form.degree());
  for (const auto& [k, coeffs] : form.spectrum()) {
    // e^{ik.(Px + a)} = e^{ik.a} e^{i k'.x} with k'_{perm_i} = sign_i k_i.
    Mode image = Mode::zero(n);
    Rational theta(0);
    for (int i = 0; i < n; ++i) {
      image.k[psi.perm[i] - 1] = psi.signs[i] * k.k[i];
      theta += psi.translation_over_pi[i] * k.k[i];
    }
    const S factor = detail::phase<S>(theta);
    AlgForm<S> pulled(n, form.degree());
    for (const auto& [index, c] : coeffs.terms()) {
      AlgForm<S> basis = AlgForm<S>::scalar(n, factor * c);
      for (int i : index.indices()) basis = wedge(basis, differentials[i - 1]);
      pulled += basis;
    }
    out.add(image, pulled);
  }
  return out;
}

inline void LatticeIsometry::validate() const {
  const int dim = n();
  if (static_cast<int>(signs.size()) != dim || static_cast<int>(translation_over_pi.size()) != dim)
    throw InvalidArgument("LatticeIsometry: inconsistent sizes");
  std::vector<bool> seen(static_cast<std::size_t>(dim), false);
  for (int i = 0; i < dim; ++i) {
    if (perm[i] < 1 || perm[i] > dim || seen[perm[i] - 1]) throw InvalidArgument("LatticeIsometry: not a permutation");
    seen[perm[i] - 1] = true;
    if (signs[i] != 1 && signs[i] != -1) throw InvalidArgument("LatticeIsometry: signs must be +-1");
  }
}

/// True iff a(-k) = conj(a(k)) for every k, i.e. the form is real-valued.
template <class S>
bool is_real_valued(const FourierForm<S>& form, double tolerance = 0.0) {
  for (const auto& [k, coeffs] : form.spectrum()) {
    const AlgForm<S> mirror = form.at(-k);
    AlgForm<S> conj_mirror(form.n(), form.degree());
    for (const auto& [index, c] : mirror.terms()) conj_mirror.add_term(index, ScalarTraits<S>::conj(c));
    const AlgForm<S> diff = coeffs - conj_mirror;
    if constexpr (ScalarTraits<S>::exact) {
      if (!diff.is_zero()) return false;
    } else {
      for (const auto& [index, c] : diff.terms())
        if (std::abs(c) > tolerance) return false;
    }
  }
  return true;
}

/// Exact-to-float conversion of a Gaussian-rational form.
FourierForm<std::complex<double>> to_complex(const FourierForm<GaussRational>& form);

} // namespace oddext
