#pragma once

// Constant-coefficient exterior algebra on R^n with the standard orientation
// and Euclidean metric. Basis covectors are dx^1 ... dx^n (1-based).

#include "errors.hpp"
#include "scalar.hpp"

#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace oddext {

/// Strictly increasing multi-index naming the basis covector dx^I.
class IndexSet {
public:
  IndexSet() = default;
  /// Throws InvalidArgument unless indices are strictly increasing in [1, n].
  IndexSet(int n, std::vector<int> indices);

  static IndexSet empty(int n) { return IndexSet(n, {}); }
  static IndexSet full(int n);

  int n() const { return n_; }
  int degree() const { return static_cast<int>(indices_.size()); }
  std::span<const int> indices() const { return indices_; }
  bool contains(int i) const;
  IndexSet complement() const;
  /// Removes the entry at 0-based position `pos`.
  IndexSet without_position(int pos) const;

  /// All index sets of the given degree in lexicographic order.
  static std::vector<IndexSet> all_of_degree(int n, int q);

  std::string to_string() const;

  friend auto operator<=>(const IndexSet&, const IndexSet&) = default;
  friend bool operator==(const IndexSet&, const IndexSet&) = default;

private:
  int n_ = 0;
  std::vector<int> indices_;
};

struct MergeResult {
  int sign = 0; ///< -1, 0 or +1; 0 iff the sets overlap
  IndexSet merged;
};

/// Sign of the permutation sorting the concatenation (I, J), and I u J.
MergeResult merge_sign(const IndexSet& a, const IndexSet& b);

/// Number of ways to choose q out of n; 0 outside [0, n].
long long binomial(int n, int q);

/// Degree-q form at a single point: a sparse map dx^I -> coefficient.
///
/// Zero coefficients are never stored. Degrees q < 0 or q > n are allowed and
/// carry only the zero form, which keeps d and d* total at the ends of the complex.
template <class S>
class AlgForm {
public:
  using Scalar = S;
  using Traits = ScalarTraits<S>;
  using Terms = std::map<IndexSet, S>;

  AlgForm() = default;
  AlgForm(int n, int q) : n_(n), q_(q) {
    if (n < 0) throw InvalidArgument("AlgForm: negative ambient dimension");
  }

  static AlgForm basis(int n, const IndexSet& index, S coefficient = Traits::one()) {
    AlgForm form(n, index.degree());
    form.add_term(index, std::move(coefficient));
    return form;
  }
  static AlgForm scalar(int n, S value) { return basis(n, IndexSet::empty(n), std::move(value)); }

  int n() const { return n_; }
  int degree() const { return q_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  S coefficient(const IndexSet& index) const {
    auto it = terms_.find(index);
    return it == terms_.end() ? Traits::zero() : it->second;
  }

  /// Accumulates c dx^I, dropping the entry if it cancels.
  void add_term(const IndexSet& index, const S& c) {
    if (index.n() != n_) throw DimensionMismatch("AlgForm::add_term: ambient dimension mismatch");
    if (index.degree() != q_) throw DegreeMismatch("AlgForm::add_term: index degree mismatch");
    if (Traits::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(index, c);
    if (!inserted) {
      it->second += c;
      if (Traits::is_zero(it->second)) terms_.erase(it);
    }
  }

  void set_term(const IndexSet& index, S c) {
    if (index.n() != n_) throw DimensionMismatch("AlgForm::set_term: ambient dimension mismatch");
    if (index.degree() != q_) throw DegreeMismatch("AlgForm::set_term: index degree mismatch");
    if (Traits::is_zero(c))
      terms_.erase(index);
    else
      terms_.insert_or_assign(index, std::move(c));
  }

  AlgForm& operator+=(const AlgForm& other) {
    check_same_shape(other);
    for (const auto& [index, c] : other.terms_) add_term(index, c);
    return *this;
  }
  AlgForm& operator-=(const AlgForm& other) {
    check_same_shape(other);
    for (const auto& [index, c] : other.terms_) add_term(index, -c);
    return *this;
  }
  friend AlgForm operator+(AlgForm a, const AlgForm& b) { return a += b; }
  friend AlgForm operator-(AlgForm a, const AlgForm& b) { return a -= b; }
  friend AlgForm operator-(const AlgForm& a) {
    AlgForm out(a.n_, a.q_);
    for (const auto& [index, c] : a.terms_) out.terms_.emplace(index, -c);
    return out;
  }

  /// Multiplies every coefficient by `factor` (on the left).
  template <class F>
  AlgForm scaled(const F& factor) const {
    AlgForm out(n_, q_);
    for (const auto& [index, c] : terms_) {
      S value = factor * c;
      if (!Traits::is_zero(value)) out.terms_.emplace(index, std::move(value));
    }
    return out;
  }

  friend bool operator==(const AlgForm& a, const AlgForm& b) {
    return a.n_ == b.n_ && a.q_ == b.q_ && a.terms_ == b.terms_;
  }

private:
  void check_same_shape(const AlgForm& other) const {
    if (other.n_ != n_) throw DimensionMismatch("AlgForm: ambient dimension mismatch");
    if (other.q_ != q_) throw DegreeMismatch("AlgForm: degree mismatch");
  }

  int n_ = 0;
  int q_ = 0;
  Terms terms_;
};

/// 1-form sum_j c_j dx^j.
template <class S>
AlgForm<S> one_form(std::span<const S> components) {
  const int n = static_cast<int>(components.size());
  AlgForm<S> out(n, 1);
  for (int j = 0; j < n; ++j) out.add_term(IndexSet(n, {j + 1}), components[j]);
  return out;
}

template <class S>
AlgForm<S> wedge(const AlgForm<S>& a, const AlgForm<S>& b) {
  if (a.n() != b.n()) throw DimensionMismatch("wedge: ambient dimension mismatch");
  AlgForm<S> out(a.n(), a.degree() + b.degree());
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      auto merge = merge_sign(ia, ib);
      if (merge.sign == 0) continue;
      S c = ca * cb;
      out.add_term(merge.merged, merge.sign > 0 ? c : S(-c));
    }
  }
  return out;
}

/// Sign s with dx^I ^ (s dx^{I^c}) = dx^1 ^ ... ^ dx^n.
inline int hodge_sign(const IndexSet& index) {
  int sign = merge_sign(index, index.complement()).sign;
#ifdef ODDEXT_MUTATE_FLIP_STAR
  sign = -sign;
#endif
  return sign;
}

template <class S>
AlgForm<S> hodge_star(const AlgForm<S>& form) {
  const int n = form.n();
  AlgForm<S> out(n, n - form.degree());
  for (const auto& [index, c] : form.terms())
    out.add_term(index.complement(), hodge_sign(index) > 0 ? c : S(-c));
  return out;
}

/// Contraction k _| form with the covector k = (k_1, ..., k_n).
template <class S>
AlgForm<S> interior(std::span<const S> covector, const AlgForm<S>& form) {
  const int n = form.n();
  if (static_cast<int>(covector.size()) != n) throw DimensionMismatch("interior: covector length");
  if (form.degree() < 1) throw DegreeMismatch("interior: degree-0 input");
  AlgForm<S> out(n, form.degree() - 1);
  for (const auto& [index, c] : form.terms()) {
    auto idx = index.indices();
    for (int pos = 0; pos < index.degree(); ++pos) {
      const S& kj = covector[idx[pos] - 1];
      if (ScalarTraits<S>::is_zero(kj)) continue;
      S term = kj * c;
      out.add_term(index.without_position(pos), pos % 2 == 0 ? term : S(-term));
    }
  }
  return out;
}

/// sum_I a_I conj(b_I).
template <class S>
S pointwise_inner(const AlgForm<S>& a, const AlgForm<S>& b) {
  if (a.n() != b.n()) throw DimensionMismatch("pointwise_inner: ambient dimension mismatch");
  if (a.degree() != b.degree()) throw DegreeMismatch("pointwise_inner: degree mismatch");
  S sum = ScalarTraits<S>::zero();
  for (const auto& [index, c] : a.terms()) {
    auto it = b.terms().find(index);
    if (it != b.terms().end()) sum += c * ScalarTraits<S>::conj(it->second);
  }
  return sum;
}

/// Coefficient of dx^1 ^ ... ^ dx^n in an n-form.
template <class S>
S volume_coefficient(const AlgForm<S>& form) {
  if (form.degree() != form.n()) throw DegreeMismatch("volume_coefficient: not a top-degree form");
  return form.coefficient(IndexSet::full(form.n()));
}

} // namespace oddext
