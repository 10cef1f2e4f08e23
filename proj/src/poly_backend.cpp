#include "oddext/poly_backend.hpp"

namespace oddext {

namespace {

bool is_invertible(AffineMap::Matrix a) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return false;
    std::swap(a[pivot], a[col]);
    for (std::size_t row = col + 1; row < n; ++row) {
      if (a[row][col] == 0) continue;
      const Rational factor = a[row][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[row][c] -= factor * a[col][c];
    }
  }
  return true;
}

std::vector<Rational> zero_offset_if_empty(std::vector<Rational> offset, int n) {
  if (offset.empty()) offset.assign(static_cast<std::size_t>(n), Rational(0));
  return offset;
}

} // namespace

AffineMap::AffineMap(Matrix a, std::vector<Rational> b) : a_(std::move(a)), b_(std::move(b)) {
  const std::size_t n = b_.size();
  if (a_.size() != n) throw InvalidArgument("AffineMap: matrix/offset size mismatch");
  for (const auto& row : a_)
    if (row.size() != n) throw InvalidArgument("AffineMap: matrix not square");
  if (!is_invertible(a_)) throw InvalidArgument("AffineMap: singular matrix");
  isometry_ = true;
  for (std::size_t i = 0; i < n && isometry_; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational dot(0);
      for (std::size_t r = 0; r < n; ++r) dot += a_[r][i] * a_[r][j];
      if (dot != (i == j ? 1 : 0)) {
        isometry_ = false;
        break;
      }
    }
  }
}

AffineMap AffineMap::identity(int n) {
  Matrix a(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) a[i][i] = 1;
  return AffineMap(std::move(a), std::vector<Rational>(n, Rational(0)));
}

AffineMap AffineMap::signed_permutation(const std::vector<int>& perm, const std::vector<int>& signs,
                                        std::vector<Rational> offset) {
  const int n = static_cast<int>(perm.size());
  if (static_cast<int>(signs.size()) != n) throw InvalidArgument("signed_permutation: sign count");
  Matrix a(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) {
    if (perm[i] < 1 || perm[i] > n) throw InvalidArgument("signed_permutation: entry outside [1, n]");
    a[i][perm[i] - 1] = signs[i] < 0 ? -1 : 1;
  }
  return AffineMap(std::move(a), zero_offset_if_empty(std::move(offset), n));
}

AffineMap AffineMap::pythagorean_rotation(int n, int i, int j, long a, long b, long c,
                                          std::vector<Rational> offset) {
  if (a * a + b * b != c * c || c == 0) throw InvalidArgument("pythagorean_rotation: not a Pythagorean triple");
  if (i < 1 || j < 1 || i > n || j > n || i == j) throw InvalidArgument("pythagorean_rotation: bad plane");
  AffineMap base = identity(n);
  Matrix m = base.a_;
  const Rational cosine(a, c), sine(b, c);
  m[i - 1][i - 1] = cosine;
  m[i - 1][j - 1] = -sine;
  m[j - 1][i - 1] = sine;
  m[j - 1][j - 1] = cosine;
  return AffineMap(std::move(m), zero_offset_if_empty(std::move(offset), n));
}

AffineMap AffineMap::diagonal(const std::vector<Rational>& scales, std::vector<Rational> offset) {
  const int n = static_cast<int>(scales.size());
  Matrix a(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) a[i][i] = scales[i];
  return AffineMap(std::move(a), zero_offset_if_empty(std::move(offset), n));
}

AffineMap AffineMap::compose(const AffineMap& other) const {
  const int dim = n();
  if (other.n() != dim) throw DimensionMismatch("AffineMap::compose: dimension mismatch");
  Matrix a(dim, std::vector<Rational>(dim, Rational(0)));
  std::vector<Rational> b = b_;
  for (int i = 0; i < dim; ++i) {
    for (int r = 0; r < dim; ++r) {
      b[i] += a_[i][r] * other.b_[r];
      for (int j = 0; j < dim; ++j) a[i][j] += a_[i][r] * other.a_[r][j];
    }
  }
  return AffineMap(std::move(a), std::move(b));
}

PolyForm d_poly(const PolyForm& form) {
  const int n = form.n();
  PolyForm out(n, form.degree() + 1);
  for (const auto& [index, coeff] : form.terms()) {
    for (int j = 1; j <= n; ++j) {
      if (index.contains(j)) continue;
      Polynomial dj = coeff.derivative(j);
      if (dj.is_zero()) continue;
      auto merge = merge_sign(IndexSet(n, {j}), index);
      out.add_term(merge.merged, merge.sign > 0 ? dj : -dj);
    }
  }
  return out;
}

PolyForm dstar_poly(const PolyForm& form) {
  const int n = form.n();
  PolyForm out(n, form.degree() - 1);
  if (form.degree() < 1) return out;
  std::vector<Polynomial> unit(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    std::fill(unit.begin(), unit.end(), Polynomial());
    unit[j - 1] = Polynomial(1);
    const PolyForm contracted = interior<Polynomial>(unit, form);
    for (const auto& [index, coeff] : contracted.terms()) out.add_term(index, -coeff.derivative(j));
  }
  return out;
}

PolyForm s_odd_poly(int m, const PolyForm& form) {
  if (m < 0) throw InvalidArgument("s_odd_poly: m must be nonnegative");
  PolyForm current = form;
  for (int r = 0; r < m; ++r) current = dstar_poly(d_poly(current));
  return d_poly(current);
}

PolyForm s_odd_star_poly(int m, const PolyForm& form) {
  if (m < 0) throw InvalidArgument("s_odd_star_poly: m must be nonnegative");
  PolyForm current = dstar_poly(form);
  for (int r = 0; r < m; ++r) current = dstar_poly(d_poly(current));
  return current;
}

PolyForm box_poly(const PolyForm& form) { return d_poly(dstar_poly(form)) + dstar_poly(d_poly(form)); }

PolyForm neg_laplacian_poly(const PolyForm& form) {
  PolyForm out(form.n(), form.degree());
  for (const auto& [index, coeff] : form.terms())
    for (int j = 1; j <= form.n(); ++j) out.add_term(index, -coeff.derivative(j).derivative(j));
  return out;
}

PolyForm pullback_affine(const AffineMap& map, const PolyForm& form) {
  const int n = form.n();
  if (map.n() != n) throw DimensionMismatch("pullback_affine: dimension mismatch");
  const auto& a = map.matrix();
  const auto& b = map.offset();

  // x_i -> sum_j A_ij x_j + b_i, and dx^i -> sum_j A_ij dx^j.
  std::vector<Polynomial> images(static_cast<std::size_t>(n));
  std::vector<PolyForm> differentials;
  differentials.reserve(n);
  for (int i = 0; i < n; ++i) {
    Polynomial image(b[i]);
    std::vector<Polynomial> row(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      image += a[i][j] * Polynomial::variable(j + 1);
      row[j] = Polynomial(a[i][j]);
    }
    images[i] = std::move(image);
    differentials.push_back(one_form<Polynomial>(row));
  }

  PolyForm out(n, form.degree());
  for (const auto& [index, coeff] : form.terms()) {
    PolyForm basis = PolyForm::scalar(n, coeff.substitute(images));
    for (int i : index.indices()) basis = wedge(basis, differentials[i - 1]);
    out += basis;
  }
  return out;
}

} // namespace oddext
