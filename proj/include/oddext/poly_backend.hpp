#pragma once

// Exact differential calculus for polynomial-coefficient forms on R^n.

#include "exterior.hpp"
#include "polynomial.hpp"

#include <vector>

namespace oddext {

using PolyForm = AlgForm<Polynomial>;

/// x -> A x + b with rational entries; A must be invertible.
class AffineMap {
public:
  using Matrix = std::vector<std::vector<Rational>>;

  /// Throws InvalidArgument if A is not square n x n, b has the wrong length,
  /// or A is singular.
  AffineMap(Matrix a, std::vector<Rational> b);

  static AffineMap identity(int n);
  /// x_i -> sign_i * x_{perm_i} + b_i; perm is 1-based.
  static AffineMap signed_permutation(const std::vector<int>& perm, const std::vector<int>& signs,
                                      std::vector<Rational> offset = {});
  /// Rotation by the Pythagorean triple (a, b, c) in the (i, j) coordinate plane.
  static AffineMap pythagorean_rotation(int n, int i, int j, long a, long b, long c,
                                        std::vector<Rational> offset = {});
  static AffineMap diagonal(const std::vector<Rational>& scales, std::vector<Rational> offset = {});

  int n() const { return static_cast<int>(b_.size()); }
  const Matrix& matrix() const { return a_; }
  const std::vector<Rational>& offset() const { return b_; }
  /// True iff A^T A = I.
  bool is_isometry() const { return isometry_; }

  /// Composition (this o other)(x) = A(A' x + b') + b.
  AffineMap compose(const AffineMap& other) const;

private:
  Matrix a_;
  std::vector<Rational> b_;
  bool isometry_ = false;
};

PolyForm d_poly(const PolyForm& form);
/// d* = -sum_j d_j (e_j _| form).
PolyForm dstar_poly(const PolyForm& form);
/// d (d* d)^m.
PolyForm s_odd_poly(int m, const PolyForm& form);
/// (d* d)^m d*.
PolyForm s_odd_star_poly(int m, const PolyForm& form);
/// dd* + d*d.
PolyForm box_poly(const PolyForm& form);
/// -sum_j d_j^2 applied to every coefficient.
PolyForm neg_laplacian_poly(const PolyForm& form);

PolyForm pullback_affine(const AffineMap& map, const PolyForm& form);

} // namespace oddext
