#pragma once

// Seeded generators for band-limited random forms. Output depends only on the
// seed: no std:: distributions are used, so the streams are identical across
// standard library implementations.

#include "fourier.hpp"
#include "poly_backend.hpp"

#include <cstdint>
#include <random>

namespace oddext {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of trial `index` in a batch seeded with `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Uniform integer in [lo, hi].
  long uniform_int(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(engine_() % span);
  }
  bool bernoulli(double p) { return uniform01() < p; }

private:
  std::mt19937_64 engine_;
};

struct RandomFormOptions {
  /// Expected fraction of populated (mode, index set) slots.
  double density = 0.25;
  /// Conjugate-symmetric spectrum (real-valued form).
  bool real_valued = true;
  /// Largest |numerator| of exact coefficients.
  int exact_amplitude = 3;
};

template <class S>
S random_scalar(Rng& rng, const RandomFormOptions& options);

template <>
inline GaussRational random_scalar<GaussRational>(Rng& rng, const RandomFormOptions& options) {
  const long a = options.exact_amplitude;
  Rational re(rng.uniform_int(-a, a), rng.uniform_int(1, 2));
  Rational im(rng.uniform_int(-a, a), rng.uniform_int(1, 2));
  return {re, im};
}

template <>
inline std::complex<double> random_scalar<std::complex<double>>(Rng& rng, const RandomFormOptions&) {
  const double re = rng.uniform(-1.0, 1.0);
  const double im = rng.uniform(-1.0, 1.0);
  return {re, im};
}

namespace detail {

inline bool first_nonzero_positive(const Mode& k) {
  for (int v : k.k)
    if (v != 0) return v > 0;
  return false;
}

/// Calls fn(mode) for every k in [-B, B]^n, lexicographically.
template <class Fn>
void for_each_mode(int n, int bandwidth, Fn&& fn) {
  Mode k(std::vector<int>(static_cast<std::size_t>(n), -bandwidth));
  while (true) {
    fn(k);
    int p = n - 1;
    while (p >= 0 && k.k[p] == bandwidth) k.k[p--] = -bandwidth;
    if (p < 0) return;
    ++k.k[p];
  }
}

} // namespace detail

/// Random mean-zero q-form with |k_j| <= bandwidth. Never returns the zero
/// form when 0 <= q <= n and bandwidth >= 1.
template <class S>
FourierForm<S> random_fourier_form(int n, int q, int bandwidth, const RandomFormOptions& options, Rng& rng) {
  if (bandwidth < 1) throw InvalidArgument("random_fourier_form: bandwidth must be >= 1");
  FourierForm<S> out(n, q);
  if (q < 0 || q > n) return out;
  const auto slots = IndexSet::all_of_degree(n, q);

  auto populate = [&](const Mode& k, const IndexSet& index) {
    S c = random_scalar<S>(rng, options);
    while (ScalarTraits<S>::is_zero(c)) c = random_scalar<S>(rng, options);
    out.add(k, index, c);
    if (options.real_valued) out.add(-k, index, ScalarTraits<S>::conj(c));
  };

  detail::for_each_mode(n, bandwidth, [&](const Mode& k) {
    if (k.is_zero()) return;
    if (options.real_valued && !detail::first_nonzero_positive(k)) return;
    for (const auto& index : slots)
      if (rng.bernoulli(options.density)) populate(k, index);
  });

  if (out.is_zero()) {
    Mode k = Mode::zero(n);
    k.k[rng.uniform_int(0, n - 1)] = static_cast<int>(rng.uniform_int(1, bandwidth));
    populate(k, slots[static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(slots.size()) - 1))]);
  }
  return out;
}

/// f = d a for a random potential a of degree `degree - 1`; df = 0 and f is mean-zero.
template <class S>
FourierForm<S> random_closed(int n, int degree, int bandwidth, const RandomFormOptions& options, Rng& rng) {
  if (degree < 1 || degree > n) return FourierForm<S>(n, degree);
  for (int attempt = 0; attempt < 64; ++attempt) {
    FourierForm<S> f = d_fourier(random_fourier_form<S>(n, degree - 1, bandwidth, options, rng));
    if (!f.is_zero()) return f;
  }
  throw Error("random_closed: failed to draw a nonzero closed form");
}

/// g = d* b for a random potential b of degree `degree + 1`; d*g = 0 and g is mean-zero.
template <class S>
FourierForm<S> random_coclosed(int n, int degree, int bandwidth, const RandomFormOptions& options, Rng& rng) {
  if (degree < 0 || degree > n - 1) return FourierForm<S>(n, degree);
  for (int attempt = 0; attempt < 64; ++attempt) {
    FourierForm<S> g = dstar_fourier(random_fourier_form<S>(n, degree + 1, bandwidth, options, rng));
    if (!g.is_zero()) return g;
  }
  throw Error("random_coclosed: failed to draw a nonzero coclosed form");
}

/// Seeded convenience overloads.
template <class S>
FourierForm<S> random_closed(int n, int degree, int bandwidth, double density, std::uint64_t seed) {
  Rng rng(seed);
  RandomFormOptions options;
  options.density = density;
  return random_closed<S>(n, degree, bandwidth, options, rng);
}

template <class S>
FourierForm<S> random_coclosed(int n, int degree, int bandwidth, double density, std::uint64_t seed) {
  Rng rng(seed);
  RandomFormOptions options;
  options.density = density;
  return random_coclosed<S>(n, degree, bandwidth, options, rng);
}

struct RandomPolyOptions {
  int max_degree = 4;
  int monomials_per_component = 2;
  double component_density = 0.6;
  int amplitude = 4;
};

/// Random polynomial q-form with small rational coefficients; never zero for 0 <= q <= n.
PolyForm random_poly_form(int n, int q, const RandomPolyOptions& options, Rng& rng);

/// Random rational isometry: signed permutation composed with Pythagorean
/// rotations, plus a rational translation.
AffineMap random_rational_isometry(int n, Rng& rng);

} // namespace oddext
