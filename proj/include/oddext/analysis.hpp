#pragma once

// Float-backend numerics: grid quadrature for L^p and W^{2m,r} norms of
// band-limited forms, and seeded experiment drivers for the div-curl ratio
// ||v||_{W^{2m,r}} / (||f||_1 + ||g||_1) and for the L^1-duality pairings.
//
// Norm conventions (recorded in every report):
//   * all norms use the normalized measure on [0, 2pi)^n;
//   * the pointwise size of a form is the Euclidean norm of its coefficients;
//   * ||v||_{W^{k,r}} = sum over |beta| <= k of ||D^beta v||_{L^r};
//   * ||grad h||_{L^p} is the L^p norm of the pointwise l2 norm over all
//     (coordinate derivative, component) pairs.

#include "fourier.hpp"
#include "hodge_solver.hpp"

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace oddext {

using Complex = std::complex<double>;
using ComplexForm = FourierForm<Complex>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
/// Minimum oversampling over the Nyquist size used for p outside {2, inf}.
inline constexpr int kQuadratureOversampling = 4;

/// Pointwise samples of a form on the uniform grid x_j = 2 pi j / N.
struct GridSample {
  int n = 0;
  int points_per_axis = 0;
  int oversampling = 1;
  std::vector<IndexSet> components;
  /// values[c][linear index], row-major with the last coordinate fastest.
  std::vector<std::vector<Complex>> values;

  std::size_t point_count() const;
  AlgForm<Complex> at(std::span<const int> point) const;
};

/// Smallest N free of aliasing: 2 max|k_j| + 1.
int nyquist_size(const ComplexForm& form);
/// Grid size used for an L^p norm: Nyquist for p in {2, inf}; otherwise the
/// smallest 2^a 3^b size that is at least 4 times Nyquist.
int quadrature_size(const ComplexForm& form, double p);

/// Throws UnderSampled if N < nyquist_size(form).
GridSample sample_grid(const ComplexForm& form, int points_per_axis);

/// (mean of |form(x)|^p)^{1/p}; p = kInfinity gives the max.
double lp_norm(const GridSample& sample, double p);
/// Samples on quadrature_size(form, p) points per axis.
double lp_norm(const ComplexForm& form, double p);

/// sum_{|beta| <= order} ||D^beta form||_{L^r}.
double sobolev_norm(const ComplexForm& form, int order, double r);

/// ||grad h||_{L^p}.
double gradient_lp_norm(const ComplexForm& form, double p);
/// sum_j ||d_j h||_2^2 computed spectrally.
double gradient_l2_sq_spectral(const ComplexForm& form);

/// All multi-indices beta in N^n with |beta| = order.
std::vector<std::vector<int>> multi_indices(int n, int order);

enum class PairingVariant { LS, LL };
/// `d` pairs closed f against h and uses d*h in the LL bound;
/// `dstar` pairs coclosed g against h and uses dh.
enum class PairingSide { d, dstar };

const char* variant_name(PairingVariant v);
const char* side_name(PairingSide s);

struct PairingFields {
  PairingVariant variant = PairingVariant::LS;
  PairingSide side = PairingSide::d;
  double pairing_abs = 0.0;   ///< |<f, h>|
  double norm_ll_h_ln = 0.0;  ///< ||d*h||_{L^n} (side d) or ||dh||_{L^n} (side dstar)
  double norm_grad_h_ln = 0.0; ///< ||grad h||_{L^n}
  double rhs_ls = 0.0;
  double rhs_ll = 0.0;
};

struct ExperimentRecord {
  std::uint64_t seed = 0;
  int n = 0;
  int q = 0;
  int m = 0;
  int bandwidth = 0;
  double norm_f_l1 = 0.0;
  double norm_g_l1 = 0.0;
  double norm_v_sobolev = 0.0;
  double ratio = 0.0;
  bool flag_q1 = false;
  bool flag_qn1 = false;
  /// box^m v = u against the first-order solve (float tolerance 1e-9).
  bool box_relation = true;
  double residual = 0.0;
  /// Non-empty when the trial's solve threw; the batch continues.
  std::string error;
  std::optional<PairingFields> pairing;

  bool ok() const { return error.empty(); }
};

struct ExperimentOptions {
  double density = 0.25;
  /// Zero g when q = 1 and f when q = n - 1, so no trial is exceptional.
  bool avoid_exceptional = false;
};

/// Exponent r = n / (n - 1) of the div-curl estimate.
double divcurl_exponent(int n);

/// Solves one system and fills the ratio fields of a record.
ExperimentRecord evaluate_system(const HodgeSystem<Complex>& sys, std::uint64_t seed, int bandwidth);

std::vector<ExperimentRecord> divcurl_ratio_experiment(int n, int q, int m, int bandwidth, int trials,
                                                       std::uint64_t seed, const ExperimentOptions& options = {});

/// Degree range: 0 <= q <= n-2 for side d, 2 <= q <= n for side dstar.
std::vector<ExperimentRecord> pairing_experiment(int n, int q, int trials, std::uint64_t seed, PairingVariant variant,
                                                 PairingSide side = PairingSide::d, int bandwidth = 4,
                                                 const ExperimentOptions& options = {});

/// A pair for which the LL bound forces <f, h> = 0: f = da with h = d*b
/// (side d), or g = d*b with h = dc (side dstar).
struct NullPairing {
  double pairing_abs = 0.0;
  double norm_f_l2 = 0.0;
  double norm_h_l2 = 0.0;
  double norm_ll_h_l2 = 0.0;
};
NullPairing constructed_null_pairing(int n, int q, PairingSide side, int bandwidth, std::uint64_t seed);

/// Greedy random search for large div-curl ratios; entry s is the best record after s+1 evaluations.
std::vector<ExperimentRecord> hillclimb_extremizer(int n, int q, int m, int bandwidth, int steps, std::uint64_t seed,
                                                   const ExperimentOptions& options = {});

struct RatioSummary {
  std::size_t count = 0;
  std::size_t errors = 0;
  std::size_t exceptional = 0;
  double max = 0.0;
  double median = 0.0;
  double q90 = 0.0;
  double q99 = 0.0;
};
RatioSummary summarize(std::span<const ExperimentRecord> records);

inline constexpr const char* kRatioCsvHeader =
    "seed,n,q,m,bandwidth,norm_f_l1,norm_g_l1,norm_v_sobolev,ratio,flag_q1,flag_qn1";

/// One row per record under kRatioCsvHeader; pairing records append
/// side,variant,pairing_abs,norm_ll_h_ln,norm_grad_h_ln,rhs_ls,rhs_ll.
void write_csv(std::span<const ExperimentRecord> records, std::ostream& out);
void write_json(std::span<const ExperimentRecord> records, std::ostream& out);

} // namespace oddext
