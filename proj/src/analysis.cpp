#include "oddext/analysis.hpp"

#include "oddext/random_forms.hpp"

#include <fftw3.h>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>

namespace oddext {

namespace {

/// In-place backward (e^{+i k.x}) transform on an N^n grid, plan cached per thread.
class GridTransform {
public:
  GridTransform(int n, int points_per_axis) : n_(n), points_(points_per_axis), size_(1) {
    for (int j = 0; j < n; ++j) size_ *= static_cast<std::size_t>(points_per_axis);
    buffer_ = fftw_alloc_complex(size_);
    std::vector<int> dims(static_cast<std::size_t>(n), points_per_axis);
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_ = fftw_plan_dft(n, dims.data(), buffer_, buffer_, FFTW_BACKWARD, FFTW_ESTIMATE);
    // Line transforms along each axis: all lines sharing the outer coordinates.
    int inner = 1;
    for (int axis = n - 1; axis >= 0; --axis) {
      int length = points_per_axis;
      line_plans_.insert(line_plans_.begin(),
                         fftw_plan_many_dft(1, &length, inner, buffer_, nullptr, inner, 1, buffer_, nullptr, inner, 1,
                                            FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED));
      inner *= points_per_axis;
    }
  }
  GridTransform(const GridTransform&) = delete;
  GridTransform& operator=(const GridTransform&) = delete;
  ~GridTransform() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan_);
    for (auto* p : line_plans_) fftw_destroy_plan(p);
    fftw_free(buffer_);
  }

  static GridTransform& get(int n, int points_per_axis) {
    thread_local std::map<std::pair<int, int>, std::unique_ptr<GridTransform>> cache;
    auto& slot = cache[{n, points_per_axis}];
    if (!slot) slot = std::make_unique<GridTransform>(n, points_per_axis);
    return *slot;
  }

  std::size_t size() const { return size_; }
  Complex* data() { return reinterpret_cast<Complex*>(buffer_); }
  /// Transforms a buffer whose spectrum lives in |k_j| <= band. Axes are
  /// processed last to first, skipping lines that are still identically zero.
  void execute(int band) {
    const int width = 2 * band + 1;
    if (n_ < 2 || 2 * width > points_) {
      fftw_execute(plan_);
      return;
    }
    std::vector<int> wrapped;
    for (int k = -band; k <= band; ++k) wrapped.push_back(k < 0 ? k + points_ : k);
    std::vector<std::size_t> stride(static_cast<std::size_t>(n_), 1);
    for (int axis = n_ - 2; axis >= 0; --axis) stride[axis] = stride[axis + 1] * static_cast<std::size_t>(points_);

    for (int axis = n_ - 1; axis >= 0; --axis) {
      // Outer coordinates 0..axis-1 range over the band.
      std::vector<int> outer(static_cast<std::size_t>(axis), 0);
      while (true) {
        std::size_t offset = 0;
        for (int c = 0; c < axis; ++c) offset += static_cast<std::size_t>(wrapped[outer[c]]) * stride[c];
        fftw_execute_dft(line_plans_[axis], buffer_ + offset, buffer_ + offset);
        int c = axis - 1;
        while (c >= 0 && outer[c] == width - 1) outer[c--] = 0;
        if (c < 0) break;
        ++outer[c];
      }
    }
  }

private:
  static std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
  }

  int n_;
  int points_;
  std::size_t size_;
  fftw_complex* buffer_ = nullptr;
  fftw_plan plan_ = nullptr;
  std::vector<fftw_plan> line_plans_;
};

std::size_t grid_position(const Mode& k, int points_per_axis) {
  std::size_t pos = 0;
  for (int v : k.k) {
    int wrapped = v % points_per_axis;
    if (wrapped < 0) wrapped += points_per_axis;
    pos = pos * static_cast<std::size_t>(points_per_axis) + static_cast<std::size_t>(wrapped);
  }
  return pos;
}

std::set<IndexSet> components_of(const ComplexForm& form) {
  std::set<IndexSet> out;
  for (const auto& [k, coeffs] : form.spectrum())
    for (const auto& [index, c] : coeffs.terms()) out.insert(index);
  return out;
}

/// Evaluates component `index` of `form` on the grid into the transform buffer.
void evaluate_component(const ComplexForm& form, const IndexSet& index, GridTransform& fft, int points_per_axis) {
  Complex* data = fft.data();
  std::fill(data, data + fft.size(), Complex{});
  for (const auto& [k, coeffs] : form.spectrum()) {
    auto it = coeffs.terms().find(index);
    if (it != coeffs.terms().end()) data[grid_position(k, points_per_axis)] += it->second;
  }
  fft.execute(form.max_frequency());
}

void check_sampling(const ComplexForm& form, int points_per_axis) {
  if (points_per_axis < nyquist_size(form))
    throw UnderSampled("sample_grid: " + std::to_string(points_per_axis) + " points per axis, need at least " +
                       std::to_string(nyquist_size(form)));
}

/// Per-thread grid accumulators, reused to avoid reallocating large buffers.
std::vector<double>& scratch(std::size_t slot) {
  thread_local std::array<std::vector<double>, 2> pool;
  return pool.at(slot);
}

struct PackedField {
  const ComplexForm* form;
  IndexSet index;
  std::size_t slot;
};

/// acc[slot][x] += field(x)^2 for real-valued fields, transforming two at a
/// time as field_a + i field_b.
void accumulate_packed(const std::vector<PackedField>& fields, GridTransform& fft, int points_per_axis,
                       std::span<std::vector<double>* const> acc) {
  Complex* data = fft.data();
  for (std::size_t f = 0; f < fields.size(); f += 2) {
    std::fill(data, data + fft.size(), Complex{});
    const bool pair = f + 1 < fields.size();
    for (std::size_t h = 0; h < (pair ? 2u : 1u); ++h) {
      const PackedField& field = fields[f + h];
      const Complex weight = h == 0 ? Complex(1.0) : Complex(0.0, 1.0);
      for (const auto& [k, coeffs] : field.form->spectrum()) {
        auto it = coeffs.terms().find(field.index);
        if (it != coeffs.terms().end()) data[grid_position(k, points_per_axis)] += weight * it->second;
      }
    }
    fft.execute(pair ? std::max(fields[f].form->max_frequency(), fields[f + 1].form->max_frequency())
                     : fields[f].form->max_frequency());
    auto& first = *acc[fields[f].slot];
    if (!pair) {
      for (std::size_t x = 0; x < fft.size(); ++x) first[x] += data[x].real() * data[x].real();
      continue;
    }
    auto& second = *acc[fields[f + 1].slot];
    for (std::size_t x = 0; x < fft.size(); ++x) {
      first[x] += data[x].real() * data[x].real();
      second[x] += data[x].imag() * data[x].imag();
    }
  }
}

/// acc[x] += sum_I |form_I(x)|^2.
void accumulate_abs2(const ComplexForm& form, int points_per_axis, std::vector<double>& acc) {
  check_sampling(form, points_per_axis);
  auto& fft = GridTransform::get(form.n(), points_per_axis);
  if (acc.empty()) acc.assign(fft.size(), 0.0);
  if (is_real_valued(form)) {
    std::vector<PackedField> fields;
    for (const auto& index : components_of(form)) fields.push_back({&form, index, 0});
    std::vector<double>* const slots[] = {&acc};
    accumulate_packed(fields, fft, points_per_axis, slots);
    return;
  }
  for (const auto& index : components_of(form)) {
    evaluate_component(form, index, fft, points_per_axis);
    const Complex* data = fft.data();
    for (std::size_t x = 0; x < fft.size(); ++x) acc[x] += std::norm(data[x]);
  }
}

double lp_from_abs2(const std::vector<double>& abs2, double p) {
  if (p < 1.0) throw InvalidArgument("lp_norm: p must be >= 1");
  if (abs2.empty()) return 0.0;
  if (std::isinf(p)) return std::sqrt(*std::max_element(abs2.begin(), abs2.end()));
  double sum = 0.0;
  if (p == 2.0) {
    for (double a : abs2) sum += a;
  } else if (p == 1.0) {
    for (double a : abs2) sum += std::sqrt(a);
  } else if (p == 1.5) {
    for (double a : abs2) {
      const double s = std::sqrt(a);
      sum += s * std::sqrt(s);
    }
  } else if (p == 3.0) {
    for (double a : abs2) sum += a * std::sqrt(a);
  } else {
    for (double a : abs2) sum += std::pow(a, 0.5 * p);
  }
  return std::pow(sum / static_cast<double>(abs2.size()), 1.0 / p);
}

double lp_norm_at(const ComplexForm& form, double p, int points_per_axis) {
  if (form.is_zero()) return 0.0;
  auto& acc = scratch(0);
  acc.clear();
  accumulate_abs2(form, points_per_axis, acc);
  return lp_from_abs2(acc, p);
}

std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

} // namespace

std::size_t GridSample::point_count() const {
  std::size_t total = 1;
  for (int j = 0; j < n; ++j) total *= static_cast<std::size_t>(points_per_axis);
  return total;
}

AlgForm<Complex> GridSample::at(std::span<const int> point) const {
  if (static_cast<int>(point.size()) != n) throw DimensionMismatch("GridSample::at: point dimension");
  std::size_t pos = 0;
  for (int v : point) {
    if (v < 0 || v >= points_per_axis) throw InvalidArgument("GridSample::at: point outside grid");
    pos = pos * static_cast<std::size_t>(points_per_axis) + static_cast<std::size_t>(v);
  }
  const int q = components.empty() ? 0 : components.front().degree();
  AlgForm<Complex> out(n, q);
  for (std::size_t c = 0; c < components.size(); ++c) out.add_term(components[c], values[c][pos]);
  return out;
}

int nyquist_size(const ComplexForm& form) { return 2 * form.max_frequency() + 1; }

int quadrature_size(const ComplexForm& form, double p) {
  const int base = nyquist_size(form);
  if (p == 2.0 || std::isinf(p)) return base;
  // Smallest 2^a 3^b at or above the oversampled size; FFTW is fastest there.
  const int target = kQuadratureOversampling * base;
  int best = 1;
  while (best < target) best *= 2;
  for (int three = 1; three < target * 3; three *= 3)
    for (int size = three; size < best; size *= 2)
      if (size >= target) {
        best = size;
        break;
      }
  return best;
}

GridSample sample_grid(const ComplexForm& form, int points_per_axis) {
  check_sampling(form, points_per_axis);
  GridSample sample;
  sample.n = form.n();
  sample.points_per_axis = points_per_axis;
  sample.oversampling = std::max(1, points_per_axis / nyquist_size(form));
  auto& fft = GridTransform::get(form.n(), points_per_axis);
  for (const auto& index : components_of(form)) {
    evaluate_component(form, index, fft, points_per_axis);
    sample.components.push_back(index);
    sample.values.emplace_back(fft.data(), fft.data() + fft.size());
  }
  return sample;
}

double lp_norm(const GridSample& sample, double p) {
  if (sample.components.empty()) {
    if (p < 1.0) throw InvalidArgument("lp_norm: p must be >= 1");
    return 0.0;
  }
  std::vector<double> abs2(sample.point_count(), 0.0);
  for (const auto& component : sample.values)
    for (std::size_t x = 0; x < abs2.size(); ++x) abs2[x] += std::norm(component[x]);
  return lp_from_abs2(abs2, p);
}

double lp_norm(const ComplexForm& form, double p) {
  if (p < 1.0) throw InvalidArgument("lp_norm: p must be >= 1");
  return lp_norm_at(form, p, quadrature_size(form, p));
}

std::vector<std::vector<int>> multi_indices(int n, int order) {
  std::vector<std::vector<int>> out;
  std::vector<int> beta(static_cast<std::size_t>(n), 0);
  auto recurse = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == n - 1) {
      beta[pos] = remaining;
      out.push_back(beta);
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      beta[pos] = e;
      self(self, pos + 1, remaining - e);
    }
  };
  if (n > 0) recurse(recurse, 0, order);
  return out;
}

double sobolev_norm(const ComplexForm& form, int order, double r) {
  if (r < 1.0) throw InvalidArgument("sobolev_norm: r must be >= 1");
  if (order < 0) throw InvalidArgument("sobolev_norm: negative order");
  if (form.is_zero()) return 0.0;
  const int points = quadrature_size(form, r);
  std::vector<ComplexForm> derivatives;
  for (int s = 0; s <= order; ++s)
    for (const auto& beta : multi_indices(form.n(), s)) derivatives.push_back(deriv_multi(beta, form));

  double total = 0.0;
  if (!is_real_valued(form)) {
    for (const auto& dv : derivatives) total += lp_norm_at(dv, r, points);
    return total;
  }
  // Every derivative of a real form is real, so two of them share one transform.
  check_sampling(form, points);
  auto& fft = GridTransform::get(form.n(), points);
  for (std::size_t b = 0; b < derivatives.size(); b += 2) {
    const std::size_t last = std::min(b + 2, derivatives.size());
    std::vector<PackedField> fields;
    for (std::size_t d = b; d < last; ++d)
      for (const auto& index : components_of(derivatives[d])) fields.push_back({&derivatives[d], index, d - b});
    std::vector<double>* const acc[] = {&scratch(0), &scratch(1)};
    for (auto* a : acc) a->assign(fft.size(), 0.0);
    accumulate_packed(fields, fft, points, acc);
    for (std::size_t d = 0; d < last - b; ++d) total += lp_from_abs2(*acc[d], r);
  }
  return total;
}

double gradient_lp_norm(const ComplexForm& form, double p) {
  if (form.is_zero()) return 0.0;
  const int points = quadrature_size(form, p);
  auto& acc = scratch(0);
  acc.clear();
  for (int j = 0; j < form.n(); ++j) {
    std::vector<int> beta(static_cast<std::size_t>(form.n()), 0);
    beta[j] = 1;
    accumulate_abs2(deriv_multi(beta, form), points, acc);
  }
  return lp_from_abs2(acc, p);
}

double gradient_l2_sq_spectral(const ComplexForm& form) {
  double total = 0.0;
  for (const auto& [k, coeffs] : form.spectrum()) {
    double block = 0.0;
    for (const auto& [index, c] : coeffs.terms()) block += std::norm(c);
    total += static_cast<double>(k.norm2()) * block;
  }
  return total;
}

const char* variant_name(PairingVariant v) { return v == PairingVariant::LS ? "LS" : "LL"; }
const char* side_name(PairingSide s) { return s == PairingSide::d ? "d" : "dstar"; }

double divcurl_exponent(int n) {
  if (n < 2) throw InvalidArgument("divcurl_exponent: n must be >= 2");
  return static_cast<double>(n) / static_cast<double>(n - 1);
}

ExperimentRecord evaluate_system(const HodgeSystem<Complex>& sys, std::uint64_t seed, int bandwidth) {
  ExperimentRecord rec;
  rec.seed = seed;
  rec.n = sys.n();
  rec.q = sys.q();
  rec.m = sys.m();
  rec.bandwidth = bandwidth;
  try {
    const auto solution = solve_odd(sys);
    rec.flag_q1 = solution.report.flag_q1;
    rec.flag_qn1 = solution.report.flag_qn1;
    rec.residual = std::max(solution.report.residual_primal, solution.report.residual_dual);
    rec.norm_f_l1 = lp_norm(sys.f(), 1.0);
    rec.norm_g_l1 = lp_norm(sys.g(), 1.0);
    rec.norm_v_sobolev = sobolev_norm(solution.v, 2 * sys.m(), divcurl_exponent(sys.n()));
    const double denom = rec.norm_f_l1 + rec.norm_g_l1;
    if (!(denom > 0.0)) throw InvalidArgument("div-curl ratio: data f = g = 0");
    rec.ratio = rec.norm_v_sobolev / denom;
    if (sys.m() >= 1) {
      const auto first = solve_first_order(sys);
      rec.box_relation = relate_box_m(sys.m(), solution.v, first.v, kFloatResidualTolerance);
    }
    if (solution.report.failed) rec.error = "residual above tolerance";
  } catch (const Error& e) {
    rec.error = e.what();
  }
  return rec;
}

namespace {

void check_cell(int n, int q, int m, int bandwidth, int trials) {
  if (n < 2) throw InvalidArgument("experiment: n must be >= 2");
  if (q < 0 || q > n) throw InvalidArgument("experiment: q outside [0, n]");
  if (m < 0) throw InvalidArgument("experiment: m must be >= 0");
  if (bandwidth < 1) throw InvalidArgument("experiment: bandwidth must be >= 1");
  if (trials < 0) throw InvalidArgument("experiment: trials must be >= 0");
}

struct Potentials {
  ComplexForm a; ///< f = d a
  ComplexForm b; ///< g = d* b
};

Potentials draw_potentials(int n, int q, int bandwidth, const ExperimentOptions& options, Rng& rng) {
  RandomFormOptions ro;
  ro.density = options.density;
  Potentials p{ComplexForm(n, q), ComplexForm(n, q)};
  const bool keep_f = q + 1 <= n && !(options.avoid_exceptional && q == n - 1);
  const bool keep_g = q - 1 >= 0 && !(options.avoid_exceptional && q == 1);
  if (keep_f) {
    for (int attempt = 0; attempt < 64 && d_fourier(p.a).is_zero(); ++attempt)
      p.a = random_fourier_form<Complex>(n, q, bandwidth, ro, rng);
  }
  if (keep_g) {
    for (int attempt = 0; attempt < 64 && dstar_fourier(p.b).is_zero(); ++attempt)
      p.b = random_fourier_form<Complex>(n, q, bandwidth, ro, rng);
  }
  return p;
}

HodgeSystem<Complex> system_from(int q, int m, const Potentials& p) {
  return HodgeSystem<Complex>(q, m, d_fourier(p.a), dstar_fourier(p.b));
}

} // namespace

std::vector<ExperimentRecord> divcurl_ratio_experiment(int n, int q, int m, int bandwidth, int trials,
                                                       std::uint64_t seed, const ExperimentOptions& options) {
  check_cell(n, q, m, bandwidth, trials);
  std::vector<ExperimentRecord> out;
  out.reserve(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(seed, static_cast<std::uint64_t>(t));
    Rng rng(trial_seed);
    try {
      const Potentials p = draw_potentials(n, q, bandwidth, options, rng);
      out.push_back(evaluate_system(system_from(q, m, p), trial_seed, bandwidth));
    } catch (const Error& e) {
      ExperimentRecord rec;
      rec.seed = trial_seed;
      rec.n = n;
      rec.q = q;
      rec.m = m;
      rec.bandwidth = bandwidth;
      rec.error = e.what();
      out.push_back(std::move(rec));
    }
  }
  return out;
}

std::vector<ExperimentRecord> pairing_experiment(int n, int q, int trials, std::uint64_t seed, PairingVariant variant,
                                                 PairingSide side, int bandwidth, const ExperimentOptions& options) {
  check_cell(n, q, 0, bandwidth, trials);
  if (side == PairingSide::d && !(q >= 0 && q <= n - 2))
    throw InvalidArgument("pairing_experiment: side d needs 0 <= q <= n-2");
  if (side == PairingSide::dstar && !(q >= 2 && q <= n))
    throw InvalidArgument("pairing_experiment: side dstar needs 2 <= q <= n");

  RandomFormOptions ro;
  ro.density = options.density;
  const double ln = static_cast<double>(n);
  std::vector<ExperimentRecord> out;
  out.reserve(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(seed, static_cast<std::uint64_t>(t));
    Rng rng(trial_seed);
    const int degree = side == PairingSide::d ? q + 1 : q - 1;
    const ComplexForm data = side == PairingSide::d ? random_closed<Complex>(n, degree, bandwidth, ro, rng)
                                                    : random_coclosed<Complex>(n, degree, bandwidth, ro, rng);
    const ComplexForm h = random_fourier_form<Complex>(n, degree, bandwidth, ro, rng);

    ExperimentRecord rec;
    rec.seed = trial_seed;
    rec.n = n;
    rec.q = q;
    rec.bandwidth = bandwidth;
    const double data_l1 = lp_norm(data, 1.0);
    (side == PairingSide::d ? rec.norm_f_l1 : rec.norm_g_l1) = data_l1;

    PairingFields pf;
    pf.variant = variant;
    pf.side = side;
    pf.pairing_abs = std::abs(l2_inner(data, h));
    pf.norm_ll_h_ln = lp_norm(side == PairingSide::d ? dstar_fourier(h) : d_fourier(h), ln);
    pf.norm_grad_h_ln = gradient_lp_norm(h, ln);
    pf.rhs_ls = data_l1 * pf.norm_grad_h_ln;
    pf.rhs_ll = data_l1 * pf.norm_ll_h_ln;
    const double rhs = variant == PairingVariant::LS ? pf.rhs_ls : pf.rhs_ll;
    if (rhs > 0.0)
      rec.ratio = pf.pairing_abs / rhs;
    else
      rec.error = "pairing: right-hand side vanishes";
    rec.pairing = pf;
    out.push_back(std::move(rec));
  }
  return out;
}

NullPairing constructed_null_pairing(int n, int q, PairingSide side, int bandwidth, std::uint64_t seed) {
  Rng rng(seed);
  RandomFormOptions ro;
  const int degree = side == PairingSide::d ? q + 1 : q - 1;
  ComplexForm data(n, degree), h(n, degree);
  if (side == PairingSide::d) {
    data = random_closed<Complex>(n, degree, bandwidth, ro, rng);
    h = random_coclosed<Complex>(n, degree, bandwidth, ro, rng);
  } else {
    data = random_coclosed<Complex>(n, degree, bandwidth, ro, rng);
    h = random_closed<Complex>(n, degree, bandwidth, ro, rng);
  }
  NullPairing out;
  out.pairing_abs = std::abs(l2_inner(data, h));
  out.norm_f_l2 = std::sqrt(l2_norm_sq(data));
  out.norm_h_l2 = std::sqrt(l2_norm_sq(h));
  out.norm_ll_h_l2 = std::sqrt(l2_norm_sq(side == PairingSide::d ? dstar_fourier(h) : d_fourier(h)));
  return out;
}

std::vector<ExperimentRecord> hillclimb_extremizer(int n, int q, int m, int bandwidth, int steps, std::uint64_t seed,
                                                   const ExperimentOptions& options) {
  check_cell(n, q, m, bandwidth, 1);
  if (steps < 1) throw InvalidArgument("hillclimb_extremizer: steps must be >= 1");
  Rng rng(seed);
  Potentials best = draw_potentials(n, q, bandwidth, options, rng);
  ExperimentRecord best_record = evaluate_system(system_from(q, m, best), seed, bandwidth);

  const bool move_a = !d_fourier(best.a).is_zero();
  const bool move_b = !dstar_fourier(best.b).is_zero();
  const auto slots = IndexSet::all_of_degree(n, q);
  RandomFormOptions ro;

  std::vector<ExperimentRecord> trajectory{best_record};
  for (int step = 1; step < steps; ++step) {
    Potentials candidate = best;
    const bool pick_a = move_a && (!move_b || rng.bernoulli(0.5));
    ComplexForm& target = pick_a ? candidate.a : candidate.b;
    if (move_a || move_b) {
      Mode k = Mode::zero(n);
      while (k.is_zero())
        for (int j = 0; j < n; ++j) k.k[j] = static_cast<int>(rng.uniform_int(-bandwidth, bandwidth));
      const IndexSet& index = slots[static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(slots.size()) - 1))];
      const Complex c = random_scalar<Complex>(rng, ro);
      target.add(k, index, c);
      target.add(-k, index, std::conj(c));
    }
    ExperimentRecord rec = evaluate_system(system_from(q, m, candidate), seed, bandwidth);
    if (rec.ok() && (!best_record.ok() || rec.ratio > best_record.ratio)) {
      best = std::move(candidate);
      best_record = rec;
    }
    trajectory.push_back(best_record);
  }
  return trajectory;
}

RatioSummary summarize(std::span<const ExperimentRecord> records) {
  RatioSummary s;
  std::vector<double> ratios;
  for (const auto& r : records) {
    if (!r.ok()) {
      ++s.errors;
      continue;
    }
    if (r.flag_q1 || r.flag_qn1) ++s.exceptional;
    ratios.push_back(r.ratio);
  }
  s.count = ratios.size();
  if (ratios.empty()) return s;
  std::sort(ratios.begin(), ratios.end());
  auto quantile = [&](double p) {
    const double pos = p * static_cast<double>(ratios.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, ratios.size() - 1);
    return ratios[lo] + (pos - static_cast<double>(lo)) * (ratios[hi] - ratios[lo]);
  };
  s.max = ratios.back();
  s.median = quantile(0.5);
  s.q90 = quantile(0.9);
  s.q99 = quantile(0.99);
  return s;
}

void write_csv(std::span<const ExperimentRecord> records, std::ostream& out) {
  const bool pairing = !records.empty() && records.front().pairing.has_value();
  out << kRatioCsvHeader;
  if (pairing) out << ",side,variant,pairing_abs,norm_ll_h_ln,norm_grad_h_ln,rhs_ls,rhs_ll";
  out << '\n';
  for (const auto& r : records) {
    out << r.seed << ',' << r.n << ',' << r.q << ',' << r.m << ',' << r.bandwidth << ',' << format_double(r.norm_f_l1)
        << ',' << format_double(r.norm_g_l1) << ',' << format_double(r.norm_v_sobolev) << ','
        << (r.ok() ? format_double(r.ratio) : std::string("nan")) << ',' << int(r.flag_q1) << ',' << int(r.flag_qn1);
    if (pairing && r.pairing) {
      const auto& p = *r.pairing;
      out << ',' << side_name(p.side) << ',' << variant_name(p.variant) << ',' << format_double(p.pairing_abs) << ','
          << format_double(p.norm_ll_h_ln) << ',' << format_double(p.norm_grad_h_ln) << ','
          << format_double(p.rhs_ls) << ',' << format_double(p.rhs_ll);
    }
    out << '\n';
  }
}

void write_json(std::span<const ExperimentRecord> records, std::ostream& out) {
  nlohmann::json array = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json row{{"seed", r.seed},
                       {"n", r.n},
                       {"q", r.q},
                       {"m", r.m},
                       {"bandwidth", r.bandwidth},
                       {"norm_f_l1", r.norm_f_l1},
                       {"norm_g_l1", r.norm_g_l1},
                       {"norm_v_sobolev", r.norm_v_sobolev},
                       {"ratio", r.ok() ? nlohmann::json(r.ratio) : nlohmann::json(nullptr)},
                       {"flag_q1", r.flag_q1},
                       {"flag_qn1", r.flag_qn1}};
    if (!r.ok()) row["error"] = r.error;
    if (r.pairing) {
      const auto& p = *r.pairing;
      row["side"] = side_name(p.side);
      row["variant"] = variant_name(p.variant);
      row["pairing_abs"] = p.pairing_abs;
      row["norm_ll_h_ln"] = p.norm_ll_h_ln;
      row["norm_grad_h_ln"] = p.norm_grad_h_ln;
      row["rhs_ls"] = p.rhs_ls;
      row["rhs_ll"] = p.rhs_ll;
    }
    array.push_back(std::move(row));
  }
  out << array.dump(2) << '\n';
}

} // namespace oddext
