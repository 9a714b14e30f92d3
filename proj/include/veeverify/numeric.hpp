#ifndef VEEVERIFY_NUMERIC_HPP
#define VEEVERIFY_NUMERIC_HPP

// Sampling engine and numeric kernels. Everything numeric is templated on the
// working real type: double, or BigReal (MPFR) for --precision studies.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "veeverify/configuration.hpp"
#include "veeverify/error.hpp"
#include "veeverify/field.hpp"
#include "veeverify/matrix.hpp"
#include "veeverify/report.hpp"

namespace veeverify {

inline constexpr unsigned kDoubleBits = 53;

template <class Real>
Real pi() {
  if constexpr (std::is_same_v<Real, double>) {
    return std::numbers::pi;
  } else {
    return boost::math::constants::pi<Real>();
  }
}

template <class Real>
double to_double_real(const Real& x) {
  if constexpr (std::is_same_v<Real, double>) {
    return x;
  } else {
    return x.template convert_to<double>();
  }
}

/// Sets the MPFR default precision for the lifetime of the scope. The default
/// is process-wide, so scopes are opened by the orchestrating thread only.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits) : saved_(BigReal::default_precision()) {
    BigReal::default_precision(digits10_for(bits));
  }
  ~PrecisionScope() { BigReal::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

  static unsigned digits10_for(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
  }

 private:
  unsigned saved_;
};

/// Runs fn with a Real tag: double for 53 bits, BigReal at `bits` otherwise.
template <class Fn>
auto with_precision(unsigned bits, Fn&& fn) {
  if (bits == kDoubleBits) return fn(double{});
  PrecisionScope scope(bits);
  return fn(BigReal{});
}

// ---- parallelism ----

/// Hardware concurrency, or VEEVERIFY_THREADS when set (at most 256).
inline std::size_t worker_count() {
  if (const char* env = std::getenv("VEEVERIFY_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) return static_cast<std::size_t>(std::min(cap, 256L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// results[i] = fn(i). Output order is fixed by index, not by scheduling.
template <class Result, class Fn>
std::vector<Result> parallel_map(std::size_t count, Fn fn) {
  std::vector<Result> results(count);
  const std::size_t threads = std::min(worker_count(), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < count; i += threads) results[i] = fn(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

// ---- deterministic random streams ----

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Independent stream per (seed, stream index): xoshiro256** seeded by splitmix64.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed ^ (0x6a09e667f3bcc909ULL * (index + 1));
    for (auto& w : state_) w = splitmix64(s);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t state_[4]{};
};

// ---- real view of a configuration ----

template <class Real>
struct RealMember {
  std::vector<Real> covector;   // (alpha, u_j)
  std::vector<Real> vector;     // coefficients in the span basis
  Real multiplicity;
  Real norm_sq;                 // (alpha, alpha)
};

/// Real embedding of the exact span data at the current working precision.
template <class Real>
struct RealView {
  std::size_t dim = 0;
  std::vector<RealMember<Real>> members;
  Matrix<Real> gram;    // span Gram (u_i, u_j)
  Matrix<Real> inner;   // (alpha_i, alpha_j)

  explicit RealView(const Configuration& cfg) : dim(cfg.span_dim()) {
    const auto conv = [](const QElem& q) { return to_real<Real>(q); };
    gram = convert<Real>(cfg.span_gram(), conv);
    const std::size_t count = cfg.size();
    inner = Matrix<Real>(count, count);
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = 0; j < count; ++j) inner(i, j) = conv(cfg.inner(i, j));
    for (std::size_t a = 0; a < count; ++a) {
      RealMember<Real> m;
      for (std::size_t j = 0; j < dim; ++j) {
        m.covector.push_back(conv(cfg.covectors()(a, j)));
        m.vector.push_back(conv(cfg.coefficients()(a, j)));
      }
      m.multiplicity = to_real<Real>(cfg.member(a).multiplicity);
      m.norm_sq = inner(a, a);
      members.push_back(std::move(m));
    }
  }

  /// (alpha, x) for span coordinates x.
  Real pair(std::size_t a, const std::vector<Real>& x) const {
    Real s = 0;
    for (std::size_t j = 0; j < dim; ++j) s += members[a].covector[j] * x[j];
    return s;
  }

  /// Euclidean norm of x = sum x^i u_i.
  Real norm(const std::vector<Real>& x) const {
    using std::sqrt;
    Real s = 0;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) s += x[i] * gram(i, j) * x[j];
    return sqrt(s);
  }
};

// ---- sampling ----

enum class SampleMode { trig, rational };

template <class Real>
struct Point {
  std::vector<Real> coords;   // span coordinates
  Real margin;                // every (alpha, x) keeps at least this distance to its singular set
};

/// Distance of t to pi*Z.
template <class Real>
Real distance_to_pi_lattice(const Real& t) {
  using std::abs;
  using std::round;
  const Real p = pi<Real>();
  return abs(t - p * round(t / p));
}

template <class Real>
Real singular_distance(const Real& t, SampleMode mode) {
  using std::abs;
  return mode == SampleMode::trig ? distance_to_pi_lattice(t) : Real(abs(t));
}

/// Required clearance for member a at x: 1e-3 (1 + |alpha| |x|).
template <class Real>
Real required_margin(const RealView<Real>& view, std::size_t a, const Real& x_norm) {
  using std::sqrt;
  return Real(1e-3) * (1 + sqrt(view.members[a].norm_sq) * x_norm);
}

/// Checks x against the clearance rule; returns the declared margin or nothing.
template <class Real>
std::optional<Real> generic_margin(const RealView<Real>& view, const std::vector<Real>& x, SampleMode mode,
                                   double slack = 1.0) {
  const Real x_norm = view.norm(x);
  std::optional<Real> margin;
  for (std::size_t a = 0; a < view.members.size(); ++a) {
    const Real need = required_margin(view, a, x_norm);
    if (singular_distance(view.pair(a, x), mode) < need * Real(slack)) return std::nullopt;
    if (!margin || need < *margin) margin = need;
  }
  return margin;
}

inline constexpr std::size_t kDefaultAttemptBudget = 10000;

/// Draws span coordinates uniformly from [-2pi, 2pi] until every member clears
/// its margin. Deterministic in (seed, stream).
template <class Real>
Point<Real> sample_point(const RealView<Real>& view, SampleMode mode, std::uint64_t seed,
                         std::size_t attempt_budget = kDefaultAttemptBudget, std::uint64_t stream = 0) {
  if (attempt_budget == 0) throw Error(ErrorKind::InvalidInput, "attempt budget must be positive");
  Stream rng(seed, stream);
  const double box = 2 * std::numbers::pi;
  std::vector<Real> x(view.dim);
  for (std::size_t attempt = 0; attempt < attempt_budget; ++attempt) {
    for (auto& c : x) c = Real(rng.uniform(-box, box));
    // Slight slack so the declared margin survives re-evaluation at other precisions.
    if (auto margin = generic_margin(view, x, mode, 1.0 + 1e-6)) return {x, *margin};
  }
  throw Error(ErrorKind::SamplingExhausted,
              "no generic point after " + std::to_string(attempt_budget) + " attempts");
}

template <class Real>
Point<Real> sample_point(const Configuration& cfg, SampleMode mode, std::uint64_t seed,
                         std::size_t attempt_budget = kDefaultAttemptBudget, std::uint64_t stream = 0) {
  return sample_point(RealView<Real>(cfg), mode, seed, attempt_budget, stream);
}

/// Span coordinates of the orthogonal projection of an ambient point.
template <class Real>
std::vector<Real> span_coordinates(const Configuration& cfg, const std::vector<Real>& ambient) {
  if (ambient.size() != cfg.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "ambient point has wrong length");
  const std::size_t n = cfg.span_dim();
  std::vector<Real> rhs(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& u = cfg.member(cfg.span_basis()[j]).vector;
    for (std::size_t k = 0; k < ambient.size(); ++k) rhs[j] += to_real<Real>(u[k]) * ambient[k];
  }
  const Matrix<QElem> gram_inv = *inverse(cfg.span_gram());
  std::vector<Real> x(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x[i] += to_real<Real>(gram_inv(i, j)) * rhs[j];
  return x;
}

// ---- matrix kernels ----

/// ||PQ - QP||_F / max(1, ||P||_F ||Q||_F).
template <class Real>
Real commutator_residual(const Matrix<Real>& p, const Matrix<Real>& q) {
  using std::max;
  if (p.rows() != p.cols() || q.rows() != q.cols() || p.rows() != q.rows())
    throw Error(ErrorKind::DimensionMismatch, "commutator of matrices of different shapes");
  const Real scale = max(Real(1), Real(frobenius_norm(p) * frobenius_norm(q)));
  return Real(frobenius_norm(Matrix<Real>(p * q - q * p)) / scale);
}

// ---- sampled checks ----

struct NumericOptions {
  std::size_t samples = 200;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  unsigned precision_bits = kDoubleBits;
  std::size_t attempt_budget = kDefaultAttemptBudget;
};

struct SampleRun {
  double max_residual = 0;
  std::size_t worst_sample = 0;
};

/// Max of residual(point) over opts.samples points; sample i uses stream i.
template <class Real, class Residual>
SampleRun sample_max(const RealView<Real>& view, SampleMode mode, const NumericOptions& opts, Residual residual) {
  if (opts.samples == 0) throw Error(ErrorKind::InvalidInput, "at least one sample is required");
  const auto values = parallel_map<double>(opts.samples, [&](std::size_t i) {
    const Point<Real> p = sample_point(view, mode, opts.seed, opts.attempt_budget, i);
    return to_double_real(Real(residual(p)));
  });
  SampleRun run;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (std::isnan(values[i]) || values[i] > run.max_residual) {
      run.max_residual = values[i];
      run.worst_sample = i;
      if (std::isnan(values[i])) break;
    }
  return run;
}

inline unsigned escalated_precision(unsigned bits) { return std::max(2 * bits, 160u); }

/// Verdict from a residual evaluated at opts.precision_bits. A residual within
/// a factor 10 of tol is re-evaluated at escalated precision; disagreement
/// between the two verdicts yields inconclusive.
template <class Eval>
CheckReport numeric_check(std::string name, const NumericOptions& opts, Eval eval) {
  if (!(opts.tol > 0)) throw Error(ErrorKind::InvalidInput, "tolerance must be positive");
  CheckReport report;
  report.check = std::move(name);
  const SampleRun run = eval(opts.precision_bits);
  NumericSummary summary;
  summary.samples = opts.samples;
  summary.max_residual = run.max_residual;
  summary.tol = opts.tol;
  summary.seed = opts.seed;
  summary.precision_bits = opts.precision_bits;
  const bool pass = run.max_residual < opts.tol;
  report.verdict = pass ? Verdict::pass : Verdict::fail;
  if (run.max_residual >= opts.tol / 10 && run.max_residual <= opts.tol * 10) {
    const unsigned bits = escalated_precision(opts.precision_bits);
    const SampleRun high = eval(bits);
    summary.escalated_residual = high.max_residual;
    summary.escalated_bits = bits;
    if ((high.max_residual < opts.tol) != pass) report.verdict = Verdict::inconclusive;
  }
  report.numeric = summary;
  report.details = Json{{"worst_sample", run.worst_sample}};
  return report;
}

}  // namespace veeverify

#endif  // VEEVERIFY_NUMERIC_HPP
