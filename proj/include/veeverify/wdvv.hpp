#ifndef VEEVERIFY_WDVV_HPP
#define VEEVERIFY_WDVV_HPP

// Prepotential F(x) = sum m_alpha (alpha,x)^2 log (alpha,x)^2: exact plane
// (vee-)conditions, numeric WDVV commutativity with G = F_x, and flatness of
// the Knizhnik-Zamolodchikov type connection. The vee-system {sqrt(m) alpha} is
// never materialized; only m_alpha enters.

#include <cmath>
#include <vector>

#include "veeverify/configuration.hpp"
#include "veeverify/numeric.hpp"
#include "veeverify/report.hpp"

namespace veeverify {

struct GramG {
  Matrix<QElem> entries;   // sum m_alpha (alpha, u_i)(alpha, u_j)
  Matrix<QElem> inverse;
};

inline GramG gram_G(const Configuration& cfg) {
  GramG g;
  g.entries = mass_operator(cfg);
  auto inv = inverse(g.entries);
  if (!inv) throw Error(ErrorKind::SingularGram, "sum m_alpha alpha (x) alpha is degenerate on the span");
  g.inverse = std::move(*inv);
  return g;
}

/// For every member alpha and plane P through it:
///   sum_{beta in P, beta != alpha} m_beta (G^-1 alpha, beta) det(alpha, beta) = 0.
inline CheckReport vee_condition_exact(const Configuration& cfg) {
  CheckReport report;
  report.check = "vee";
  const GramG g = gram_G(cfg);
  const Matrix<QElem> pairing = cfg.covectors() * g.inverse * cfg.covectors().transpose();
  const PlaneDecomposition planes = enumerate_planes(cfg);
  for (std::size_t alpha = 0; alpha < cfg.size(); ++alpha) {
    for (std::size_t p : planes.planes_containing(alpha)) {
      const Plane& plane = planes.planes[p];
      QElem sum;
      std::vector<std::size_t> others;
      for (std::size_t beta : plane.members) {
        if (beta == alpha) continue;
        others.push_back(beta);
        sum += QElem(cfg.member(beta).multiplicity) * pairing(alpha, beta) * plane_det(cfg, plane, alpha, beta);
      }
      if (!sum.is_zero()) {
        report.verdict = Verdict::fail;
        report.witness = ExactWitness{alpha, p, plane.key, others, sum};
        return report;
      }
    }
  }
  report.details = Json{{"planes", planes.planes.size()}};
  return report;
}

template <class Real>
struct FMatrix {
  Matrix<Real> entries;
  std::vector<Real> base_point;
  std::vector<Real> direction_vector;
};

/// F_a = sum m_alpha (alpha,a)/(alpha,x) (alpha (x) alpha) in span coordinates,
/// without the factor 4 of the true third derivative.
template <class Real>
FMatrix<Real> f_matrix(const RealView<Real>& view, const std::vector<Real>& a, const std::vector<Real>& x) {
  if (a.size() != view.dim || x.size() != view.dim)
    throw Error(ErrorKind::DimensionMismatch, "direction or point has wrong dimension");
  if (!generic_margin(view, x, SampleMode::rational))
    throw Error(ErrorKind::NonGenericPoint, "point is too close to a hyperplane (alpha, x) = 0");
  FMatrix<Real> f{Matrix<Real>(view.dim, view.dim), x, a};
  for (std::size_t k = 0; k < view.members.size(); ++k) {
    const auto& m = view.members[k];
    const Real w = m.multiplicity * view.pair(k, a) / view.pair(k, x);
    for (std::size_t i = 0; i < view.dim; ++i)
      for (std::size_t j = 0; j < view.dim; ++j) f.entries(i, j) += w * m.covector[i] * m.covector[j];
  }
  return f;
}

inline FMatrix<double> f_matrix(const Configuration& cfg, const std::vector<double>& a, const std::vector<double>& x) {
  return f_matrix(RealView<double>(cfg), a, x);
}

namespace detail {

template <class Real>
std::vector<Real> unit(std::size_t n, std::size_t i) {
  std::vector<Real> e(n, Real(0));
  e[i] = 1;
  return e;
}

template <class Real>
Real max_pairwise_commutator(const std::vector<Matrix<Real>>& ms) {
  Real worst = 0;
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      const Real r = commutator_residual(ms[i], ms[j]);
      if (r > worst) worst = r;
    }
  return worst;
}

// G^-1 F_i for every span basis direction i.
template <class Real>
std::vector<Matrix<Real>> gauged_f_matrices(const RealView<Real>& view, const Matrix<Real>& g_inv,
                                            const std::vector<Real>& x) {
  std::vector<Matrix<Real>> out;
  for (std::size_t i = 0; i < view.dim; ++i) out.push_back(g_inv * f_matrix(view, unit<Real>(view.dim, i), x).entries);
  return out;
}

// A_i = sum m_alpha (alpha, u_i)/(alpha, x) alpha (x) alpha as operators on the span.
template <class Real>
std::vector<Matrix<Real>> connection_matrices(const RealView<Real>& view, const std::vector<Real>& x) {
  std::vector<Matrix<Real>> out(view.dim, Matrix<Real>(view.dim, view.dim));
  for (std::size_t k = 0; k < view.members.size(); ++k) {
    const auto& m = view.members[k];
    const Real w = m.multiplicity / view.pair(k, x);
    for (std::size_t a = 0; a < view.dim; ++a) {
      const Real wa = w * m.covector[a];
      for (std::size_t i = 0; i < view.dim; ++i)
        for (std::size_t j = 0; j < view.dim; ++j) out[a](i, j) += wa * m.vector[i] * m.covector[j];
    }
  }
  return out;
}

}  // namespace detail

/// Max over samples and basis pairs of the commutator residual of G^-1 F_i, G^-1 F_j.
inline CheckReport wdvv_numeric(const Configuration& cfg, const NumericOptions& opts = {}) {
  const GramG g = gram_G(cfg);
  return numeric_check("wdvv", opts, [&](unsigned bits) {
    return with_precision(bits, [&](auto tag) {
      using Real = decltype(tag);
      const RealView<Real> view(cfg);
      const Matrix<Real> g_inv = convert<Real>(g.inverse, [](const QElem& q) { return to_real<Real>(q); });
      return sample_max(view, SampleMode::rational, opts, [&](const Point<Real>& p) {
        return detail::max_pairwise_commutator(detail::gauged_f_matrices(view, g_inv, p.coords));
      });
    });
  });
}

/// Flatness of d - sum m (alpha,a)/(alpha,x) alpha (x) alpha: the curl part is
/// symmetric in (a, b) and vanishes, leaving [A_a, A_b] = 0.
inline CheckReport flat_connection_numeric(const Configuration& cfg, const NumericOptions& opts = {}) {
  return numeric_check("flat", opts, [&](unsigned bits) {
    return with_precision(bits, [&](auto tag) {
      using Real = decltype(tag);
      const RealView<Real> view(cfg);
      return sample_max(view, SampleMode::rational, opts, [&](const Point<Real>& p) {
        return detail::max_pairwise_commutator(detail::connection_matrices(view, p.coords));
      });
    });
  });
}

/// Commutator matrices at one point, for witness output.
inline std::vector<Matrix<double>> wdvv_commutators(const Configuration& cfg, const std::vector<double>& x) {
  const GramG g = gram_G(cfg);
  const RealView<double> view(cfg);
  const auto g_inv = convert<double>(g.inverse, [](const QElem& q) { return to_double(q); });
  const auto fs = detail::gauged_f_matrices(view, g_inv, x);
  std::vector<Matrix<double>> out;
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = i + 1; j < fs.size(); ++j) out.push_back(fs[i] * fs[j] - fs[j] * fs[i]);
  return out;
}

/// F(x) = sum m (alpha,x)^2 log (alpha,x)^2.
template <class Real>
Real prepotential(const RealView<Real>& view, const std::vector<Real>& x) {
  using std::log;
  Real f = 0;
  for (std::size_t k = 0; k < view.members.size(); ++k) {
    if (view.members[k].multiplicity == 0) continue;
    const Real t = view.pair(k, x);
    f += view.members[k].multiplicity * t * t * log(t * t);
  }
  return f;
}

/// Max deviation, relative to the largest analytic entry, between 4 F_k(i, j)
/// and a finite-difference third derivative of F. The central product stencil
/// is Richardson-extrapolated over steps h and 2h (error O(h^4)).
inline double fd_cross_check(const Configuration& cfg, const std::vector<double>& x, double h) {
  using std::abs;
  const RealView<double> view(cfg);
  const std::size_t n = view.dim;
  if (x.size() != n) throw Error(ErrorKind::DimensionMismatch, "point has wrong dimension");
  if (!(h > 0)) throw Error(ErrorKind::InvalidInput, "step must be positive");
  for (std::size_t k = 0; k < view.members.size(); ++k) {
    double reach = 0;
    for (double c : view.members[k].covector) reach = std::max(reach, abs(c));
    if (abs(view.pair(k, x)) <= 8 * h * reach)
      throw Error(ErrorKind::NonGenericPoint, "stencil would cross a hyperplane (alpha, x) = 0", {k});
  }

  const auto third = [&](std::size_t i, std::size_t j, std::size_t k, double step) {
    double sum = 0;
    for (int si : {1, -1})
      for (int sj : {1, -1})
        for (int sk : {1, -1}) {
          std::vector<double> y = x;
          y[i] += si * step;
          y[j] += sj * step;
          y[k] += sk * step;
          sum += si * sj * sk * prepotential(view, y);
        }
    return sum / (8 * step * step * step);
  };

  double worst = 0;
  double largest = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto f = f_matrix(view, detail::unit<double>(n, k), x);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double analytic = 4 * f.entries(i, j);
        const double fd = (4 * third(i, j, k, h) - third(i, j, k, 2 * h)) / 3;
        worst = std::max(worst, abs(fd - analytic));
        largest = std::max(largest, abs(analytic));
      }
  }
  return largest == 0 ? worst : worst / largest;
}

}  // namespace veeverify

#endif  // VEEVERIFY_WDVV_HPP
