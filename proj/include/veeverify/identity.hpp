#ifndef VEEVERIFY_IDENTITY_HPP
#define VEEVERIFY_IDENTITY_HPP

// The Main Identity
//   sum_{alpha != beta in A+} m_a m_b (alpha, beta) (cot(alpha,x) cot(beta,x) + 1) == 0
// and the ground-state property of psi_0 = prod sin^{-m_alpha}(alpha, x).

#include <cmath>
#include <vector>

#include "veeverify/configuration.hpp"
#include "veeverify/numeric.hpp"
#include "veeverify/report.hpp"

namespace veeverify {

/// Exact pole-cancellation certificate on the hyperplanes (alpha, x) = 0: for
/// every member alpha, every plane through it and every equivalence class G,
///   sum_{gamma in G} m_gamma (alpha, gamma) det(alpha, gamma) = 0.
inline CheckReport main_identity_exact(const Configuration& cfg) {
  CheckReport report;
  report.check = "main-exact";
  const PlaneDecomposition planes = enumerate_planes(cfg);
  std::size_t classes_checked = 0;
  for (std::size_t alpha = 0; alpha < cfg.size(); ++alpha) {
    for (std::size_t p : planes.planes_containing(alpha)) {
      const Plane& plane = planes.planes[p];
      for (const auto& cls : equiv_classes(cfg, plane, alpha).classes) {
        QElem sum;
        for (std::size_t gamma : cls)
          sum += QElem(cfg.member(gamma).multiplicity) * cfg.inner(alpha, gamma) * plane_det(cfg, plane, alpha, gamma);
        ++classes_checked;
        if (!sum.is_zero()) {
          report.verdict = Verdict::fail;
          report.witness = ExactWitness{alpha, p, plane.key, cls, sum};
          return report;
        }
      }
    }
  }
  report.details = Json{{"planes", planes.planes.size()}, {"classes_checked", classes_checked}};
  return report;
}

/// S = -sum_{alpha != beta} m_a m_b (alpha, beta), ordered pairs.
inline QElem constant_S(const Configuration& cfg) {
  QElem s;
  for (std::size_t i = 0; i < cfg.size(); ++i)
    for (std::size_t j = 0; j < cfg.size(); ++j)
      if (i != j) s -= QElem(cfg.member(i).multiplicity * cfg.member(j).multiplicity) * cfg.inner(i, j);
  return s;
}

/// sum_{alpha != beta} |m_a m_b (alpha, beta)|, or 1 when that sum vanishes.
template <class Real>
Real pair_scale(const RealView<Real>& view) {
  using std::abs;
  Real s = 0;
  for (std::size_t i = 0; i < view.members.size(); ++i)
    for (std::size_t j = 0; j < view.members.size(); ++j)
      if (i != j) s += abs(view.members[i].multiplicity * view.members[j].multiplicity * view.inner(i, j));
  return s == 0 ? Real(1) : s;
}

template <class Real>
std::vector<Real> cotangents(const RealView<Real>& view, const std::vector<Real>& x) {
  using std::cos;
  using std::sin;
  std::vector<Real> c;
  c.reserve(view.members.size());
  for (std::size_t a = 0; a < view.members.size(); ++a) {
    const Real t = view.pair(a, x);
    c.push_back(Real(cos(t) / sin(t)));
  }
  return c;
}

/// Pure cotangent sum sum_{alpha != beta} m_a m_b (alpha, beta) cot cot; constant
/// (and equal to constant_S) exactly when the Main Identity holds.
template <class Real>
Real cot_sum(const RealView<Real>& view, const std::vector<Real>& x) {
  const auto c = cotangents(view, x);
  Real s = 0;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j)
      if (i != j) s += view.members[i].multiplicity * view.members[j].multiplicity * view.inner(i, j) * c[i] * c[j];
  return s;
}

/// R(x), the left-hand side of the Main Identity.
template <class Real>
Real main_identity_value(const RealView<Real>& view, const std::vector<Real>& x) {
  const auto c = cotangents(view, x);
  Real s = 0;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j)
      if (i != j)
        s += view.members[i].multiplicity * view.members[j].multiplicity * view.inner(i, j) * (c[i] * c[j] + 1);
  return s;
}

inline CheckReport main_identity_numeric(const Configuration& cfg, const NumericOptions& opts = {}) {
  return numeric_check("main-numeric", opts, [&](unsigned bits) {
    return with_precision(bits, [&](auto tag) {
      using Real = decltype(tag);
      using std::abs;
      const RealView<Real> view(cfg);
      const Real scale = pair_scale(view);
      return sample_max(view, SampleMode::trig, opts,
                        [&](const Point<Real>& p) { return Real(abs(main_identity_value(view, p.coords)) / scale); });
    });
  });
}

/// max over samples of |S(x) - constant_S| / scale: the cotangent sum is the
/// constant S wherever the identity holds.
inline CheckReport constant_S_numeric(const Configuration& cfg, const NumericOptions& opts = {}) {
  const QElem s_exact = constant_S(cfg);
  CheckReport report = numeric_check("constant-S", opts, [&](unsigned bits) {
    return with_precision(bits, [&](auto tag) {
      using Real = decltype(tag);
      using std::abs;
      const RealView<Real> view(cfg);
      const Real scale = pair_scale(view);
      const Real target = to_real<Real>(s_exact);
      return sample_max(view, SampleMode::trig, opts,
                        [&](const Point<Real>& p) { return Real(abs(cot_sum(view, p.coords) - target) / scale); });
    });
  });
  report.details["S"] = qelem_to_json(s_exact);
  return report;
}

/// |L psi_0 / psi_0 - lambda| in closed form via logarithmic derivatives:
///   grad log psi_0 = -sum m cot(alpha,x) alpha,  lap log psi_0 = sum m (alpha,alpha) / sin^2,
///   L psi_0 / psi_0 = -(lap log psi_0 + |grad log psi_0|^2) + V.
template <class Real>
Real eigen_residual(const RealView<Real>& view, const std::vector<Real>& x, const Real& lambda) {
  using std::abs;
  using std::cos;
  using std::sin;
  std::vector<Real> grad(view.dim, Real(0));
  Real laplacian = 0;
  Real potential = 0;
  for (std::size_t a = 0; a < view.members.size(); ++a) {
    const auto& m = view.members[a];
    const Real t = view.pair(a, x);
    const Real s = sin(t);
    const Real cot = cos(t) / s;
    const Real inv_sin2 = 1 / (s * s);
    for (std::size_t i = 0; i < view.dim; ++i) grad[i] -= m.multiplicity * cot * m.vector[i];
    laplacian += m.multiplicity * m.norm_sq * inv_sin2;
    potential += m.multiplicity * (m.multiplicity + 1) * m.norm_sq * inv_sin2;
  }
  Real grad_sq = 0;
  for (std::size_t i = 0; i < view.dim; ++i)
    for (std::size_t j = 0; j < view.dim; ++j) grad_sq += grad[i] * view.gram(i, j) * grad[j];
  return abs(-(laplacian + grad_sq) + potential - lambda);
}

/// Double-precision entry point; x in span coordinates.
inline double eigen_residual(const Configuration& cfg, const std::vector<double>& x) {
  const RealView<double> view(cfg);
  if (x.size() != view.dim) throw Error(ErrorKind::DimensionMismatch, "point has wrong dimension");
  if (!generic_margin(view, x, SampleMode::trig))
    throw Error(ErrorKind::NonGenericPoint, "point is too close to a singular hyperplane");
  return eigen_residual(view, x, to_double(lambda_eig(cfg)));
}

/// Sampled eigenfunction check; residuals normalized by pair_scale.
inline CheckReport eigen_numeric(const Configuration& cfg, const NumericOptions& opts = {}) {
  const QElem lambda = lambda_eig(cfg);
  CheckReport report = numeric_check("eigen", opts, [&](unsigned bits) {
    return with_precision(bits, [&](auto tag) {
      using Real = decltype(tag);
      const RealView<Real> view(cfg);
      const Real scale = pair_scale(view);
      const Real lam = to_real<Real>(lambda);
      return sample_max(view, SampleMode::trig, opts,
                        [&](const Point<Real>& p) { return Real(eigen_residual(view, p.coords, lam) / scale); });
    });
  });
  report.details["lambda"] = qelem_to_json(lambda);
  return report;
}

}  // namespace veeverify

#endif  // VEEVERIFY_IDENTITY_HPP
