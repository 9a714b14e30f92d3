#ifndef VEEVERIFY_CONFIGURATION_HPP
#define VEEVERIFY_CONFIGURATION_HPP

// Configuration data model: the positive half A+ of a centrally symmetric
// vector configuration with multiplicities, together with the exact span data
// every check works in.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "veeverify/error.hpp"
#include "veeverify/field.hpp"
#include "veeverify/matrix.hpp"

namespace veeverify {

using CVector = std::vector<QElem>;

inline QElem dot(const CVector& x, const CVector& y) {
  if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "dot product of vectors of different length");
  QElem s;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

struct Member {
  CVector vector;
  Rat multiplicity;
};

class Configuration;
Configuration build_config(std::size_t ambient_dim, const Rat& radicand, std::vector<Member> members,
                           std::vector<Rat> direction, std::string name = {});

/// Immutable after build_config. Member vectors are stored with (alpha, direction) > 0.
///
/// Span coordinates: the span basis u_1..u_n is a subset of the members. A point
/// x = sum x^i u_i of the span is given by its coefficients x^i; a member alpha
/// enters through its covector components (alpha, u_j) and its vector
/// coefficients c with alpha = sum c^i u_i.
class Configuration {
 public:
  const std::string& name() const { return name_; }
  std::size_t ambient_dim() const { return ambient_dim_; }
  const Rat& radicand() const { return radicand_; }
  const std::vector<Member>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  const Member& member(std::size_t i) const { return members_[i]; }
  const std::vector<Rat>& direction() const { return direction_; }

  const std::vector<std::size_t>& span_basis() const { return span_basis_; }
  std::size_t span_dim() const { return span_basis_.size(); }
  const Matrix<QElem>& span_gram() const { return span_gram_; }

  /// (alpha_i, alpha_j) for all member pairs.
  const QElem& inner(std::size_t i, std::size_t j) const { return inner_(i, j); }
  /// Row i: (alpha_i, u_j), j < span_dim.
  const Matrix<QElem>& covectors() const { return covectors_; }
  /// Row i: coefficients of alpha_i in the span basis.
  const Matrix<QElem>& coefficients() const { return coefficients_; }

 private:
  friend Configuration build_config(std::size_t, const Rat&, std::vector<Member>, std::vector<Rat>, std::string);
  Configuration() = default;

  std::string name_;
  std::size_t ambient_dim_ = 0;
  Rat radicand_{0};
  std::vector<Member> members_;
  std::vector<Rat> direction_;
  std::vector<std::size_t> span_basis_;
  Matrix<QElem> span_gram_;
  Matrix<QElem> inner_;
  Matrix<QElem> covectors_;
  Matrix<QElem> coefficients_;
};

namespace detail {

inline QElem pair_with_direction(const CVector& v, const std::vector<Rat>& direction) {
  QElem s;
  for (std::size_t k = 0; k < v.size(); ++k) s += v[k] * QElem(direction[k]);
  return s;
}

inline bool collinear(const CVector& x, const CVector& y) {
  std::size_t k = 0;
  while (k < x.size() && x[k].is_zero()) ++k;
  const QElem ratio = y[k] / x[k];
  if (ratio.is_zero()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(y[i] == ratio * x[i])) return false;
  return true;
}

inline Matrix<QElem> rows_of(const std::vector<Member>& members, const std::vector<std::size_t>& idx,
                             std::size_t extra = static_cast<std::size_t>(-1)) {
  const std::size_t n = idx.size() + (extra == static_cast<std::size_t>(-1) ? 0 : 1);
  const std::size_t dim = members.front().vector.size();
  Matrix<QElem> m(n, dim);
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = members[idx[r]].vector[c];
  if (n > idx.size())
    for (std::size_t c = 0; c < dim; ++c) m(n - 1, c) = members[extra].vector[c];
  return m;
}

}  // namespace detail

inline Configuration build_config(std::size_t ambient_dim, const Rat& radicand, std::vector<Member> members,
                                  std::vector<Rat> direction, std::string name) {
  if (ambient_dim == 0) throw Error(ErrorKind::InvalidInput, "ambient dimension must be positive");
  if (members.empty()) throw Error(ErrorKind::InvalidInput, "configuration has no members");
  if (radicand.sign() < 0) throw Error(ErrorKind::InvalidRadicand, "radicand must be non-negative");
  if (direction.size() != ambient_dim)
    throw Error(ErrorKind::DimensionMismatch, "direction has wrong length");

  // Radicals must all be sqrt(radicand); a perfect-square radicand folds them away.
  const Rat field_radicand = QElem::sqrt_of(radicand).is_rational() ? Rat(0) : radicand;

  for (std::size_t i = 0; i < members.size(); ++i) {
    auto& v = members[i].vector;
    if (v.size() != ambient_dim)
      throw Error(ErrorKind::DimensionMismatch, "member " + std::to_string(i) + " has wrong length", {i});
    bool zero = true;
    for (const auto& c : v) {
      if (!c.is_rational() && c.radicand() != field_radicand)
        throw Error(ErrorKind::MixedRadicals,
                    "member " + std::to_string(i) + " uses sqrt(" + c.radicand().str() + ")", {i});
      zero = zero && c.is_zero();
    }
    if (zero) throw Error(ErrorKind::ZeroVector, "member " + std::to_string(i) + " is zero", {i});

    const int s = q_sign(detail::pair_with_direction(v, direction));
    if (s == 0)
      throw Error(ErrorKind::NonGenericDirection,
                  "direction is orthogonal to member " + std::to_string(i), {i});
    if (s < 0)
      for (auto& c : v) c = -c;
  }

  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (detail::collinear(members[i].vector, members[j].vector))
        throw Error(ErrorKind::CollinearPair,
                    "members " + std::to_string(i) + " and " + std::to_string(j) + " are collinear", {i, j});

  Configuration cfg;
  cfg.name_ = std::move(name);
  cfg.ambient_dim_ = ambient_dim;
  cfg.radicand_ = radicand;
  cfg.direction_ = std::move(direction);

  for (std::size_t i = 0; i < members.size() && cfg.span_basis_.size() < ambient_dim; ++i) {
    const auto m = detail::rows_of(members, cfg.span_basis_, i);
    if (rank(m) > cfg.span_basis_.size()) cfg.span_basis_.push_back(i);
  }
  cfg.members_ = std::move(members);

  const std::size_t count = cfg.members_.size();
  const std::size_t n = cfg.span_basis_.size();
  cfg.inner_ = Matrix<QElem>(count, count);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i; j < count; ++j) {
      cfg.inner_(i, j) = dot(cfg.members_[i].vector, cfg.members_[j].vector);
      cfg.inner_(j, i) = cfg.inner_(i, j);
    }

  cfg.span_gram_ = Matrix<QElem>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cfg.span_gram_(i, j) = cfg.inner_(cfg.span_basis_[i], cfg.span_basis_[j]);

  cfg.covectors_ = Matrix<QElem>(count, n);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < n; ++j) cfg.covectors_(i, j) = cfg.inner_(i, cfg.span_basis_[j]);

  // Gram of linearly independent vectors is positive definite, hence invertible.
  const Matrix<QElem> gram_inv = *inverse(cfg.span_gram_);
  cfg.coefficients_ = cfg.covectors_ * gram_inv;
  return cfg;
}

/// Same members, new positive half.
inline Configuration with_direction(const Configuration& cfg, std::vector<Rat> direction) {
  return build_config(cfg.ambient_dim(), cfg.radicand(), cfg.members(), std::move(direction), cfg.name());
}

/// rho(m) = sum m_alpha alpha over A+.
inline CVector rho(const Configuration& cfg) {
  CVector r(cfg.ambient_dim());
  for (const auto& m : cfg.members())
    for (std::size_t k = 0; k < r.size(); ++k) r[k] += QElem(m.multiplicity) * m.vector[k];
  return r;
}

/// Ground-state eigenvalue |rho(m)|^2.
inline QElem lambda_eig(const Configuration& cfg) {
  const CVector r = rho(cfg);
  return dot(r, r);
}

// ---- planes ----

struct Plane {
  std::array<std::size_t, 2> basis_pair{};
  std::vector<std::size_t> members;   // ascending member indices
  Matrix<QElem> key;                  // reduced echelon form of the basis pair (2 x N)
  std::array<std::size_t, 2> pivots{};

  bool contains(std::size_t i) const { return std::binary_search(members.begin(), members.end(), i); }
};

struct PlaneDecomposition {
  std::vector<Plane> planes;

  std::vector<std::size_t> planes_containing(std::size_t member) const {
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < planes.size(); ++p)
      if (planes[p].contains(member)) out.push_back(p);
    return out;
  }
};

namespace detail {

inline bool in_plane(const Plane& plane, const CVector& v) {
  for (std::size_t c = 0; c < v.size(); ++c) {
    const QElem r = v[c] - v[plane.pivots[0]] * plane.key(0, c) - v[plane.pivots[1]] * plane.key(1, c);
    if (!r.is_zero()) return false;
  }
  return true;
}

// Determinant of (u, v) in the plane's echelon basis.
inline QElem echelon_det(const Plane& plane, const CVector& u, const CVector& v) {
  return u[plane.pivots[0]] * v[plane.pivots[1]] - u[plane.pivots[1]] * v[plane.pivots[0]];
}

}  // namespace detail

/// 2x2 determinant of members i, j in plane coordinates, taking the plane's
/// basis_pair as the reference basis.
inline QElem plane_det(const Configuration& cfg, const Plane& plane, std::size_t i, std::size_t j) {
  const auto& b = plane.basis_pair;
  return detail::echelon_det(plane, cfg.member(i).vector, cfg.member(j).vector) /
         detail::echelon_det(plane, cfg.member(b[0]).vector, cfg.member(b[1]).vector);
}

/// Every 2-plane spanned by a pair of members, with exact membership. Plane
/// order follows the first (lexicographic) member pair spanning it.
inline PlaneDecomposition enumerate_planes(const Configuration& cfg) {
  const std::size_t count = cfg.size();
  PlaneDecomposition out;
  std::vector<char> covered(count * count, 0);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j) {
      if (covered[i * count + j]) continue;
      Plane plane;
      plane.basis_pair = {i, j};
      Echelon<QElem> e = reduced_row_echelon(detail::rows_of(cfg.members(), {i, j}));
      plane.key = std::move(e.reduced);
      plane.pivots = {e.pivots[0], e.pivots[1]};
      for (std::size_t k = 0; k < count; ++k)
        if (k == i || k == j || detail::in_plane(plane, cfg.member(k).vector)) plane.members.push_back(k);
      for (std::size_t a : plane.members)
        for (std::size_t b : plane.members) covered[a * count + b] = 1;
      out.planes.push_back(std::move(plane));
    }
  return out;
}

// ---- equivalence classes ----

struct ClassPartition {
  std::size_t pivot = 0;
  std::vector<std::vector<std::size_t>> classes;
};

/// Splits the plane members other than the pivot into classes of the relation
/// gamma' = +-gamma + mu * pivot.
inline ClassPartition equiv_classes(const Configuration& cfg, const Plane& plane, std::size_t pivot) {
  if (!plane.contains(pivot)) throw Error(ErrorKind::InvalidInput, "pivot is not in the plane", {pivot});
  ClassPartition out;
  out.pivot = pivot;
  std::size_t w = plane.members.front() == pivot ? plane.members[1] : plane.members.front();

  // gamma = p*alpha + q*w; only |q| matters. Cramer on the 2x2 Gram system.
  const QElem aa = cfg.inner(pivot, pivot);
  const QElem aw = cfg.inner(pivot, w);
  const QElem ww = cfg.inner(w, w);
  const QElem det = aa * ww - aw * aw;

  std::vector<QElem> keys;
  for (std::size_t g : plane.members) {
    if (g == pivot) continue;
    const QElem q = q_abs((aa * cfg.inner(g, w) - aw * cfg.inner(g, pivot)) / det);
    auto it = std::find(keys.begin(), keys.end(), q);
    if (it == keys.end()) {
      keys.push_back(q);
      out.classes.push_back({g});
    } else {
      out.classes[static_cast<std::size_t>(it - keys.begin())].push_back(g);
    }
  }
  return out;
}

// ---- irreducibility ----

/// Member indices of each connected component of the graph with an edge when
/// (alpha, beta) != 0. Components ordered by their smallest member.
inline std::vector<std::vector<std::size_t>> component_indices(const Configuration& cfg) {
  const std::size_t count = cfg.size();
  std::vector<std::size_t> label(count, count);
  std::vector<std::vector<std::size_t>> comps;
  for (std::size_t s = 0; s < count; ++s) {
    if (label[s] != count) continue;
    std::vector<std::size_t> comp{s};
    label[s] = comps.size();
    for (std::size_t head = 0; head < comp.size(); ++head)
      for (std::size_t t = 0; t < count; ++t)
        if (label[t] == count && !cfg.inner(comp[head], t).is_zero()) {
          label[t] = comps.size();
          comp.push_back(t);
        }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

inline std::vector<Configuration> irreducible_components(const Configuration& cfg) {
  std::vector<Configuration> out;
  const auto comps = component_indices(cfg);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    std::vector<Member> members;
    for (std::size_t i : comps[c]) members.push_back(cfg.member(i));
    std::string name = comps.size() == 1 ? cfg.name() : cfg.name() + "#" + std::to_string(c);
    out.push_back(build_config(cfg.ambient_dim(), cfg.radicand(), std::move(members), cfg.direction(), name));
  }
  return out;
}

// ---- mass operator ----

/// M_ij = sum m_alpha (alpha, u_i)(alpha, u_j) in span coordinates.
inline Matrix<QElem> mass_operator(const Configuration& cfg) {
  const std::size_t n = cfg.span_dim();
  const auto& cov = cfg.covectors();
  Matrix<QElem> m(n, n);
  for (std::size_t a = 0; a < cfg.size(); ++a) {
    const QElem mult(cfg.member(a).multiplicity);
    if (mult.is_zero()) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const QElem mi = mult * cov(a, i);
      for (std::size_t j = i; j < n; ++j) m(i, j) += mi * cov(a, j);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) m(i, j) = m(j, i);
  return m;
}

/// mu when M = mu * Id on the span, i.e. M_ij = mu * (u_i, u_j).
inline std::optional<QElem> is_scalar(const Configuration& cfg) {
  const Matrix<QElem> m = mass_operator(cfg);
  const auto& gram = cfg.span_gram();
  const QElem mu = m(0, 0) / gram(0, 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!(m(i, j) == mu * gram(i, j))) return std::nullopt;
  return mu;
}

}  // namespace veeverify

#endif  // VEEVERIFY_CONFIGURATION_HPP
