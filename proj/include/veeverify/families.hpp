#ifndef VEEVERIFY_FAMILIES_HPP
#define VEEVERIFY_FAMILIES_HPP

// Built-in configurations: classical root systems with invariant multiplicities
// and the deformed families A_n(m), C_{n+1}(m, l).

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "veeverify/configuration.hpp"
#include "veeverify/error.hpp"
#include "veeverify/field.hpp"

namespace veeverify {

enum class Family { A, B, C, D, BC, G2, A_deformed, C_deformed };

inline std::string to_string(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::BC: return "BC";
    case Family::G2: return "G2";
    case Family::A_deformed: return "A_deformed";
    case Family::C_deformed: return "C_deformed";
  }
  return "?";
}

inline std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::A, Family::B, Family::C, Family::D, Family::BC, Family::G2, Family::A_deformed,
                   Family::C_deformed})
    if (to_string(f) == name) return f;
  return std::nullopt;
}

/// Orbit names (Coxeter families) or parameter names (deformed families).
inline std::vector<std::string> parameter_names(Family f) {
  switch (f) {
    case Family::A:
    case Family::D: return {"all"};
    case Family::B:
    case Family::C:
    case Family::G2: return {"short", "long"};
    case Family::BC: return {"short", "middle", "long"};
    case Family::A_deformed: return {"m"};
    case Family::C_deformed: return {"m", "l"};
  }
  return {};
}

struct FamilySpec {
  Family family = Family::A;
  unsigned rank = 1;
  std::map<std::string, Rat> params;
};

/// (1, 1/2, 1/4, ..., 2^(1-N)).
inline std::vector<Rat> default_direction(std::size_t ambient_dim) {
  std::vector<Rat> v;
  Rat c(1);
  for (std::size_t i = 0; i < ambient_dim; ++i, c /= 2) v.push_back(c);
  return v;
}

namespace detail {

// Default direction, with the last coordinate nudged until no member is orthogonal to it.
inline std::vector<Rat> generic_direction(const std::vector<Member>& members, std::size_t ambient_dim) {
  std::vector<Rat> v = default_direction(ambient_dim);
  for (int attempt = 0; attempt < 64; ++attempt) {
    bool generic = true;
    for (const auto& m : members) generic = generic && !pair_with_direction(m.vector, v).is_zero();
    if (generic) return v;
    v.back() *= Rat(3, 5);
  }
  throw Error(ErrorKind::NonGenericDirection, "could not find a generic default direction");
}

inline CVector basis_vector(std::size_t dim, std::size_t i, const QElem& scale = QElem(1)) {
  CVector v(dim);
  v[i] = scale;
  return v;
}

inline CVector combo(std::size_t dim, std::size_t i, const QElem& ci, std::size_t j, const QElem& cj) {
  CVector v(dim);
  v[i] = ci;
  v[j] = cj;
  return v;
}

inline void check_params(Family f, const std::map<std::string, Rat>& params) {
  const auto names = parameter_names(f);
  bool ok = params.size() == names.size();
  for (const auto& n : names) ok = ok && params.count(n) == 1;
  if (!ok) {
    std::string expected;
    for (const auto& n : names) expected += (expected.empty() ? "" : ", ") + n;
    throw Error(ErrorKind::WrongParameterCount, to_string(f) + " expects parameters {" + expected + "}");
  }
}

inline std::string describe(const std::string& head, const std::map<std::string, Rat>& params,
                            const std::vector<std::string>& order) {
  std::string s = head + "(";
  for (std::size_t i = 0; i < order.size(); ++i) s += (i ? "," : "") + order[i] + "=" + params.at(order[i]).str();
  return s + ")";
}

inline Configuration finish(std::size_t ambient_dim, const Rat& radicand, std::vector<Member> members, std::string name) {
  auto direction = generic_direction(members, ambient_dim);
  return build_config(ambient_dim, radicand, std::move(members), std::move(direction), std::move(name));
}

}  // namespace detail

/// Positive roots in standard coordinates. A_n lives in R^{n+1} (sum-zero
/// hyperplane), G2 in R^3, the others in R^n.
inline Configuration coxeter(Family family, unsigned rank, const std::map<std::string, Rat>& orbit_multiplicities) {
  using detail::basis_vector;
  using detail::combo;
  const auto range_error = [&] {
    return Error(ErrorKind::InvalidParameter, "rank " + std::to_string(rank) + " not supported for " + to_string(family));
  };
  if (family == Family::A_deformed || family == Family::C_deformed)
    throw Error(ErrorKind::UnsupportedFamily, to_string(family) + " is not a Coxeter family");
  detail::check_params(family, orbit_multiplicities);
  const auto mult = [&](const char* orbit) { return orbit_multiplicities.at(orbit); };
  const QElem one(1);
  const QElem two(2);

  std::vector<Member> members;
  std::size_t dim = rank;
  switch (family) {
    case Family::A: {
      if (rank < 1 || rank > 8) throw range_error();
      dim = rank + 1;
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j) members.push_back({combo(dim, i, one, j, -one), mult("all")});
      break;
    }
    case Family::B:
    case Family::C:
    case Family::D:
    case Family::BC: {
      if (rank < 2 || rank > 8) throw range_error();
      // Orbit names per family: single e_i, mixed e_i +- e_j, double 2 e_i.
      std::optional<Rat> single, mixed, dbl;
      if (family == Family::B) single = mult("short"), mixed = mult("long");
      if (family == Family::C) mixed = mult("short"), dbl = mult("long");
      if (family == Family::D) mixed = mult("all");
      if (family == Family::BC) {
        mixed = mult("middle");
        if (mult("short").sign() != 0 || mult("long").sign() == 0) single = mult("short");
        if (mult("long").sign() != 0) dbl = mult("long");
      }
      if (single)
        for (std::size_t i = 0; i < dim; ++i) members.push_back({basis_vector(dim, i), *single});
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j) {
          members.push_back({combo(dim, i, one, j, -one), *mixed});
          members.push_back({combo(dim, i, one, j, one), *mixed});
        }
      if (dbl)
        for (std::size_t i = 0; i < dim; ++i) members.push_back({basis_vector(dim, i, two), *dbl});
      break;
    }
    case Family::G2: {
      if (rank != 2) throw range_error();
      dim = 3;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) members.push_back({combo(dim, i, one, j, -one), mult("short")});
      for (std::size_t i = 0; i < 3; ++i) {
        CVector v(dim, -one);
        v[i] = two;
        members.push_back({v, mult("long")});
      }
      break;
    }
    default: throw Error(ErrorKind::UnsupportedFamily, to_string(family));
  }
  std::string name = to_string(family) + std::to_string(rank);
  name = detail::describe(name, orbit_multiplicities, parameter_names(family));
  return detail::finish(dim, Rat(1), std::move(members), std::move(name));
}

/// A_n(m) in R^{n+1}: e_i - e_j (i < j <= n) with multiplicity m and
/// e_i - sqrt(m) e_{n+1} (i <= n) with multiplicity 1.
inline Configuration deformed_a(unsigned n, const Rat& m) {
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "A_deformed needs n >= 1");
  if (m.sign() <= 0) throw Error(ErrorKind::InvalidParameter, "A_deformed needs m > 0");
  const std::size_t dim = n + 1;
  const QElem one(1);
  const QElem root = QElem::sqrt_of(m);
  std::vector<Member> members;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) members.push_back({detail::combo(dim, i, one, j, -one), m});
  for (std::size_t i = 0; i < n; ++i) members.push_back({detail::combo(dim, i, one, n, -root), Rat(1)});
  return detail::finish(dim, m, std::move(members), "A_deformed" + std::to_string(n) + "(m=" + m.str() + ")");
}

/// k = (2m + 1)/(2l + 1).
inline Rat deformed_c_k(const Rat& m, const Rat& l) {
  const Rat denom = 2 * l + 1;
  if (denom.sign() == 0) throw Error(ErrorKind::InvalidParameter, "C_deformed needs 2l + 1 != 0");
  return (2 * m + 1) / denom;
}

/// C_{n+1}(m, l) in R^{n+1}: e_i +- e_j (mult k), 2 e_i (mult m),
/// e_i +- sqrt(k) e_{n+1} (mult 1), 2 sqrt(k) e_{n+1} (mult l).
inline Configuration deformed_c(unsigned n, const Rat& m, const Rat& l) {
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "C_deformed needs n >= 1");
  const Rat k = deformed_c_k(m, l);
  if (k.sign() <= 0) throw Error(ErrorKind::InvalidParameter, "C_deformed needs k = (2m+1)/(2l+1) > 0");
  const std::size_t dim = n + 1;
  const QElem one(1);
  const QElem root = QElem::sqrt_of(k);
  std::vector<Member> members;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      members.push_back({detail::combo(dim, i, one, j, -one), k});
      members.push_back({detail::combo(dim, i, one, j, one), k});
    }
  for (std::size_t i = 0; i < n; ++i) members.push_back({detail::basis_vector(dim, i, QElem(2)), m});
  for (std::size_t i = 0; i < n; ++i) {
    members.push_back({detail::combo(dim, i, one, n, root), Rat(1)});
    members.push_back({detail::combo(dim, i, one, n, -root), Rat(1)});
  }
  members.push_back({detail::basis_vector(dim, n, QElem(2) * root), l});
  return detail::finish(dim, k, std::move(members),
                        "C_deformed" + std::to_string(n) + "(m=" + m.str() + ",l=" + l.str() + ")");
}

inline Configuration generate(const FamilySpec& spec) {
  detail::check_params(spec.family, spec.params);
  switch (spec.family) {
    case Family::A_deformed: return deformed_a(spec.rank, spec.params.at("m"));
    case Family::C_deformed: return deformed_c(spec.rank, spec.params.at("m"), spec.params.at("l"));
    default: return coxeter(spec.family, spec.rank, spec.params);
  }
}

}  // namespace veeverify

#endif  // VEEVERIFY_FAMILIES_HPP
