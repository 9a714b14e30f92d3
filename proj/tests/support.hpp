#ifndef VEEVERIFY_TESTS_SUPPORT_HPP
#define VEEVERIFY_TESTS_SUPPORT_HPP

// Shared fixtures for the unit tests and the acceptance runner.

#include <cstdio>
#include <string>
#include <vector>

#include "veeverify/veeverify.hpp"

namespace vt {

using namespace veeverify;

inline QElem q(const Rat& a) { return QElem(a); }
inline QElem q(int a) { return QElem(Rat(a)); }
inline QElem q(const Rat& a, const Rat& b, const Rat& d) { return QElem(a, b, d); }
inline Rat r(long p, long qd = 1) { return Rat(p, qd); }

/// A2 in the plane: (1,0), (1/2, sqrt3/2), (-1/2, sqrt3/2), direction (1, 1/10).
inline Configuration a2_plane(const Rat& m1 = 1, const Rat& m2 = 1, const Rat& m3 = 1) {
  const Rat d = 3;
  std::vector<Member> ms = {
      {{q(1), q(0)}, m1},
      {{q(r(1, 2), 0, d), q(0, r(1, 2), d)}, m2},
      {{q(r(-1, 2), 0, d), q(0, r(1, 2), d)}, m3},
  };
  return build_config(2, d, ms, {r(1), r(1, 10)}, "A2-plane");
}

inline Configuration single_vector(const Rat& m) {
  return build_config(1, 0, {{{q(1)}, m}}, {r(1)}, "A1");
}

inline Configuration orthogonal_pair(const Rat& m1 = 1, const Rat& m2 = 1) {
  return build_config(2, 0, {{{q(1), q(0)}, m1}, {{q(0), q(1)}, m2}}, {r(1), r(1, 2)}, "A1xA1");
}

/// Root system of A3 with the first root carrying multiplicity `m0`.
inline Configuration a3_with_heavy_root(const Rat& m0) {
  Configuration base = coxeter(Family::A, 3, {{"all", Rat(1)}});
  std::vector<Member> ms = base.members();
  ms[0].multiplicity = m0;
  return build_config(base.ambient_dim(), base.radicand(), ms, base.direction(), "A3-heavy");
}

struct Named {
  std::string label;
  Configuration cfg;
};

/// Configurations that satisfy the Main Identity.
inline std::vector<Named> passing_suite() {
  std::vector<Named> out;
  const auto add = [&](std::string label, Configuration c) { out.push_back({std::move(label), std::move(c)}); };
  add("A2(1)", coxeter(Family::A, 2, {{"all", r(1)}}));
  add("A3(2)", coxeter(Family::A, 3, {{"all", r(2)}}));
  add("B2(1,3)", coxeter(Family::B, 2, {{"short", r(1)}, {"long", r(3)}}));
  add("B3(1/2,2)", coxeter(Family::B, 3, {{"short", r(1, 2)}, {"long", r(2)}}));
  add("D4(1)", coxeter(Family::D, 4, {{"all", r(1)}}));
  add("G2(1,1)", coxeter(Family::G2, 2, {{"short", r(1)}, {"long", r(1)}}));
  add("G2(2,1/3)", coxeter(Family::G2, 2, {{"short", r(2)}, {"long", r(1, 3)}}));
  for (unsigned n : {2u, 3u})
    for (const Rat& m : {r(2), r(3), r(1, 2)})
      add("A_deformed(" + std::to_string(n) + "," + m.str() + ")", deformed_a(n, m));
  for (auto [n, m, l] : {std::tuple{1u, 1L, 1L}, {1u, 3L, 1L}, {2u, 2L, 1L}, {2u, 3L, 0L}})
    add("C_deformed(" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(l) + ")",
        deformed_c(n, r(m), r(l)));
  return out;
}

inline std::vector<double> sample_coords(const Configuration& cfg, SampleMode mode, std::uint64_t seed,
                                         std::uint64_t stream = 0) {
  return sample_point<double>(cfg, mode, seed, kDefaultAttemptBudget, stream).coords;
}

}  // namespace vt

#endif  // VEEVERIFY_TESTS_SUPPORT_HPP
