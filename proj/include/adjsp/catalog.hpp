#pragma once

// Named example systems used by the tests and the CLI, plus the
// distinguished glued subsets that go with two of them.

#include <variant>

#include "glued.hpp"

namespace adjsp {

// n copies of R, every pair glued along (-inf, 0) by the identity.
inline EucAdjSystem catalog_branched_line(int n) {
  if (n < 1) throw std::invalid_argument("branched line needs n >= 1");
  auto sys = make_system<EuclideanBackend>(std::vector<EucSpace>(n, EucSpace{1}));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      set_gluing(sys, i, j, Region::of_interval(Interval::below(Rat(0))), DiagAffine::identity(1));
  return sys;
}

// Three copies of R; 0~1 along (-inf, 0), 1~2 along (0, inf), no direct 0~2
// gluing. The three-fold overlap regions are empty, so the cocycle condition
// holds vacuously.
inline EucAdjSystem catalog_nontransitive_line() {
  auto sys = make_system<EuclideanBackend>(std::vector<EucSpace>(3, EucSpace{1}));
  set_gluing(sys, 0, 1, Region::of_interval(Interval::below(Rat(0))), DiagAffine::identity(1));
  set_gluing(sys, 1, 2, Region::of_interval(Interval::above(Rat(0))), DiagAffine::identity(1));
  return sys;
}

// Two copies of R^2 glued along the open lower half-plane.
inline EucAdjSystem catalog_doubled_plane() {
  auto sys = make_system<EuclideanBackend>(std::vector<EucSpace>(2, EucSpace{2}));
  set_gluing(sys, 0, 1, Region::box2(Interval::line(), Interval::below(Rat(0))), DiagAffine::identity(2));
  return sys;
}

// The distinguished subset of the doubled plane: each copy minus one closed
// half-axis, saturated.
inline GluedSet<EuclideanBackend> doubled_plane_V(const EucGlued& g) {
  auto pos_axis = Region::box2(Interval::above(Rat(0), true), Interval::point(Rat(0)));
  auto neg_axis = Region::box2(Interval::below(Rat(0), true), Interval::point(Rat(0)));
  return g.saturate({region_complement(pos_axis), region_complement(neg_axis)});
}

// k copies of R, components a and b glued along (-inf, min(a,b)+1).
inline EucAdjSystem catalog_truncated(int k) {
  if (k < 2) throw std::invalid_argument("truncated family needs k >= 2");
  auto sys = make_system<EuclideanBackend>(std::vector<EucSpace>(k, EucSpace{1}));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      set_gluing(sys, i, j, Region::of_interval(Interval::below(Rat(std::min(i, j) + 1))),
                 DiagAffine::identity(1));
  return sys;
}

// The union of all gluing regions, saturated.
template <class B>
GluedSet<B> gluing_union_V(const Glued<B>& g) {
  const auto& sys = g.system();
  auto raw = g.empty_set().parts;
  for (int i = 0; i < sys.m(); ++i)
    for (int j = 0; j < sys.m(); ++j)
      if (i != j) raw[i] = b_union(raw[i], sys.A[i][j]);
  return g.saturate(std::move(raw));
}

// The 3-point line model: two closed endpoints, one open middle point whose
// minimal open set is everything.
inline FinSpace catalog_line3() { return FinSpace({{0}, {0, 1, 2}, {2}}); }

// n copies of the 3-point line, glued pairwise at the left endpoint.
inline FinAdjSystem catalog_finite_branched(int n) {
  if (n < 1) throw std::invalid_argument("finite branched line needs n >= 1");
  auto sys = make_system<FiniteBackend>(std::vector<FinSpace>(n, catalog_line3()));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) set_gluing(sys, i, j, PointSet::of(3, {0}), FinMap::identity(3));
  return sys;
}

using CatalogSystem = std::variant<FinAdjSystem, EucAdjSystem>;

inline CatalogSystem build_catalog(const std::string& name, int n = 2, int k = 2) {
  if (name == "n_branched_line") return catalog_branched_line(n);
  if (name == "nontransitive_line") return catalog_nontransitive_line();
  if (name == "doubled_plane") return catalog_doubled_plane();
  if (name == "N_truncated") return catalog_truncated(k);
  if (name == "finite_branched") return catalog_finite_branched(n);
  throw std::invalid_argument("unknown catalog name: " + name);
}

inline std::vector<std::string> catalog_names() {
  return {"n_branched_line", "nontransitive_line", "doubled_plane", "N_truncated", "finite_branched"};
}

}  // namespace adjsp
