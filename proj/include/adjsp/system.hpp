#pragma once

// Adjunction systems (X_i, A_ij, f_ij) over two interchangeable backends:
// finite Alexandrov spaces with explicit maps, and Euclidean components
// R^d carrying box regions with increasing diagonal affine gluing maps.
// validate() checks the three axioms (identity, symmetry/inverse, cocycle)
// and that every gluing map is a homeomorphism onto its partner region,
// reporting each violation with a concrete witness point.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fintop.hpp"
#include "region.hpp"

namespace adjsp {

struct FiniteBackend {
  using Space = FinSpace;
  using Set = PointSet;
  using Map = FinMap;
  using Point = int;
};

struct EucSpace {
  int dim = 1;  // carrier is all of R^dim
  friend bool operator==(const EucSpace&, const EucSpace&) = default;
};

struct EuclideanBackend {
  using Space = EucSpace;
  using Set = Region;
  using Map = DiagAffine;
  using Point = std::vector<Rat>;
};

// ---- uniform operations over both backends -------------------------------

inline PointSet b_whole(const FinSpace& X) { return X.whole(); }
inline Region b_whole(const EucSpace& X) { return Region::whole(X.dim); }
inline PointSet b_empty(const FinSpace& X) { return X.empty_set(); }
inline Region b_empty(const EucSpace& X) { return Region::empty(X.dim); }

inline bool b_is_empty(const PointSet& s) { return s.empty(); }
inline bool b_is_empty(const Region& r) { return r.is_empty(); }

inline PointSet b_union(const PointSet& a, const PointSet& b) { return set_union(a, b); }
inline Region b_union(const Region& a, const Region& b) { return region_union(a, b); }
inline PointSet b_intersect(const PointSet& a, const PointSet& b) { return set_intersect(a, b); }
inline Region b_intersect(const Region& a, const Region& b) { return region_intersect(a, b); }
inline PointSet b_difference(const PointSet& a, const PointSet& b) { return set_difference(a, b); }
inline Region b_difference(const Region& a, const Region& b) { return region_difference(a, b); }
inline bool b_subset(const PointSet& a, const PointSet& b) { return is_subset(a, b); }
inline bool b_subset(const Region& a, const Region& b) { return region_subset(a, b); }

inline bool b_is_open(const FinSpace& X, const PointSet& s) { return X.is_open(s); }
inline bool b_is_open(const EucSpace&, const Region& r) { return region_is_open(r); }
inline PointSet b_closure(const FinSpace& X, const PointSet& s) { return X.closure(s); }
inline Region b_closure(const EucSpace&, const Region& r) { return region_closure(r); }
inline PointSet b_interior(const FinSpace& X, const PointSet& s) { return X.interior(s); }
inline Region b_interior(const EucSpace&, const Region& r) { return region_interior(r); }
inline PointSet b_boundary(const FinSpace& X, const PointSet& s) { return X.boundary(s); }
inline Region b_boundary(const EucSpace&, const Region& r) { return region_boundary(r); }

inline PointSet b_image(const FinMap& f, const PointSet& s) { return f.image(s); }
inline Region b_image(const DiagAffine& f, const Region& r) { return region_map(r, f); }
inline PointSet b_preimage(const FinMap& f, const PointSet& s) { return f.preimage(s); }
inline Region b_preimage(const DiagAffine& f, const Region& r) { return region_preimage(r, f); }

inline int b_apply(const FinMap& f, int x) { return f(x); }
inline std::vector<Rat> b_apply(const DiagAffine& f, const std::vector<Rat>& p) { return f.apply(p); }

inline bool b_contains(const PointSet& s, int x) { return s.contains(x); }
inline bool b_contains(const Region& r, const std::vector<Rat>& p) { return r.contains(p); }

inline std::string b_point_str(int x) { return std::to_string(x); }
inline std::string b_point_str(const std::vector<Rat>& p) {
  std::string s = "(";
  for (size_t k = 0; k < p.size(); ++k) s += (k ? "," : "") + rat_to_string(p[k]);
  return s + ")";
}
inline std::string b_set_str(const PointSet& s) {
  std::string out = "{";
  bool first = true;
  for (int x : s.points()) {
    if (!first) out += ",";
    out += std::to_string(x);
    first = false;
  }
  return out + "}";
}
inline std::string b_set_str(const Region& r) { return region_to_string(r); }

// One witness point of a nonempty set, for error messages and reports.
inline int b_witness(const PointSet& s) { return s.points().at(0); }
inline std::vector<Rat> b_witness(const Region& r) {
  // sample_points also emits endpoints lying outside open cells; a witness
  // must actually belong to the set
  for (auto& p : sample_points(r))
    if (r.contains(p)) return p;
  throw std::logic_error("witness requested for an empty set");
}

// Finitely many probe points of a set (all points / canonical samples).
inline std::vector<int> b_probe_points(const PointSet& s) { return s.points(); }
inline std::vector<std::vector<Rat>> b_probe_points(const Region& r) {
  std::vector<std::vector<Rat>> out;
  for (auto& p : sample_points(r))
    if (r.contains(p)) out.push_back(std::move(p));
  return out;
}

// Connected components of a subset, as subsets.
inline std::vector<PointSet> b_set_components(const FinSpace& X, const PointSet& s) {
  return X.components(s);
}
inline std::vector<Region> b_set_components(const EucSpace&, const Region& r) {
  return region_components(r);
}

// ---- the system ----------------------------------------------------------

struct Violation {
  std::string axiom;  // "A1" | "A2" | "A3" | "map"
  int i = -1, j = -1, k = -1;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
  std::string str() const {
    std::string s;
    for (const auto& v : violations) {
      s += v.axiom + "(" + std::to_string(v.i) + "," + std::to_string(v.j);
      if (v.k >= 0) s += "," + std::to_string(v.k);
      s += "): " + v.message + "\n";
    }
    return s;
  }
};

template <class B>
struct AdjSystem {
  using Backend = B;
  using Space = typename B::Space;
  using Set = typename B::Set;
  using Map = typename B::Map;

  std::vector<Space> spaces;
  std::vector<std::vector<Set>> A;  // A[i][j] subset of X_i
  std::vector<std::vector<Map>> f;  // f[i][j] defined (at least) on A[i][j], into X_j

  int m() const { return static_cast<int>(spaces.size()); }
};

inline FinMap default_map_between(const FinSpace& X, const FinSpace& Y) {
  return FinMap(X.n(), Y.n(), std::vector<int>(X.n(), 0));
}
inline DiagAffine default_map_between(const EucSpace& X, const EucSpace&) {
  return DiagAffine::identity(X.dim);
}
inline FinMap identity_map_on(const FinSpace& X) { return FinMap::identity(X.n()); }
inline DiagAffine identity_map_on(const EucSpace& X) { return DiagAffine::identity(X.dim); }

// Fresh system with the diagonal filled in (A_ii = X_i, f_ii = id) and all
// off-diagonal gluing empty.
template <class B>
AdjSystem<B> make_system(std::vector<typename B::Space> spaces) {
  AdjSystem<B> s;
  s.spaces = std::move(spaces);
  int m = s.m();
  for (int i = 0; i < m; ++i) {
    s.A.emplace_back();
    s.f.emplace_back();
    for (int j = 0; j < m; ++j) {
      s.A[i].push_back(i == j ? b_whole(s.spaces[i]) : b_empty(s.spaces[i]));
      s.f[i].push_back(i == j ? identity_map_on(s.spaces[i])
                              : default_map_between(s.spaces[i], s.spaces[j]));
    }
  }
  return s;
}

// Install a gluing together with its A2-mandated mirror (A_ji = f_ij(A_ij),
// f_ji = inverse).
inline void set_gluing(AdjSystem<EuclideanBackend>& s, int i, int j, Region a, const DiagAffine& fij) {
  s.A[i][j] = a;
  s.f[i][j] = fij;
  s.A[j][i] = region_map(a, fij);
  s.f[j][i] = invert(fij);
}
inline void set_gluing(AdjSystem<FiniteBackend>& s, int i, int j, PointSet a, const FinMap& fij) {
  s.A[i][j] = a;
  s.f[i][j] = fij;
  s.A[j][i] = fij.image(a);
  // partial inverse on the image; arbitrary (0) elsewhere
  std::vector<int> inv(s.spaces[j].n(), 0);
  for (int x : a.points()) inv[fij(x)] = x;
  s.f[j][i] = FinMap(s.spaces[j].n(), s.spaces[i].n(), std::move(inv));
}

namespace detail {

// Subspace of a finite space induced on s; returns the space and the list of
// original point indices in order.
inline std::pair<FinSpace, std::vector<int>> fin_subspace(const FinSpace& X, const PointSet& s) {
  std::vector<int> pts = s.points();
  std::vector<int> pos(X.n(), -1);
  for (size_t a = 0; a < pts.size(); ++a) pos[pts[a]] = static_cast<int>(a);
  std::vector<std::vector<int>> t(pts.size());
  for (size_t a = 0; a < pts.size(); ++a)
    for (int y : set_intersect(X.min_open(pts[a]), s).points()) t[a].push_back(pos[y]);
  return {FinSpace(std::move(t)), pts};
}

// Is f a homeomorphism from the subspace on a (in X) onto the subspace on b (in Y)?
inline bool fin_subspace_homeo(const FinSpace& X, const PointSet& a, const FinSpace& Y,
                               const PointSet& b, const FinMap& fmap) {
  if (a.count() != b.count()) return false;
  auto [SA, pa] = fin_subspace(X, a);
  auto [SB, pb] = fin_subspace(Y, b);
  std::vector<int> pos_b(Y.n(), -1);
  for (size_t q = 0; q < pb.size(); ++q) pos_b[pb[q]] = static_cast<int>(q);
  std::vector<int> table(pa.size());
  std::vector<char> hit(pb.size(), 0);
  for (size_t q = 0; q < pa.size(); ++q) {
    int y = fmap(pa[q]);
    if (!b.contains(y)) return false;
    table[q] = pos_b[y];
    hit[pos_b[y]] = 1;
  }
  for (char h : hit)
    if (!h) return false;  // not surjective
  FinMap g(SA.n(), SB.n(), table);
  if (g.image(SA.whole()).count() != SA.n()) return false;  // not injective
  std::vector<int> inv(SB.n());
  for (int x = 0; x < SA.n(); ++x) inv[g(x)] = x;
  FinMap gi(SB.n(), SA.n(), std::move(inv));
  return check_continuous(SA, SB, g) && check_continuous(SB, SA, gi);
}

}  // namespace detail

template <class B>
ValidationReport validate(const AdjSystem<B>& sys) {
  ValidationReport rep;
  int m = sys.m();
  auto add = [&](std::string ax, int i, int j, int k, std::string msg) {
    rep.violations.push_back({std::move(ax), i, j, k, std::move(msg)});
  };

  for (int i = 0; i < m; ++i) {
    // A1: A_ii = X_i and f_ii = id
    if (!(sys.A[i][i] == b_whole(sys.spaces[i])))
      add("A1", i, i, -1, "A_ii is not the whole component");
    bool id_ok = true;
    if constexpr (std::is_same_v<B, FiniteBackend>) {
      for (int x = 0; x < sys.spaces[i].n(); ++x)
        if (sys.f[i][i](x) != x) { id_ok = false; break; }
    } else {
      id_ok = sys.f[i][i].is_identity();
    }
    if (!id_ok) add("A1", i, i, -1, "f_ii is not the identity");
  }

  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      const auto& Aij = sys.A[i][j];
      const auto& fij = sys.f[i][j];
      // A2 part 1: f_ij(A_ij) = A_ji
      auto img = b_image(fij, Aij);
      if (!(img == sys.A[j][i])) {
        auto diff = b_union(b_difference(img, sys.A[j][i]), b_difference(sys.A[j][i], img));
        add("A2", i, j, -1,
            "f_ij(A_ij) != A_ji; witness " + b_point_str(b_witness(diff)) + " in X_" + std::to_string(j));
        continue;  // downstream checks would cascade
      }
      // A2 part 2: f_ji o f_ij = id on A_ij
      if constexpr (std::is_same_v<B, FiniteBackend>) {
        for (int x : Aij.points())
          if (sys.f[j][i](fij(x)) != x) {
            add("A2", i, j, -1, "f_ji(f_ij(x)) != x at x = " + std::to_string(x));
            break;
          }
      } else {
        if (!maps_agree_on(compose(sys.f[j][i], fij), DiagAffine::identity(fij.dim()), Aij))
          add("A2", i, j, -1, "f_ji o f_ij is not the identity on A_ij");
      }
      // the gluing map must be a homeomorphism A_ij -> A_ji
      if constexpr (std::is_same_v<B, FiniteBackend>) {
        if (!detail::fin_subspace_homeo(sys.spaces[i], Aij, sys.spaces[j], sys.A[j][i], fij))
          add("map", i, j, -1, "f_ij is not a homeomorphism from A_ij onto A_ji");
      }
      // (euclidean: DiagAffine maps are global homeomorphisms and the image
      // equality was already checked, so nothing further to verify)
    }

  // A3: on A_ij n A_ik, f_ij lands in A_jk and f_jk o f_ij = f_ik
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        if (i == j || j == k || i == k) continue;
        auto D = b_intersect(sys.A[i][j], sys.A[i][k]);
        if (b_is_empty(D)) continue;
        if constexpr (std::is_same_v<B, FiniteBackend>) {
          for (int x : D.points()) {
            int y = sys.f[i][j](x);
            if (!sys.A[j][k].contains(y)) {
              add("A3", i, j, k, "f_ij(x) outside A_jk at x = " + std::to_string(x));
              break;
            }
            if (sys.f[j][k](y) != sys.f[i][k](x)) {
              add("A3", i, j, k, "f_jk(f_ij(x)) != f_ik(x) at x = " + std::to_string(x));
              break;
            }
          }
        } else {
          auto img = b_image(sys.f[i][j], D);
          if (!b_subset(img, sys.A[j][k])) {
            auto out = b_difference(img, sys.A[j][k]);
            add("A3", i, j, k, "f_ij(A_ij n A_ik) escapes A_jk; witness " + b_point_str(b_witness(out)));
            continue;
          }
          if (!maps_agree_on(compose(sys.f[j][k], sys.f[i][j]), sys.f[i][k], D))
            add("A3", i, j, k, "f_jk o f_ij != f_ik on A_ij n A_ik");
        }
      }
  return rep;
}

// Component graph: edge i-j (i < j) iff the gluing region is nonempty.
template <class B>
std::vector<std::pair<int, int>> component_graph(const AdjSystem<B>& sys) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < sys.m(); ++i)
    for (int j = i + 1; j < sys.m(); ++j)
      if (!b_is_empty(sys.A[i][j])) edges.emplace_back(i, j);
  return edges;
}

template <class B>
bool all_gluing_regions_open(const AdjSystem<B>& sys) {
  for (int i = 0; i < sys.m(); ++i)
    for (int j = 0; j < sys.m(); ++j)
      if (i != j && !b_is_open(sys.spaces[i], sys.A[i][j])) return false;
  return true;
}

// Restriction of the system to index subset J (order-preserving reindex).
template <class B>
AdjSystem<B> subsystem(const AdjSystem<B>& sys, const std::vector<int>& J) {
  if (J.empty()) throw std::invalid_argument("subsystem index set must be nonempty");
  AdjSystem<B> out;
  for (int i : J) out.spaces.push_back(sys.spaces.at(i));
  for (size_t a = 0; a < J.size(); ++a) {
    out.A.emplace_back();
    out.f.emplace_back();
    for (size_t b = 0; b < J.size(); ++b) {
      out.A[a].push_back(sys.A[J[a]][J[b]]);
      out.f[a].push_back(sys.f[J[a]][J[b]]);
    }
  }
  return out;
}

using FinAdjSystem = AdjSystem<FiniteBackend>;
using EucAdjSystem = AdjSystem<EuclideanBackend>;

}  // namespace adjsp
