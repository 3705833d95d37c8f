#pragma once

// The inseparability relation Y on a glued space and everything built on it:
// Y-pair families, Y^W sets, the boundary criterion for canonical images,
// the H-submanifold (Hajicek) criterion, relative openness of Y^V inside
// gluing-region boundaries, subsystem preservation, the extension lemma,
// and the grid-candidate uniqueness experiment.
//
// Finite backend: decided exactly through minimal opens of the quotient.
// Euclidean backend: decided through the boundary characterization of the
// relation, which needs every gluing region open (queries refuse otherwise).

#include <array>

#include "glued.hpp"

namespace adjsp {

template <class B>
struct YEntry {
  int i, j;                 // pairs [x,i] ~ [f(x),j] for x in the region
  typename B::Set region;   // subset of the boundary of A_ij in X_i
  typename B::Map pairing;
};

template <class B>
struct YPairFamily {
  std::vector<YEntry<B>> entries;
  bool empty() const { return entries.empty(); }
};

template <class B>
void require_y_hypotheses(const Glued<B>& g) {
  if constexpr (std::is_same_v<B, EuclideanBackend>) {
    if (!all_gluing_regions_open(g.system()))
      throw std::invalid_argument("Y-queries on the euclidean backend need open gluing regions");
  }
}

// The finitely presented Y-relation: one entry per ordered pair of components
// with a nonempty gluing-region boundary.
template <class B>
YPairFamily<B> y_pairs(const Glued<B>& g) {
  require_y_hypotheses(g);
  const auto& sys = g.system();
  YPairFamily<B> fam;
  for (int i = 0; i < sys.m(); ++i)
    for (int j = 0; j < sys.m(); ++j) {
      if (i == j) continue;
      auto bd = b_boundary(sys.spaces[i], sys.A[i][j]);
      if (!b_is_empty(bd)) fam.entries.push_back({i, j, std::move(bd), sys.f[i][j]});
    }
  return fam;
}

template <class B>
bool y_related(const Glued<B>& g, const GluedPoint<B>& p, const GluedPoint<B>& q) {
  require_y_hypotheses(g);
  auto pc = g.canonical_map(p.i, p.x), qc = g.canonical_map(q.i, q.x);
  if (pc == qc) return false;  // irreflexive
  if constexpr (std::is_same_v<B, FiniteBackend>) {
    const auto& fq = g.finite_quotient();
    int a = fq.proj(fq.offsets[pc.i] + pc.x);
    int b = fq.proj(fq.offsets[qc.i] + qc.x);
    return !fq.Q.separable_pair(a, b);
  } else {
    const auto& sys = g.system();
    auto one_direction = [&](const GluedPoint<B>& s, const GluedPoint<B>& t) {
      // walk over all representatives (k, xk) of s
      for (int k = 0; k < sys.m(); ++k) {
        if (!b_contains(sys.A[s.i][k], s.x)) continue;
        auto xk = b_apply(sys.f[s.i][k], s.x);
        for (int l = 0; l < sys.m(); ++l) {
          if (l == k) continue;
          if (!b_contains(b_boundary(sys.spaces[k], sys.A[k][l]), xk)) continue;
          if (g.canonical_map(l, b_apply(sys.f[k][l], xk)) == t) return true;
        }
      }
      return false;
    };
    return one_direction(pc, qc) || one_direction(qc, pc);
  }
}

// Y^W: everything Y-related to some member of W.
template <class B>
GluedSet<B> y_set(const Glued<B>& g, const GluedSet<B>& w) {
  require_y_hypotheses(g);
  const auto& sys = g.system();
  if constexpr (std::is_same_v<B, FiniteBackend>) {
    const auto& Q = g.finite_quotient().Q;
    auto wc = g.class_set(w);
    PointSet out(Q.n());
    for (auto [a, b] : Q.y_pairs()) {
      if (wc.contains(a)) out.add(b);
      if (wc.contains(b)) out.add(a);
    }
    return g.from_class_set(out);
  } else {
    auto raw = g.empty_set().parts;
    for (int i = 0; i < sys.m(); ++i)
      for (int j = 0; j < sys.m(); ++j) {
        if (i == j) continue;
        // [x,i] with x on the boundary of A_ij pairs with [f(x),j]; it lands
        // in Y^W iff the partner lies in W
        auto bd = b_boundary(sys.spaces[i], sys.A[i][j]);
        raw[i] = b_union(raw[i], b_intersect(bd, b_preimage(sys.f[i][j], w.parts[j])));
      }
    return g.saturate(std::move(raw));
  }
}

// Boundary/closure of glued sets usable on every valid finite system (via the
// explicit quotient) and on open euclidean systems (per-component rule).
template <class B>
GluedSet<B> hb_closure(const Glued<B>& g, const GluedSet<B>& v) {
  if constexpr (std::is_same_v<B, FiniteBackend>) {
    const auto& fq = g.finite_quotient();
    return g.from_class_set(fq.Q.closure(g.class_set(v)));
  } else {
    return g.glued_closure(v);
  }
}
template <class B>
GluedSet<B> hb_boundary(const Glued<B>& g, const GluedSet<B>& v) {
  if constexpr (std::is_same_v<B, FiniteBackend>) {
    const auto& fq = g.finite_quotient();
    return g.from_class_set(fq.Q.boundary(g.class_set(v)));
  } else {
    return g.glued_boundary(v);
  }
}

// Does some Y-pair have both ends inside V?
template <class B>
bool has_internal_y_pair(const Glued<B>& g, const GluedSet<B>& v) {
  require_y_hypotheses(g);
  const auto& sys = g.system();
  if constexpr (std::is_same_v<B, FiniteBackend>) {
    auto vc = g.class_set(v);
    for (auto [a, b] : g.finite_quotient().Q.y_pairs())
      if (vc.contains(a) && vc.contains(b)) return true;
    return false;
  } else {
    for (int i = 0; i < sys.m(); ++i)
      for (int j = 0; j < sys.m(); ++j) {
        if (i == j) continue;
        auto bd = b_boundary(sys.spaces[i], sys.A[i][j]);
        auto both = b_intersect(b_intersect(bd, v.parts[i]), b_preimage(sys.f[i][j], v.parts[j]));
        if (!b_is_empty(both)) return true;
      }
    return false;
  }
}

template <class B>
bool boundary_eq_y_check(const Glued<B>& g, const GluedSet<B>& v) {
  return hb_boundary(g, v) == y_set(g, v);
}

template <class B>
struct HajicekReport {
  bool open = false, connected = false, hausdorff = false;
  GluedSet<B> boundary, y, cl_y;
  bool criterion = false;      // boundary == Cl(Y^V)
  bool boundary_eq_y = false;  // boundary == Y^V (stronger; can fail while the criterion holds)
  bool is_h_submanifold = false;
};

template <class B>
HajicekReport<B> hajicek_check(const Glued<B>& g, const GluedSet<B>& v) {
  require_y_hypotheses(g);
  HajicekReport<B> r;
  r.open = g.is_open(v);
  r.connected = g.is_connected(v);
  r.hausdorff = !has_internal_y_pair(g, v);
  r.boundary = hb_boundary(g, v);
  r.y = y_set(g, v);
  r.cl_y = hb_closure(g, r.y);
  r.criterion = r.boundary == r.cl_y;
  r.boundary_eq_y = r.boundary == r.y;
  r.is_h_submanifold = r.open && r.connected && r.hausdorff && r.criterion;
  return r;
}

// For every ordered pair (i,j): Y^V restricted to the glued boundary of
// phi_i(A_ij) is relatively open there; and if that boundary is connected and
// the intersection nonempty, it is wholly contained in Y^V.
template <class B>
bool y_boundary_openness_check(const Glued<B>& g, const GluedSet<B>& v) {
  if (!boundary_eq_y_check(g, v))
    throw std::invalid_argument("hypothesis failure: the boundary of V does not equal Y^V");
  const auto& sys = g.system();
  auto yv = y_set(g, v);
  for (int i = 0; i < sys.m(); ++i)
    for (int j = 0; j < sys.m(); ++j) {
      if (i == j || b_is_empty(sys.A[i][j])) continue;
      auto bd = hb_boundary(g, g.pushforward_i(i, sys.A[i][j]));
      auto inter = g.gs_intersect(yv, bd);
      // relatively open in bd: the intersection misses the closure of its
      // complement within bd
      auto rest = g.gs_difference(bd, inter);
      if (!g.gs_is_empty(g.gs_intersect(inter, hb_closure(g, rest)))) return false;
      if (!g.gs_is_empty(inter) && g.is_connected(bd) && !g.gs_subset(bd, yv)) return false;
    }
  return true;
}

// Recompute both sides of the boundary identity inside the subsystem on J.
template <class B>
bool subsystem_preservation_check(const Glued<B>& g, const GluedSet<B>& v, const std::vector<int>& J) {
  if (!set_within_sub_image(g, J, v))
    throw std::invalid_argument("V is not contained in the subsystem image");
  if (!boundary_eq_y_check(g, v))
    throw std::invalid_argument("hypothesis failure: boundary of V != Y^V in the full space");
  Glued<B> sub(subsystem(g.system(), J), /*check=*/false);
  auto vsub = restrict_to_sub(g, sub, J, v);
  return boundary_eq_y_check(sub, vsub);
}

template <class B>
struct ExtensionCheck {
  bool hypotheses_held = false;  // V meets U and U avoids Y^V
  bool contained = false;        // U subset of V (only meaningful when held)
  bool ok() const { return !hypotheses_held || contained; }
};

// If U is open, internally Hausdorff and connected, meets V, and avoids Y^V,
// then U must lie inside the H-submanifold V.
template <class B>
ExtensionCheck<B> extension_lemma_check(const Glued<B>& g, const GluedSet<B>& v, const GluedSet<B>& u) {
  auto rep = hajicek_check(g, v);
  if (!rep.is_h_submanifold)
    throw std::invalid_argument("V is not an H-submanifold");
  if (!g.is_open(u) || has_internal_y_pair(g, u) || !g.is_connected(u))
    throw std::invalid_argument("U must be open, Hausdorff and connected");
  ExtensionCheck<B> out;
  auto yv = y_set(g, v);
  out.hypotheses_held = !g.gs_is_empty(g.gs_intersect(v, u)) && g.gs_is_empty(g.gs_intersect(u, yv));
  if (out.hypotheses_held) out.contained = g.gs_subset(u, v);
  return out;
}

// ---- grid candidate enumeration (euclidean, dim 1) ------------------------

namespace detail {

inline std::vector<Region> open_grid_unions(const std::vector<Rat>& grid) {
  auto atoms = make_atoms(grid);
  std::vector<Region> out;
  for (unsigned mask = 0; mask < (1u << atoms.size()); ++mask) {
    std::vector<Box> cells;
    for (size_t a = 0; a < atoms.size(); ++a)
      if (mask & (1u << a)) cells.push_back(Box{atoms[a].iv});
    Region r(1, std::move(cells));
    if (region_is_open(r)) out.push_back(std::move(r));
  }
  // distinct masks can canonicalize to the same region; dedupe
  std::sort(out.begin(), out.end(), [](const Region& x, const Region& y) {
    return region_to_string(x) < region_to_string(y);
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

// All open, connected, internally Hausdorff, nonempty glued sets whose
// per-component preimages are unions of grid cells.
inline std::vector<GluedSet<EuclideanBackend>> enumerate_h_candidates(const EucGlued& g,
                                                                      std::vector<Rat> grid) {
  require_y_hypotheses(g);
  if (grid.empty()) throw std::invalid_argument("empty grid");
  for (const auto& X : g.system().spaces)
    if (X.dim != 1) throw std::invalid_argument("grid enumeration works on 1-dimensional components");
  detail::sort_unique(grid);
  const auto& sys = g.system();
  int m = sys.m();
  auto cands = detail::open_grid_unions(grid);
  int nc = static_cast<int>(cands.size());

  // Saturation-consistency decomposes into pairwise subset facts:
  // f_ij(S_i n A_ij) must lie inside S_j. Precompute the truth table.
  // consistent[i][j][a][b] : image of candidate a (in X_i) fits candidate b (in X_j)
  std::vector imgs(m, std::vector(m, std::vector<Region>()));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      imgs[i][j].reserve(nc);
      for (int a = 0; a < nc; ++a)
        imgs[i][j].push_back(b_image(sys.f[i][j], b_intersect(cands[a], sys.A[i][j])));
    }
  std::vector ok(m, std::vector(m, std::vector<std::vector<char>>()));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      ok[i][j].assign(nc, std::vector<char>(nc));
      for (int a = 0; a < nc; ++a)
        for (int b = 0; b < nc; ++b) ok[i][j][a][b] = region_subset(imgs[i][j][a], cands[b]);
    }

  std::vector<GluedSet<EuclideanBackend>> out;
  std::vector<int> choice(m, 0);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == m) {
      std::vector<Region> parts;
      for (int k = 0; k < m; ++k) parts.push_back(cands[choice[k]]);
      GluedSet<EuclideanBackend> s{std::move(parts)};
      if (g.gs_is_empty(s)) return;
      if (!g.is_connected(s)) return;
      if (has_internal_y_pair(g, s)) return;
      out.push_back(std::move(s));
      return;
    }
    for (int a = 0; a < nc; ++a) {
      bool fits = true;
      for (int j = 0; j < i && fits; ++j)
        fits = ok[i][j][a][choice[j]] && ok[j][i][choice[j]][a];
      if (!fits) continue;
      choice[i] = a;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

// The candidates additionally satisfying the exact identity boundary == Y^V.
inline std::vector<GluedSet<EuclideanBackend>> uniqueness_experiment(const EucGlued& g,
                                                                     std::vector<Rat> grid) {
  std::vector<GluedSet<EuclideanBackend>> out;
  for (auto& v : enumerate_h_candidates(g, std::move(grid)))
    if (boundary_eq_y_check(g, v)) out.push_back(std::move(v));
  return out;
}

// ---- non-transitivity witnesses -------------------------------------------

// The finitely many classes met by gluing-region boundaries.
inline std::vector<GluedPoint<EuclideanBackend>> boundary_classes(const EucGlued& g) {
  const auto& sys = g.system();
  std::vector<GluedPoint<EuclideanBackend>> out;
  for (int i = 0; i < sys.m(); ++i)
    for (int j = 0; j < sys.m(); ++j) {
      if (i == j) continue;
      for (auto& p : sample_points(b_boundary(sys.spaces[i], sys.A[i][j]))) {
        auto c = g.canonical_map(i, p);
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
      }
    }
  return out;
}

// Triples (p,q,r) with p Y q and q Y r but not p Y r.
inline std::vector<std::array<GluedPoint<EuclideanBackend>, 3>> y_transitivity_report(const EucGlued& g) {
  auto cls = boundary_classes(g);
  std::vector<std::array<GluedPoint<EuclideanBackend>, 3>> out;
  for (size_t a = 0; a < cls.size(); ++a)
    for (size_t b = 0; b < cls.size(); ++b) {
      if (a == b) continue;
      for (size_t c = a + 1; c < cls.size(); ++c) {
        if (c == b) continue;
        if (y_related(g, cls[a], cls[b]) && y_related(g, cls[b], cls[c]) &&
            !y_related(g, cls[a], cls[c]))
          out.push_back({cls[a], cls[b], cls[c]});
      }
    }
  return out;
}

inline std::vector<std::array<int, 3>> y_transitivity_report_finite(const FinGlued& g) {
  const auto& Q = g.finite_quotient().Q;
  std::vector<std::array<int, 3>> out;
  for (int a = 0; a < Q.n(); ++a)
    for (int b = 0; b < Q.n(); ++b) {
      if (a == b) continue;
      for (int c = a + 1; c < Q.n(); ++c) {
        if (c == b) continue;
        if (!Q.separable_pair(a, b) && !Q.separable_pair(b, c) && Q.separable_pair(a, c))
          out.push_back({a, b, c});
      }
    }
  return out;
}

}  // namespace adjsp
