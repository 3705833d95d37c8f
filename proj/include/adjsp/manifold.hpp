#pragma once

// Manifold-specific layer: the adjoined-manifold hypothesis report, chart
// construction with a fixed deterministic radius rule, the representation
// round-trip, and the exact partition-of-unity checker over piecewise-linear
// rational functions (1-dimensional components).

#include "hausdorff.hpp"

namespace adjsp {

// ---- piecewise-linear functions -------------------------------------------

// One component's worth of a PL function: affine interpolation between the
// break values, constant tails beyond the extreme breakpoints. With no breaks
// the function is the constant left_tail (== right_tail).
struct PLComponent {
  std::vector<Rat> breaks;  // strictly increasing
  std::vector<Rat> values;  // same length as breaks
  Rat left_tail = 0, right_tail = 0;

  bool well_formed() const {
    if (breaks.size() != values.size()) return false;
    for (size_t k = 0; k + 1 < breaks.size(); ++k)
      if (!(breaks[k] < breaks[k + 1])) return false;
    return true;
  }
  // continuity at the tail joints (between breaks it is automatic)
  bool continuous() const {
    if (!well_formed()) return false;
    if (breaks.empty()) return left_tail == right_tail;
    return left_tail == values.front() && right_tail == values.back();
  }

  Rat eval(const Rat& x) const {
    if (breaks.empty() || x <= breaks.front()) return breaks.empty() ? left_tail : values.front();
    if (x >= breaks.back()) return values.back();
    size_t k = 0;
    while (x > breaks[k + 1]) ++k;
    const Rat& x0 = breaks[k];
    const Rat& x1 = breaks[k + 1];
    return values[k] + (values[k + 1] - values[k]) * (x - x0) / (x1 - x0);
  }

  friend bool operator==(const PLComponent&, const PLComponent&) = default;
};

inline PLComponent pl_constant(Rat c) { return PLComponent{{}, {}, c, c}; }

// Resample onto a superset of breakpoints (value-preserving for continuous input).
inline PLComponent pl_refine(const PLComponent& f, std::vector<Rat> breaks) {
  for (const Rat& b : f.breaks) breaks.push_back(b);
  detail::sort_unique(breaks);
  PLComponent out;
  out.breaks = std::move(breaks);
  for (const Rat& b : out.breaks) out.values.push_back(f.eval(b));
  out.left_tail = out.breaks.empty() ? f.left_tail : out.values.front();
  out.right_tail = out.breaks.empty() ? f.right_tail : out.values.back();
  return out;
}

inline PLComponent pl_add(const PLComponent& f, const PLComponent& g) {
  std::vector<Rat> breaks = f.breaks;
  breaks.insert(breaks.end(), g.breaks.begin(), g.breaks.end());
  detail::sort_unique(breaks);
  PLComponent out;
  out.breaks = breaks;
  for (const Rat& b : breaks) out.values.push_back(f.eval(b) + g.eval(b));
  out.left_tail = f.left_tail + g.left_tail;
  out.right_tail = f.right_tail + g.right_tail;
  return out;
}

inline PLComponent pl_negate(const PLComponent& f) {
  PLComponent out = f;
  for (auto& v : out.values) v = -v;
  out.left_tail = -out.left_tail;
  out.right_tail = -out.right_tail;
  return out;
}

// Precompose a continuous PL function with the increasing affine map x -> ax+b:
// (f o m)(x) = f(ax + b).
inline PLComponent pl_precompose(const PLComponent& f, const DiagAffine& m) {
  if (m.dim() != 1) throw std::invalid_argument("PL functions live on 1-dimensional components");
  PLComponent out;
  for (const Rat& b : f.breaks) out.breaks.push_back((b - m.b[0]) / m.a[0]);
  out.values = f.values;
  out.left_tail = f.left_tail;
  out.right_tail = f.right_tail;
  return out;
}

inline bool pl_is_constant(const PLComponent& f, const Rat& c) {
  if (f.left_tail != c || f.right_tail != c) return false;
  for (const auto& v : f.values)
    if (v != c) return false;
  return true;
}

// A rational point where the continuous PL function differs from the constant c.
inline std::optional<Rat> pl_not_constant_witness(const PLComponent& f, const Rat& c) {
  if (f.breaks.empty()) {
    if (f.left_tail != c) return Rat(0);
    return std::nullopt;
  }
  if (f.left_tail != c) return f.breaks.front() - 1;
  for (size_t k = 0; k < f.breaks.size(); ++k)
    if (f.values[k] != c) return f.breaks[k];
  if (f.right_tail != c) return f.breaks.back() + 1;
  return std::nullopt;
}

// {x : f(x) != 0} for a continuous PL function, as an exact region.
inline Region pl_nonzero_set(const PLComponent& f) {
  if (!f.continuous()) throw std::invalid_argument("nonzero set needs a continuous PL function");
  if (f.breaks.empty())
    return f.left_tail == 0 ? Region::empty(1) : Region::whole(1);
  Region out = Region::empty(1);
  auto add = [&](Interval iv) { out = region_union(out, Region::of_interval(std::move(iv))); };
  if (f.values.front() != 0) add(Interval::below(f.breaks.front(), true));
  if (f.values.back() != 0) add(Interval::above(f.breaks.back(), true));
  for (size_t k = 0; k + 1 < f.breaks.size(); ++k) {
    const Rat &x0 = f.breaks[k], &x1 = f.breaks[k + 1];
    const Rat &v0 = f.values[k], &v1 = f.values[k + 1];
    if (v0 == 0 && v1 == 0) continue;
    if (v0 == 0) { add(Interval(ExtRat(x0), false, ExtRat(x1), true)); continue; }
    if (v1 == 0) { add(Interval(ExtRat(x0), true, ExtRat(x1), false)); continue; }
    if ((v0 > 0) == (v1 > 0)) { add(Interval::closed(x0, x1)); continue; }
    Rat z = x0 + (x1 - x0) * (-v0) / (v1 - v0);  // the single interior zero
    add(Interval(ExtRat(x0), true, ExtRat(z), false));
    add(Interval(ExtRat(z), false, ExtRat(x1), true));
  }
  return out;
}

// A function on the glued space, one PL description per component.
struct PLFunction {
  std::vector<PLComponent> comps;
};

// A point (component, coordinate) where the per-component descriptions
// disagree across a gluing, if any.
inline std::optional<std::pair<int, Rat>> pl_well_defined_witness(const EucGlued& g, const PLFunction& psi) {
  const auto& sys = g.system();
  if (static_cast<int>(psi.comps.size()) != sys.m())
    throw std::invalid_argument("PL function needs one description per component");
  for (const auto& c : psi.comps)
    if (!c.continuous()) throw std::invalid_argument("PL component description not continuous");
  for (int i = 0; i < sys.m(); ++i)
    for (int j = 0; j < sys.m(); ++j) {
      if (i == j || b_is_empty(sys.A[i][j])) continue;
      // psi_i must equal psi_j o f_ij on A_ij
      auto diff = pl_add(psi.comps[i], pl_negate(pl_precompose(psi.comps[j], sys.f[i][j])));
      auto zero = region_complement(pl_nonzero_set(diff));
      auto bad = region_difference(sys.A[i][j], zero);
      if (!bad.is_empty()) return std::make_pair(i, b_witness(bad)[0]);
    }
  return std::nullopt;
}

// Support = glued closure of the nonzero set.
inline GluedSet<EuclideanBackend> pl_support(const EucGlued& g, const PLFunction& psi) {
  std::vector<Region> raw;
  for (const auto& c : psi.comps) raw.push_back(pl_nonzero_set(c));
  return g.glued_closure(GluedSet<EuclideanBackend>{std::move(raw)});
}

// ---- partition-of-unity checker -------------------------------------------

struct PouResult {
  bool accepted = false;
  std::string axiom;  // "support" | "local-finiteness" | "sum" when rejected
  int witness_component = -1;
  Rat witness_point = 0;
  std::string str() const {
    if (accepted) return "Accept";
    return "Reject(" + axiom + ", witness [" + rat_to_string(witness_point) + "," +
           std::to_string(witness_component) + "])";
  }
};

inline PouResult pou_check(const EucGlued& g, const std::vector<GluedSet<EuclideanBackend>>& cover,
                           const std::vector<PLFunction>& candidate) {
  const auto& sys = g.system();
  for (const auto& X : sys.spaces)
    if (X.dim != 1) throw std::invalid_argument("partition-of-unity checking needs 1-dimensional components");
  if (cover.size() != candidate.size() || cover.empty())
    throw std::invalid_argument("cover and candidate sizes must match");
  for (const auto& U : cover)
    if (!g.is_open(U)) throw std::invalid_argument("cover member not open");
  for (const auto& psi : candidate)
    if (auto w = pl_well_defined_witness(g, psi))
      throw std::invalid_argument("candidate not well defined across gluings; witness [" +
                                  rat_to_string(w->second) + "," + std::to_string(w->first) + "]");

  // (1) supports subordinate to the cover
  for (size_t n = 0; n < candidate.size(); ++n) {
    auto supp = pl_support(g, candidate[n]);
    for (int k = 0; k < sys.m(); ++k) {
      auto escape = b_difference(supp.parts[k], cover[n].parts[k]);
      if (!b_is_empty(escape)) return {false, "support", k, b_witness(escape)[0]};
    }
  }
  // (2) local finiteness: a finite family is trivially locally finite
  // (3) the sum is identically 1, checked symbolically per component
  for (int k = 0; k < sys.m(); ++k) {
    PLComponent sum = pl_constant(Rat(0));
    for (const auto& psi : candidate) sum = pl_add(sum, psi.comps[k]);
    if (auto w = pl_not_constant_witness(sum, Rat(1))) return {false, "sum", k, *w};
  }
  return {true, "", -1, Rat(0)};
}

// ---- charts and the adjoined-manifold report ------------------------------

struct Chart {
  int i = -1;
  Region domain;  // open connected box around the representative
  DiagAffine map = DiagAffine::identity(1);
};

struct AdjoinedManifoldReport {
  bool system_valid = false;
  bool regions_open = false;
  bool maps_open_embeddings = false;
  bool index_countable = true;  // finite index sets always are
  std::string detail;
  bool ok() const { return system_valid && regions_open && maps_open_embeddings && index_countable; }
};

template <class B>
AdjoinedManifoldReport is_adjoined_manifold(const AdjSystem<B>& sys) {
  AdjoinedManifoldReport rep;
  auto v = validate(sys);
  rep.system_valid = v.valid();
  if (!rep.system_valid) rep.detail = v.str();
  rep.regions_open = true;
  for (int i = 0; i < sys.m() && rep.regions_open; ++i)
    for (int j = 0; j < sys.m(); ++j) {
      if (i == j || b_is_open(sys.spaces[i], sys.A[i][j])) continue;
      rep.regions_open = false;
      auto bad = b_difference(sys.A[i][j], b_interior(sys.spaces[i], sys.A[i][j]));
      rep.detail += "A_" + std::to_string(i) + std::to_string(j) + " not open; witness " +
                    b_point_str(b_witness(bad)) + "\n";
      break;
    }
  // validation already certifies each f_ij is a homeomorphism onto A_ji; with
  // open regions that makes it an open embedding
  rep.maps_open_embeddings = rep.system_valid && rep.regions_open;
  return rep;
}

// Deterministic chart: an open box around the canonical representative with
// radius min(1, d)/2 where d is the least distance to any other finite
// endpoint of any gluing region of that component (radius 1 if none).
inline Chart chart_at(const EucGlued& g, const GluedPoint<EuclideanBackend>& p) {
  if (!is_adjoined_manifold(g.system()).ok())
    throw std::invalid_argument("chart construction needs an adjoined manifold");
  auto c = g.canonical_map(p.i, p.x);
  const auto& sys = g.system();
  int dim = sys.spaces[c.i].dim;
  std::optional<Rat> d;
  for (int j = 0; j < sys.m(); ++j) {
    if (j == c.i) continue;
    for (const auto& cell : sys.A[c.i][j].cells())
      for (int k = 0; k < dim; ++k)
        for (const ExtRat* e : {&cell[k].lo, &cell[k].hi}) {
          if (!e->is_finite() || e->finite() == c.x[k]) continue;
          Rat dist = abs(e->finite() - c.x[k]);
          if (!d || dist < *d) d = dist;
        }
  }
  Rat r = d ? std::min(Rat(1), *d) / 2 : Rat(1);
  Box b;
  for (int k = 0; k < dim; ++k) b.push_back(Interval::open(ExtRat(c.x[k] - r), ExtRat(c.x[k] + r)));
  return Chart{c.i, Region(dim, {b}), DiagAffine::identity(dim)};
}

// ---- representation round-trip --------------------------------------------

struct RoundtripReport {
  bool rebuilt_valid = false;
  bool regions_equal = false;
  bool y_entries_equal = false;
  bool graph_equal = false;
  bool quotient_isomorphic = true;  // finite backend only; vacuous otherwise
  bool ok() const {
    return rebuilt_valid && regions_equal && y_entries_equal && graph_equal && quotient_isomorphic;
  }
};

namespace detail {

inline bool fin_isomorphic(const FinSpace& X, const FinSpace& Y) {
  if (X.n() != Y.n()) return false;
  std::vector<int> perm(X.n());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int a = 0; a < X.n() && ok; ++a)
      for (int b = 0; b < X.n() && ok; ++b)
        if (X.min_open(a).contains(b) != Y.min_open(perm[a]).contains(perm[b])) ok = false;
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace detail

// Re-derive the system from the glued space (overlaps of the canonical
// images, pulled back through the canonical maps) and compare.
template <class B>
RoundtripReport representation_roundtrip(const Glued<B>& g) {
  const auto& sys = g.system();
  auto rep = is_adjoined_manifold(sys);
  if (!rep.ok()) throw std::invalid_argument("round-trip needs an adjoined manifold");
  AdjSystem<B> rebuilt = make_system<B>(sys.spaces);
  for (int i = 0; i < sys.m(); ++i) {
    auto Vi = g.pushforward_i(i, b_whole(sys.spaces[i]));
    for (int j = 0; j < sys.m(); ++j) {
      if (i == j) continue;
      rebuilt.A[j][i] = Vi.parts[j];  // preimage in X_j of the overlap with phi_i(X_i)
      rebuilt.f[j][i] = sys.f[j][i];
    }
  }
  RoundtripReport out;
  out.rebuilt_valid = validate(rebuilt).valid();
  if (!out.rebuilt_valid) return out;
  out.regions_equal = rebuilt.A == sys.A;
  out.graph_equal = component_graph(rebuilt) == component_graph(sys);
  Glued<B> g2(rebuilt, /*check=*/false);
  if constexpr (std::is_same_v<B, EuclideanBackend>) {
    auto fam1 = y_pairs(g), fam2 = y_pairs(g2);
    out.y_entries_equal = fam1.entries.size() == fam2.entries.size();
    for (size_t e = 0; out.y_entries_equal && e < fam1.entries.size(); ++e)
      out.y_entries_equal = fam1.entries[e].i == fam2.entries[e].i &&
                            fam1.entries[e].j == fam2.entries[e].j &&
                            fam1.entries[e].region == fam2.entries[e].region &&
                            fam1.entries[e].pairing == fam2.entries[e].pairing;
  } else {
    out.y_entries_equal =
        g.finite_quotient().Q.y_pairs().size() == g2.finite_quotient().Q.y_pairs().size();
    if (g.finite_quotient().Q.n() > 8) throw std::invalid_argument("isomorphism search bound exceeded");
    out.quotient_isomorphic = detail::fin_isomorphic(g.finite_quotient().Q, g2.finite_quotient().Q);
  }
  return out;
}

}  // namespace adjsp
