#pragma once

// Exact set algebra for finite unions of rational boxes in R^1 and R^2,
// with per-face openness flags, plus increasing diagonal affine maps.
// Canonical forms make set equality decidable; all topological operators
// (interior/closure/boundary) are computed relative to R^dim.
//
// Canonical form:
//   dim 1 — sorted, pairwise disjoint, non-mergeable intervals.
//   dim 2 — a slab decomposition: maximal runs of x-atoms sharing an
//           identical canonical y-region, each run emitted as (x-run x y-cell)
//           boxes. Both are produced by a single atom-evaluation routine, so
//           equal sets always have equal cell lists.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace adjsp {

struct Interval {
  ExtRat lo, hi;
  bool lo_closed = false, hi_closed = false;

  Interval() = default;
  Interval(ExtRat l, bool lc, ExtRat h, bool hc) : lo(std::move(l)), hi(std::move(h)), lo_closed(lc), hi_closed(hc) {
    if (lo_closed && !lo.is_finite()) throw std::invalid_argument("infinite endpoint cannot be closed");
    if (hi_closed && !hi.is_finite()) throw std::invalid_argument("infinite endpoint cannot be closed");
    if (lo > hi || (lo == hi && !(lo_closed && hi_closed)))
      throw std::invalid_argument("empty or inverted interval");
  }

  static Interval open(ExtRat l, ExtRat h) { return Interval(std::move(l), false, std::move(h), false); }
  static Interval closed(Rat l, Rat h) { return Interval(ExtRat(std::move(l)), true, ExtRat(std::move(h)), true); }
  static Interval point(Rat v) { ExtRat e(std::move(v)); return Interval(e, true, e, true); }
  static Interval line() { return open(ExtRat::neg_inf(), ExtRat::pos_inf()); }
  static Interval below(Rat v, bool closed_end = false) {  // (-inf, v) or (-inf, v]
    return Interval(ExtRat::neg_inf(), false, ExtRat(std::move(v)), closed_end);
  }
  static Interval above(Rat v, bool closed_end = false) {  // (v, inf) or [v, inf)
    return Interval(ExtRat(std::move(v)), closed_end, ExtRat::pos_inf(), false);
  }

  bool is_point() const { return lo == hi; }
  bool bounded() const { return lo.is_finite() && hi.is_finite(); }

  bool contains(const Rat& x) const {
    ExtRat e{x};
    if (e < lo || (e == lo && !lo_closed)) return false;
    if (e > hi || (e == hi && !hi_closed)) return false;
    return true;
  }

  Interval closure_iv() const {
    return Interval(lo, lo.is_finite(), hi, hi.is_finite());
  }

  friend bool operator==(const Interval& a, const Interval& b) = default;
};

// True iff the two intervals have nonempty intersection.
inline bool intervals_meet(const Interval& a, const Interval& b) {
  // lower bound of intersection = max of lower endpoints, similarly upper
  const ExtRat& lo = std::max(a.lo, b.lo);
  const ExtRat& hi = std::min(a.hi, b.hi);
  if (lo > hi) return false;
  if (lo < hi) return true;  // a whole open interval lies in both
  // the intersection can only be the single point lo == hi
  return lo.is_finite() && a.contains(lo.finite()) && b.contains(lo.finite());
}

using Box = std::vector<Interval>;  // size == dim

class Region {
 public:
  explicit Region(int dim = 1) : dim_(dim) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("dimension must be 1 or 2");
  }
  Region(int dim, std::vector<Box> cells) : Region(dim) {
    for (const auto& b : cells)
      if (static_cast<int>(b.size()) != dim) throw std::invalid_argument("cell dimension mismatch");
    cells_ = canonicalize(dim, std::move(cells));
  }

  static Region empty(int dim) { return Region(dim); }
  static Region whole(int dim) {
    Box b;
    for (int k = 0; k < dim; ++k) b.push_back(Interval::line());
    return Region(dim, {b});
  }
  static Region of_interval(Interval iv) { return Region(1, {Box{std::move(iv)}}); }
  static Region box2(Interval x, Interval y) { return Region(2, {Box{std::move(x), std::move(y)}}); }

  int dim() const { return dim_; }
  const std::vector<Box>& cells() const { return cells_; }
  bool is_empty() const { return cells_.empty(); }

  bool contains(const std::vector<Rat>& p) const {
    if (static_cast<int>(p.size()) != dim_) throw std::invalid_argument("point dimension mismatch");
    for (const auto& c : cells_) {
      bool in = true;
      for (int k = 0; k < dim_; ++k)
        if (!c[k].contains(p[k])) { in = false; break; }
      if (in) return true;
    }
    return false;
  }

  friend bool operator==(const Region& a, const Region& b) = default;

 private:
  friend Region region_combine(const Region&, const Region&, bool (*)(bool, bool));
  friend Region region_closure(const Region&);

  static std::vector<Box> canonicalize(int dim, std::vector<Box> cells);

  int dim_;
  std::vector<Box> cells_;  // canonical
};

namespace detail {

// The 1-D atoms induced by a sorted list of distinct finite endpoints:
// (-inf,e1), [e1], (e1,e2), [e2], ..., (ek, inf); a single (-inf,inf) atom
// if the list is empty. Each atom carries a representative point.
struct Atom {
  Interval iv;
  Rat rep;
};

inline std::vector<Atom> make_atoms(const std::vector<Rat>& endpoints) {
  std::vector<Atom> atoms;
  if (endpoints.empty()) {
    atoms.push_back({Interval::line(), Rat(0)});
    return atoms;
  }
  atoms.push_back({Interval::below(endpoints.front()), endpoints.front() - 1});
  for (size_t i = 0; i < endpoints.size(); ++i) {
    atoms.push_back({Interval::point(endpoints[i]), endpoints[i]});
    if (i + 1 < endpoints.size())
      atoms.push_back({Interval::open(ExtRat(endpoints[i]), ExtRat(endpoints[i + 1])),
                       (endpoints[i] + endpoints[i + 1]) / 2});
    else
      atoms.push_back({Interval::above(endpoints[i]), endpoints[i] + 1});
  }
  return atoms;
}

inline void collect_endpoints(const Interval& iv, std::vector<Rat>& out) {
  if (iv.lo.is_finite()) out.push_back(iv.lo.finite());
  if (iv.hi.is_finite()) out.push_back(iv.hi.finite());
}

inline void sort_unique(std::vector<Rat>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Merge a run of consecutive atoms [i..j] into one interval.
inline Interval merge_atoms(const std::vector<Atom>& atoms, size_t i, size_t j) {
  const Interval& a = atoms[i].iv;
  const Interval& b = atoms[j].iv;
  return Interval(a.lo, a.lo_closed, b.hi, b.hi_closed);
}

// Canonical 1-D cell list from a membership predicate evaluated per atom.
template <class Pred>
std::vector<Interval> cells_from_atoms(const std::vector<Atom>& atoms, Pred member) {
  std::vector<char> sel(atoms.size());
  for (size_t i = 0; i < atoms.size(); ++i) sel[i] = member(atoms[i].rep);
  std::vector<Interval> out;
  size_t i = 0;
  while (i < atoms.size()) {
    if (!sel[i]) { ++i; continue; }
    size_t j = i;
    while (j + 1 < atoms.size() && sel[j + 1]) ++j;
    out.push_back(merge_atoms(atoms, i, j));
    i = j + 1;
  }
  return out;
}

inline bool cell_list_contains(const std::vector<Interval>& cells, const Rat& x) {
  for (const auto& c : cells)
    if (c.contains(x)) return true;
  return false;
}

}  // namespace detail

inline std::vector<Box> Region::canonicalize(int dim, std::vector<Box> cells) {
  using namespace detail;
  if (dim == 1) {
    std::vector<Rat> eps;
    for (const auto& c : cells) collect_endpoints(c[0], eps);
    sort_unique(eps);
    auto atoms = make_atoms(eps);
    auto member = [&](const Rat& x) {
      for (const auto& c : cells)
        if (c[0].contains(x)) return true;
      return false;
    };
    std::vector<Box> out;
    for (auto& iv : cells_from_atoms(atoms, member)) out.push_back(Box{std::move(iv)});
    return out;
  }
  // dim == 2: slab decomposition over x-atoms, then maximal runs of x-atoms
  // with identical canonical y-regions.
  std::vector<Rat> xeps, yeps;
  for (const auto& c : cells) {
    collect_endpoints(c[0], xeps);
    collect_endpoints(c[1], yeps);
  }
  sort_unique(xeps);
  sort_unique(yeps);
  auto xatoms = make_atoms(xeps);
  auto yatoms = make_atoms(yeps);
  std::vector<std::vector<Interval>> ycells_per_xatom;
  for (const auto& xa : xatoms) {
    auto member = [&](const Rat& y) {
      for (const auto& c : cells)
        if (c[0].contains(xa.rep) && c[1].contains(y)) return true;
      return false;
    };
    ycells_per_xatom.push_back(cells_from_atoms(yatoms, member));
  }
  std::vector<Box> out;
  size_t i = 0;
  while (i < xatoms.size()) {
    if (ycells_per_xatom[i].empty()) { ++i; continue; }
    size_t j = i;
    while (j + 1 < xatoms.size() && ycells_per_xatom[j + 1] == ycells_per_xatom[i]) ++j;
    Interval xiv = merge_atoms(xatoms, i, j);
    for (const auto& yiv : ycells_per_xatom[i]) out.push_back(Box{xiv, yiv});
    i = j + 1;
  }
  return out;
}

inline void require_same_dim(const Region& a, const Region& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("region dimension mismatch");
}

inline Region region_union(const Region& a, const Region& b) {
  require_same_dim(a, b);
  std::vector<Box> cells = a.cells();
  cells.insert(cells.end(), b.cells().begin(), b.cells().end());
  return Region(a.dim(), std::move(cells));
}

// Pointwise boolean combination evaluated on the common atom decomposition.
inline Region region_combine(const Region& a, const Region& b, bool (*op)(bool, bool)) {
  using namespace detail;
  require_same_dim(a, b);
  int dim = a.dim();
  auto in_a = [&](const std::vector<Rat>& p) { return a.contains(p); };
  auto in_b = [&](const std::vector<Rat>& p) { return b.contains(p); };
  std::vector<Rat> xeps, yeps;
  for (const Region* r : {&a, &b})
    for (const auto& c : r->cells()) {
      collect_endpoints(c[0], xeps);
      if (dim == 2) collect_endpoints(c[1], yeps);
    }
  sort_unique(xeps);
  std::vector<Box> out;
  if (dim == 1) {
    auto atoms = make_atoms(xeps);
    auto member = [&](const Rat& x) { return op(in_a({x}), in_b({x})); };
    for (auto& iv : cells_from_atoms(atoms, member)) out.push_back(Box{std::move(iv)});
    return Region(1, std::move(out));
  }
  sort_unique(yeps);
  auto xatoms = make_atoms(xeps);
  auto yatoms = make_atoms(yeps);
  for (const auto& xa : xatoms) {
    auto member = [&](const Rat& y) { return op(in_a({xa.rep, y}), in_b({xa.rep, y})); };
    for (auto& yiv : cells_from_atoms(yatoms, member)) out.push_back(Box{xa.iv, yiv});
  }
  return Region(dim, std::move(out));  // constructor re-canonicalizes (merges runs)
}

inline Region region_intersect(const Region& a, const Region& b) {
  return region_combine(a, b, +[](bool x, bool y) { return x && y; });
}
inline Region region_difference(const Region& a, const Region& b) {
  return region_combine(a, b, +[](bool x, bool y) { return x && !y; });
}
inline Region region_complement(const Region& a) {
  return region_difference(Region::whole(a.dim()), a);
}

inline bool region_subset(const Region& a, const Region& b) {
  return region_difference(a, b).is_empty();
}

// Closure relative to R^dim: finite additivity lets us close cell by cell.
inline Region region_closure(const Region& r) {
  std::vector<Box> cells;
  for (const auto& c : r.cells()) {
    Box b;
    for (const auto& iv : c) b.push_back(iv.closure_iv());
    cells.push_back(std::move(b));
  }
  return Region(r.dim(), std::move(cells));
}
inline Region region_interior(const Region& r) {
  return region_complement(region_closure(region_complement(r)));
}
inline Region region_boundary(const Region& r) {
  return region_difference(region_closure(r), region_interior(r));
}

inline bool region_is_open(const Region& r) { return r == region_interior(r); }
inline bool region_is_closed(const Region& r) { return r == region_closure(r); }
inline bool region_is_bounded(const Region& r) {
  for (const auto& c : r.cells())
    for (const auto& iv : c)
      if (!iv.bounded()) return false;
  return true;
}
inline bool region_is_compact(const Region& r) {
  return region_is_closed(r) && region_is_bounded(r);
}

struct Connectivity {
  bool empty = false;
  bool connected = false;
};

// dim 1: canonical form has at most one cell. dim 2: graph on canonical boxes
// joining P,Q when P meets cl(Q) or cl(P) meets Q (exact for unions of convex
// boxes). Empty regions report connected = false with the empty flag set.
inline Connectivity region_connectivity(const Region& r) {
  if (r.is_empty()) return {true, false};
  if (r.dim() == 1) return {false, r.cells().size() <= 1};
  const auto& cells = r.cells();
  size_t n = cells.size();
  std::vector<size_t> parent(n);
  for (size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto boxes_touch = [&](const Box& p, const Box& q) {
    auto meet_with_closure = [&](const Box& u, const Box& v) {
      for (int k = 0; k < 2; ++k)
        if (!intervals_meet(u[k], v[k].closure_iv())) return false;
      return true;
    };
    return meet_with_closure(p, q) || meet_with_closure(q, p);
  };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (boxes_touch(cells[i], cells[j])) parent[find(i)] = find(j);
  for (size_t i = 1; i < n; ++i)
    if (find(i) != find(0)) return {false, false};
  return {false, true};
}
inline bool region_is_connected(const Region& r) { return region_connectivity(r).connected; }

// Connected components, each returned as a region of its own.
inline std::vector<Region> region_components(const Region& r) {
  if (r.is_empty()) return {};
  const auto& cells = r.cells();
  size_t n = cells.size();
  if (r.dim() == 1) {
    std::vector<Region> out;
    for (const auto& c : cells) out.push_back(Region(1, {c}));
    return out;
  }
  std::vector<size_t> parent(n);
  for (size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto boxes_touch = [&](const Box& p, const Box& q) {
    auto meet_with_closure = [&](const Box& u, const Box& v) {
      for (int k = 0; k < 2; ++k)
        if (!intervals_meet(u[k], v[k].closure_iv())) return false;
      return true;
    };
    return meet_with_closure(p, q) || meet_with_closure(q, p);
  };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (boxes_touch(cells[i], cells[j])) parent[find(i)] = find(j);
  std::vector<std::vector<Box>> groups(n);
  for (size_t i = 0; i < n; ++i) groups[find(i)].push_back(cells[i]);
  std::vector<Region> out;
  for (auto& g : groups)
    if (!g.empty()) out.push_back(Region(2, std::move(g)));
  return out;
}

// Increasing diagonal affine homeomorphism of R^dim: x_k -> a_k x_k + b_k,
// a_k > 0. Closed under composition and inverse; extends canonically to
// closures since it maps open/closed endpoints to endpoints of the same kind.
struct DiagAffine {
  std::vector<Rat> a, b;

  DiagAffine() = default;
  DiagAffine(std::vector<Rat> a_, std::vector<Rat> b_) : a(std::move(a_)), b(std::move(b_)) {
    if (a.size() != b.size() || a.empty() || a.size() > 2)
      throw std::invalid_argument("affine map dimension must be 1 or 2");
    for (const auto& c : a)
      if (c <= 0) throw std::invalid_argument("affine coefficients must be positive");
  }
  static DiagAffine identity(int dim) {
    return DiagAffine(std::vector<Rat>(dim, Rat(1)), std::vector<Rat>(dim, Rat(0)));
  }
  int dim() const { return static_cast<int>(a.size()); }
  bool is_identity() const {
    for (int k = 0; k < dim(); ++k)
      if (a[k] != 1 || b[k] != 0) return false;
    return true;
  }

  std::vector<Rat> apply(const std::vector<Rat>& p) const {
    if (p.size() != a.size()) throw std::invalid_argument("point dimension mismatch");
    std::vector<Rat> q(p.size());
    for (size_t k = 0; k < p.size(); ++k) q[k] = a[k] * p[k] + b[k];
    return q;
  }
  ExtRat apply_ext(int k, const ExtRat& x) const {
    if (!x.is_finite()) return x;  // a_k > 0 preserves the direction of infinity
    return ExtRat(a[k] * x.finite() + b[k]);
  }

  friend bool operator==(const DiagAffine& f, const DiagAffine& g) = default;
};

inline DiagAffine invert(const DiagAffine& f) {
  std::vector<Rat> a(f.a.size()), b(f.b.size());
  for (size_t k = 0; k < f.a.size(); ++k) {
    a[k] = 1 / f.a[k];
    b[k] = -f.b[k] / f.a[k];
  }
  return DiagAffine(std::move(a), std::move(b));
}
inline DiagAffine compose(const DiagAffine& g, const DiagAffine& f) {  // g after f
  if (g.dim() != f.dim()) throw std::invalid_argument("affine compose dimension mismatch");
  std::vector<Rat> a(f.a.size()), b(f.b.size());
  for (size_t k = 0; k < f.a.size(); ++k) {
    a[k] = g.a[k] * f.a[k];
    b[k] = g.a[k] * f.b[k] + g.b[k];
  }
  return DiagAffine(std::move(a), std::move(b));
}

inline Region region_map(const Region& r, const DiagAffine& f) {
  if (r.dim() != f.dim()) throw std::invalid_argument("map/region dimension mismatch");
  std::vector<Box> cells;
  for (const auto& c : r.cells()) {
    Box out;
    for (int k = 0; k < r.dim(); ++k)
      out.push_back(Interval(f.apply_ext(k, c[k].lo), c[k].lo_closed,
                             f.apply_ext(k, c[k].hi), c[k].hi_closed));
    cells.push_back(std::move(out));
  }
  return Region(r.dim(), std::move(cells));
}
inline Region region_preimage(const Region& r, const DiagAffine& f) {
  return region_map(r, invert(f));
}

// Do f and g agree pointwise on R? Per axis: either the coefficients match,
// or a_k x + b_k = a'_k x + b'_k has a unique solution x* and R lies inside
// the hyperplane x_k = x*.
inline bool maps_agree_on(const DiagAffine& f, const DiagAffine& g, const Region& r) {
  if (f.dim() != r.dim() || g.dim() != r.dim())
    throw std::invalid_argument("map/region dimension mismatch");
  if (r.is_empty()) return true;
  for (int k = 0; k < r.dim(); ++k) {
    if (f.a[k] == g.a[k] && f.b[k] == g.b[k]) continue;
    if (f.a[k] == g.a[k]) return false;  // parallel, never equal
    Rat xstar = (g.b[k] - f.b[k]) / (f.a[k] - g.a[k]);
    Box hyper;
    for (int j = 0; j < r.dim(); ++j)
      hyper.push_back(j == k ? Interval::point(xstar) : Interval::line());
    if (!region_subset(r, Region(r.dim(), {hyper}))) return false;
  }
  return true;
}

// Deterministic witness points: per cell, one interior point plus all finite
// endpoints/corners (per-axis candidates: interior coordinate and finite
// endpoints; all tuples are emitted).
inline std::vector<std::vector<Rat>> sample_points(const Region& r) {
  std::vector<std::vector<Rat>> out;
  auto push_unique = [&](std::vector<Rat> p) {
    for (const auto& q : out)
      if (q == p) return;
    out.push_back(std::move(p));
  };
  for (const auto& c : r.cells()) {
    std::vector<std::vector<Rat>> axis_cands;
    for (const auto& iv : c) {
      std::vector<Rat> cand;
      if (iv.bounded())
        cand.push_back((iv.lo.finite() + iv.hi.finite()) / 2);
      else if (iv.lo.is_finite())
        cand.push_back(iv.lo.finite() + 1);
      else if (iv.hi.is_finite())
        cand.push_back(iv.hi.finite() - 1);
      else
        cand.push_back(Rat(0));
      if (iv.lo.is_finite()) cand.push_back(iv.lo.finite());
      if (iv.hi.is_finite() && !(iv.hi == iv.lo)) cand.push_back(iv.hi.finite());
      std::sort(cand.begin(), cand.end());
      cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
      axis_cands.push_back(std::move(cand));
    }
    if (r.dim() == 1) {
      for (const auto& x : axis_cands[0]) push_unique({x});
    } else {
      for (const auto& x : axis_cands[0])
        for (const auto& y : axis_cands[1]) push_unique({x, y});
    }
  }
  return out;
}

inline std::string interval_to_string(const Interval& iv) {
  std::string s;
  s += iv.lo_closed ? '[' : '(';
  s += iv.lo.str() + "," + iv.hi.str();
  s += iv.hi_closed ? ']' : ')';
  return s;
}
inline std::string region_to_string(const Region& r) {
  if (r.is_empty()) return "{}";
  std::string s;
  for (size_t i = 0; i < r.cells().size(); ++i) {
    if (i) s += " u ";
    for (int k = 0; k < r.dim(); ++k) {
      if (k) s += "x";
      s += interval_to_string(r.cells()[i][k]);
    }
  }
  return s;
}

}  // namespace adjsp
