#pragma once

// The glued (adjunction) space of a validated system: equivalence classes,
// canonical maps, saturated subsets, the openness criterion, per-component
// topological operators, the universal property (finite backend), subsystem
// embeddings, bases, and the locally-finite-cover witness construction.

#include <functional>
#include <map>

#include "system.hpp"

namespace adjsp {

template <class B>
struct GluedPoint {
  int i = 0;                  // canonical component = smallest index with a representative
  typename B::Point x{};      // canonical coordinate in that component
  friend bool operator==(const GluedPoint&, const GluedPoint&) = default;
};

template <class B>
std::string to_string(const GluedPoint<B>& p) {
  return "[" + b_point_str(p.x) + "," + std::to_string(p.i) + "]";
}

// A subset of the glued space, stored as saturated per-component preimages.
template <class B>
struct GluedSet {
  std::vector<typename B::Set> parts;
  friend bool operator==(const GluedSet&, const GluedSet&) = default;
};

struct FiniteQuotient {
  FinSpace Q;
  FinMap proj;               // from the disjoint union
  std::vector<int> offsets;  // component offsets in the disjoint union
};

template <class B>
class Glued {
 public:
  explicit Glued(AdjSystem<B> sys, bool check = true) : sys_(std::move(sys)) {
    if (check) {
      auto rep = validate(sys_);
      if (!rep.valid()) throw std::invalid_argument("invalid adjunction system:\n" + rep.str());
    }
    if constexpr (std::is_same_v<B, FiniteBackend>) build_finite_quotient();
  }

  const AdjSystem<B>& system() const { return sys_; }
  int m() const { return sys_.m(); }

  // ---- points ------------------------------------------------------------

  GluedPoint<B> canonical_map(int i, typename B::Point x) const {
    check_point(i, x);
    for (int j = 0; j < m(); ++j)
      if (b_contains(sys_.A[i][j], x)) return {j, b_apply(sys_.f[i][j], x)};
    return {i, x};  // unreachable: A_ii is the whole component
  }

  bool point_eq(int i, typename B::Point x, int j, typename B::Point y) const {
    return canonical_map(i, std::move(x)) == canonical_map(j, std::move(y));
  }

  bool member(const GluedSet<B>& s, const GluedPoint<B>& p) const {
    return b_contains(s.parts.at(p.i), p.x);
  }

  // ---- sets --------------------------------------------------------------

  GluedSet<B> saturate(std::vector<typename B::Set> raw) const {
    if (static_cast<int>(raw.size()) != m()) throw std::invalid_argument("component count mismatch");
    int rounds = m() * m() + 2;
    for (int r = 0; r < rounds; ++r) {
      bool changed = false;
      for (int i = 0; i < m(); ++i)
        for (int j = 0; j < m(); ++j) {
          if (i == j) continue;
          auto add = b_image(sys_.f[i][j], b_intersect(raw[i], sys_.A[i][j]));
          if (!b_subset(add, raw[j])) {
            raw[j] = b_union(raw[j], add);
            changed = true;
          }
        }
      if (!changed) return {std::move(raw)};
    }
    throw std::logic_error("saturation did not stabilize");
  }

  bool is_saturated(const GluedSet<B>& s) const { return saturate(s.parts) == s; }

  GluedSet<B> empty_set() const {
    std::vector<typename B::Set> p;
    for (const auto& X : sys_.spaces) p.push_back(b_empty(X));
    return {std::move(p)};
  }
  GluedSet<B> whole() const {
    std::vector<typename B::Set> p;
    for (const auto& X : sys_.spaces) p.push_back(b_whole(X));
    return {std::move(p)};
  }

  const typename B::Set& preimage_i(const GluedSet<B>& s, int i) const { return s.parts.at(i); }

  GluedSet<B> pushforward_i(int i, typename B::Set u) const {
    auto raw = empty_set().parts;
    raw.at(i) = std::move(u);
    return saturate(std::move(raw));
  }

  GluedSet<B> gs_union(const GluedSet<B>& a, const GluedSet<B>& b) const {
    return zip(a, b, [](const auto& x, const auto& y) { return b_union(x, y); });
  }
  GluedSet<B> gs_intersect(const GluedSet<B>& a, const GluedSet<B>& b) const {
    return zip(a, b, [](const auto& x, const auto& y) { return b_intersect(x, y); });
  }
  GluedSet<B> gs_difference(const GluedSet<B>& a, const GluedSet<B>& b) const {
    return zip(a, b, [](const auto& x, const auto& y) { return b_difference(x, y); });
  }
  GluedSet<B> gs_complement(const GluedSet<B>& a) const { return gs_difference(whole(), a); }
  bool gs_subset(const GluedSet<B>& a, const GluedSet<B>& b) const {
    for (int i = 0; i < m(); ++i)
      if (!b_subset(a.parts[i], b.parts[i])) return false;
    return true;
  }
  bool gs_is_empty(const GluedSet<B>& a) const {
    for (const auto& p : a.parts)
      if (!b_is_empty(p)) return false;
    return true;
  }

  // Openness criterion: open in the adjunction topology iff every canonical
  // preimage is open in its component.
  bool is_open(const GluedSet<B>& s) const {
    for (int i = 0; i < m(); ++i)
      if (!b_is_open(sys_.spaces[i], s.parts[i])) return false;
    return true;
  }

  // ---- per-component topological operators -------------------------------
  // Valid because each canonical image phi_i(X_i) is open when every A_ij is
  // open: membership of [y,j] in Cl(S) is membership of y in Cl^{X_j}(S_j).

  GluedSet<B> glued_closure(const GluedSet<B>& s) const {
    return per_component_op(s, [&](int i, const auto& part) { return b_closure(sys_.spaces[i], part); });
  }
  GluedSet<B> glued_interior(const GluedSet<B>& s) const {
    return per_component_op(s, [&](int i, const auto& part) { return b_interior(sys_.spaces[i], part); });
  }
  GluedSet<B> glued_boundary(const GluedSet<B>& s) const {
    return gs_difference(glued_closure(s), glued_interior(s));
  }

  // ---- connectivity ------------------------------------------------------

  Connectivity connectivity(const GluedSet<B>& s) const {
    if (gs_is_empty(s)) return {true, false};
    if constexpr (std::is_same_v<B, FiniteBackend>) {
      PointSet classes(finq_->Q.n());
      for (int i = 0; i < m(); ++i)
        for (int x : s.parts[i].points()) classes.add(finq_->proj(finq_->offsets[i] + x));
      return {false, finq_->Q.is_connected(classes)};
    } else {
      // overlap graph across the per-component connected pieces
      struct Node {
        int i;
        Region piece;
      };
      std::vector<Node> nodes;
      for (int i = 0; i < m(); ++i)
        for (auto& piece : b_set_components(sys_.spaces[i], s.parts[i]))
          nodes.push_back({i, std::move(piece)});
      std::vector<size_t> parent(nodes.size());
      for (size_t a = 0; a < nodes.size(); ++a) parent[a] = a;
      auto find = [&](size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (size_t a = 0; a < nodes.size(); ++a)
        for (size_t b = a + 1; b < nodes.size(); ++b) {
          int i = nodes[a].i, j = nodes[b].i;
          if (i == j) continue;
          auto img = b_image(sys_.f[i][j], b_intersect(nodes[a].piece, sys_.A[i][j]));
          if (!b_is_empty(b_intersect(img, nodes[b].piece))) parent[find(a)] = find(b);
        }
      for (size_t a = 1; a < nodes.size(); ++a)
        if (find(a) != find(0)) return {false, false};
      return {false, true};
    }
  }
  bool is_connected(const GluedSet<B>& s) const { return connectivity(s).connected; }

  // ---- finite quotient access --------------------------------------------

  const FiniteQuotient& finite_quotient() const {
    if (!finq_) throw std::logic_error("finite quotient only exists on the finite backend");
    return *finq_;
  }

  FinMap phi(int i) const {
    static_assert(std::is_same_v<B, FiniteBackend>);
    const auto& fq = finite_quotient();
    std::vector<int> t(sys_.spaces[i].n());
    for (int x = 0; x < sys_.spaces[i].n(); ++x) t[x] = fq.proj(fq.offsets[i] + x);
    return FinMap(sys_.spaces[i].n(), fq.Q.n(), std::move(t));
  }

  // Classes of the quotient space hit by a glued set.
  PointSet class_set(const GluedSet<FiniteBackend>& s) const {
    const auto& fq = finite_quotient();
    PointSet out(fq.Q.n());
    for (int i = 0; i < m(); ++i)
      for (int x : s.parts[i].points()) out.add(fq.proj(fq.offsets[i] + x));
    return out;
  }
  GluedSet<FiniteBackend> from_class_set(const PointSet& classes) const {
    const auto& fq = finite_quotient();
    auto raw = empty_set().parts;
    for (int i = 0; i < m(); ++i)
      for (int x = 0; x < sys_.spaces[i].n(); ++x)
        if (classes.contains(fq.proj(fq.offsets[i] + x))) raw[i].add(x);
    return {std::move(raw)};  // already saturated by construction
  }

  // Universal property: given compatible maps psi_i into Z, the unique g with
  // g o phi_i = psi_i. Throws on an incompatible family, with a witness.
  FinMap universal_map(const FinSpace& Z, const std::vector<FinMap>& psi) const {
    static_assert(std::is_same_v<B, FiniteBackend>);
    if (static_cast<int>(psi.size()) != m()) throw std::invalid_argument("need one map per component");
    for (int i = 0; i < m(); ++i)
      if (psi[i].source_n != sys_.spaces[i].n() || psi[i].target_n != Z.n())
        throw std::invalid_argument("psi carrier mismatch");
    for (int i = 0; i < m(); ++i)
      for (int j = 0; j < m(); ++j) {
        if (i == j) continue;
        for (int x : sys_.A[i][j].points())
          if (psi[j](sys_.f[i][j](x)) != psi[i](x))
            throw std::invalid_argument("incompatible family: psi_" + std::to_string(i) + "(" +
                                        std::to_string(x) + ") != psi_" + std::to_string(j) +
                                        "(f(" + std::to_string(x) + "))");
      }
    const auto& fq = finite_quotient();
    std::vector<int> t(fq.Q.n(), -1);
    for (int i = 0; i < m(); ++i)
      for (int x = 0; x < sys_.spaces[i].n(); ++x) t[fq.proj(fq.offsets[i] + x)] = psi[i](x);
    FinMap g(fq.Q.n(), Z.n(), std::move(t));
    if (!check_continuous(fq.Q, Z, g)) throw std::logic_error("universal map not continuous");
    return g;
  }

  // ---- basis -------------------------------------------------------------

  // Finite backend: the pushed-forward minimal opens form a basis.
  std::vector<GluedSet<B>> finite_basis() const {
    static_assert(std::is_same_v<B, FiniteBackend>);
    std::vector<GluedSet<B>> out;
    for (int i = 0; i < m(); ++i)
      for (int x = 0; x < sys_.spaces[i].n(); ++x) out.push_back(pushforward_i(i, sys_.spaces[i].min_open(x)));
    return out;
  }

  // Euclidean backend: basis elements are pushed-forward open boxes; this
  // generator plus a shrinking search realizes the basis property on test sets.
  GluedSet<EuclideanBackend> basis_box(int i, const std::vector<Rat>& center, const Rat& r) const {
    static_assert(std::is_same_v<B, EuclideanBackend>);
    Box b;
    for (size_t k = 0; k < center.size(); ++k)
      b.push_back(Interval::open(ExtRat(center[k] - r), ExtRat(center[k] + r)));
    return pushforward_i(i, Region(sys_.spaces[i].dim, {b}));
  }

 private:
  template <class F>
  GluedSet<B> zip(const GluedSet<B>& a, const GluedSet<B>& b, F op) const {
    std::vector<typename B::Set> p;
    for (int i = 0; i < m(); ++i) p.push_back(op(a.parts.at(i), b.parts.at(i)));
    return {std::move(p)};
  }

  template <class F>
  GluedSet<B> per_component_op(const GluedSet<B>& s, F op) const {
    if (!all_gluing_regions_open(sys_))
      throw std::invalid_argument("per-component topological operators need open gluing regions");
    std::vector<typename B::Set> p;
    for (int i = 0; i < m(); ++i) p.push_back(op(i, s.parts.at(i)));
    GluedSet<B> out{std::move(p)};
    // representative independence: the per-component result is already saturated
    auto sat = saturate(out.parts);
    if (!(sat == out)) throw std::logic_error("per-component operator broke saturation");
    return out;
  }

  void check_point(int i, const typename B::Point& x) const {
    if (i < 0 || i >= m()) throw std::invalid_argument("component index out of range");
    if constexpr (std::is_same_v<B, FiniteBackend>) {
      if (x < 0 || x >= sys_.spaces[i].n()) throw std::invalid_argument("point outside the component");
    } else {
      if (static_cast<int>(x.size()) != sys_.spaces[i].dim)
        throw std::invalid_argument("point dimension mismatch");
    }
  }

  void build_finite_quotient() {
    auto [D, offsets] = disjoint_union(sys_.spaces);
    // union-find over the disjoint union under (x,i) ~ (f_ij(x), j)
    std::vector<int> parent(D.n());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int i = 0; i < m(); ++i)
      for (int j = 0; j < m(); ++j) {
        if (i == j) continue;
        for (int x : sys_.A[i][j].points())
          parent[find(offsets[i] + x)] = find(offsets[j] + sys_.f[i][j](x));
      }
    std::vector<std::vector<int>> classes;
    std::vector<int> slot(D.n(), -1);
    for (int x = 0; x < D.n(); ++x) {
      int r = find(x);
      if (slot[r] < 0) {
        slot[r] = static_cast<int>(classes.size());
        classes.emplace_back();
      }
      classes[slot[r]].push_back(x);
    }
    auto [Q, proj] = quotient(D, classes);
    finq_ = FiniteQuotient{std::move(Q), std::move(proj), std::move(offsets)};
  }

  AdjSystem<B> sys_;
  std::optional<FiniteQuotient> finq_;
};

using FinGlued = Glued<FiniteBackend>;
using EucGlued = Glued<EuclideanBackend>;

// ---- subsystem embedding --------------------------------------------------

// Translate a canonical point of the sub-glued space into the full space.
template <class B>
GluedPoint<B> sub_embed_point(const Glued<B>& full, const std::vector<int>& J,
                              const GluedPoint<B>& subp) {
  return full.canonical_map(J.at(subp.i), subp.x);
}

// Translate a sub-glued set into the full space (saturating there).
template <class B>
GluedSet<B> sub_embed_set(const Glued<B>& full, const std::vector<int>& J, const GluedSet<B>& subs) {
  auto raw = full.empty_set().parts;
  for (size_t a = 0; a < J.size(); ++a) raw.at(J[a]) = subs.parts.at(a);
  return full.saturate(std::move(raw));
}

// Is the full-space set V contained in the image of the subsystem on J?
// Every point of a component outside J must have a representative inside J.
template <class B>
bool set_within_sub_image(const Glued<B>& full, const std::vector<int>& J, const GluedSet<B>& V) {
  const auto& sys = full.system();
  std::vector<char> in_J(sys.m(), 0);
  for (int j : J) in_J.at(j) = 1;
  for (int k = 0; k < sys.m(); ++k) {
    if (in_J[k]) continue;
    auto covered = b_empty(sys.spaces[k]);
    for (int j : J) covered = b_union(covered, sys.A[k][j]);
    if (!b_subset(V.parts[k], covered)) return false;
  }
  return true;
}

// Restrict a full-space set contained in the sub-image to the sub-glued space.
template <class B>
GluedSet<B> restrict_to_sub(const Glued<B>& full, const Glued<B>& sub, const std::vector<int>& J,
                            const GluedSet<B>& V) {
  if (!set_within_sub_image(full, J, V))
    throw std::invalid_argument("set not contained in the subsystem image");
  std::vector<typename B::Set> raw;
  for (int j : J) raw.push_back(V.parts.at(j));
  return sub.saturate(std::move(raw));
}

// The sub-glued-to-full map as an explicit finite map between quotient spaces.
inline FinMap sub_embedding_finmap(const FinGlued& full, const FinGlued& sub, const std::vector<int>& J) {
  const auto& fqs = sub.finite_quotient();
  const auto& fqf = full.finite_quotient();
  std::vector<int> t(fqs.Q.n(), -1);
  for (size_t a = 0; a < J.size(); ++a)
    for (int x = 0; x < sub.system().spaces[a].n(); ++x) {
      int c_sub = fqs.proj(fqs.offsets[a] + x);
      int c_full = fqf.proj(fqf.offsets[J[a]] + x);
      if (t[c_sub] != -1 && t[c_sub] != c_full)
        throw std::logic_error("subsystem embedding not well defined");
      t[c_sub] = c_full;
    }
  return FinMap(fqs.Q.n(), fqf.Q.n(), std::move(t));
}

// ---- locally-finite cover witness -----------------------------------------

// Smallest convenient open neighborhood of x inside the open set U.
inline PointSet small_open_around(const FinSpace& X, int x, const PointSet& U) {
  if (!X.is_open(U) || !U.contains(x)) throw std::invalid_argument("need x in an open U");
  return X.min_open(x);  // minimal open, automatically inside U
}
inline Region small_open_around(const EucSpace& X, const std::vector<Rat>& x, const Region& U) {
  if (!region_is_open(U) || !U.contains(x)) throw std::invalid_argument("need x in an open U");
  Rat r(1);
  for (int it = 0; it < 64; ++it, r /= 2) {
    Box b;
    for (size_t k = 0; k < x.size(); ++k) b.push_back(Interval::open(ExtRat(x[k] - r), ExtRat(x[k] + r)));
    Region box(X.dim, {b});
    if (region_subset(box, U)) return box;
  }
  throw std::logic_error("no rational box neighborhood found");  // cannot happen for rational data
}

template <class B>
struct ParacompactWitness {
  GluedSet<B> W;
  std::vector<std::string> cases;               // one label per other index j
  std::vector<std::pair<int, int>> meets;       // (component, cover member) meeting W
};

// The three-case construction of a neighborhood of p that meets only finitely
// many members of the glued cover {phi_i(U) : U in covers[i]} — here the
// count is exhibited explicitly and returned alongside W.
template <class B>
ParacompactWitness<B> paracompact_witness(const Glued<B>& g,
                                          const std::vector<std::vector<typename B::Set>>& covers,
                                          const GluedPoint<B>& p) {
  const auto& sys = g.system();
  if (!all_gluing_regions_open(sys))
    throw std::invalid_argument("cover witness construction needs open gluing regions");
  if (static_cast<int>(covers.size()) != sys.m())
    throw std::invalid_argument("need one cover per component");
  for (int i = 0; i < sys.m(); ++i) {
    auto uni = b_empty(sys.spaces[i]);
    for (const auto& U : covers[i]) {
      if (!b_is_open(sys.spaces[i], U)) throw std::invalid_argument("cover member not open");
      uni = b_union(uni, U);
    }
    if (!(uni == b_whole(sys.spaces[i]))) throw std::invalid_argument("family does not cover component");
  }

  int i = p.i;
  ParacompactWitness<B> out{g.pushforward_i(i, small_open_around(sys.spaces[i], p.x, b_whole(sys.spaces[i]))), {}, {}};
  for (int j = 0; j < sys.m(); ++j) {
    if (j == i) continue;
    GluedSet<B> Wj = g.whole();
    if (b_contains(sys.A[i][j], p.x)) {
      out.cases.push_back("inside-gluing");
      Wj = g.pushforward_i(i, small_open_around(sys.spaces[i], p.x, sys.A[i][j]));
    } else {
      auto inner = b_interior(sys.spaces[i], b_difference(b_whole(sys.spaces[i]), sys.A[i][j]));
      if (b_contains(inner, p.x)) {
        out.cases.push_back("interior-of-complement");
        Wj = g.pushforward_i(i, small_open_around(sys.spaces[i], p.x, inner));
      } else {
        out.cases.push_back("gluing-boundary");
        auto Bi = small_open_around(sys.spaces[i], p.x, b_whole(sys.spaces[i]));
        auto y = b_apply(sys.f[i][j], p.x);  // canonical extension across the boundary
        auto Bj = small_open_around(sys.spaces[j], y, b_whole(sys.spaces[j]));
        Wj = g.gs_union(g.pushforward_i(i, Bi), g.pushforward_i(j, Bj));
      }
    }
    out.W = g.gs_intersect(out.W, Wj);
  }
  if (!g.member(out.W, p)) throw std::logic_error("witness does not contain the point");
  if (!g.is_open(out.W)) throw std::logic_error("witness not open");
  for (int c = 0; c < sys.m(); ++c)
    for (size_t u = 0; u < covers[c].size(); ++u) {
      auto member_img = g.pushforward_i(c, covers[c][u]);
      bool meet = false;
      for (int t = 0; t < sys.m(); ++t)
        if (!b_is_empty(b_intersect(member_img.parts[t], out.W.parts[t]))) { meet = true; break; }
      if (meet) out.meets.emplace_back(c, static_cast<int>(u));
    }
  return out;
}

}  // namespace adjsp
