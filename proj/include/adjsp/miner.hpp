#pragma once

// Exhaustive enumeration of small finite adjunction systems (up to 7 total
// points, up to 3 components) with canonical-form deduplication, and the
// lemma-implication checks ("mining" for counterexamples) built on it.

#include <functional>

#include "glued.hpp"

namespace adjsp {
namespace detail {

// All Alexandrov min-open tables on n points, rows as bitmasks. The Alexandrov
// laws are pairwise (reflexive; y in U(x) implies U(y) subset of U(x)), so
// row-by-row backtracking with pairwise checks is exact.
inline void for_each_topology(int n, const std::function<void(const std::vector<unsigned>&)>& fn) {
  std::vector<unsigned> rows(n, 0);
  unsigned all = (1u << n) - 1;
  auto rec = [&](auto&& self, int k) -> void {
    if (k == n) {
      fn(rows);
      return;
    }
    for (unsigned mask = 0; mask <= all; ++mask) {
      if (!(mask >> k & 1u)) continue;
      bool ok = true;
      for (int j = 0; j < k && ok; ++j) {
        if ((mask >> j & 1u) && (rows[j] & ~mask)) ok = false;
        if ((rows[j] >> k & 1u) && (mask & ~rows[j])) ok = false;
      }
      if (!ok) continue;
      rows[k] = mask;
      self(self, k + 1);
    }
  };
  rec(rec, 0);
}

inline FinSpace space_from_masks(const std::vector<unsigned>& rows) {
  std::vector<std::vector<int>> t(rows.size());
  for (size_t x = 0; x < rows.size(); ++x)
    for (size_t y = 0; y < rows.size(); ++y)
      if (rows[x] >> y & 1u) t[x].push_back(static_cast<int>(y));
  return FinSpace(std::move(t));
}

// One gluing choice for an ordered pair (i, j): a subset of X_i and an
// injection of it into X_j.
struct GluingChoice {
  unsigned mask = 0;            // subset of X_i
  std::vector<int> image;       // image[k] = target of the k-th member (ascending)
};

inline std::vector<GluingChoice> all_gluing_choices(int ni, int nj) {
  std::vector<GluingChoice> out;
  for (unsigned mask = 0; mask < (1u << ni); ++mask) {
    std::vector<int> members;
    for (int x = 0; x < ni; ++x)
      if (mask >> x & 1u) members.push_back(x);
    std::vector<int> image;
    std::vector<char> used(nj, 0);
    auto rec = [&](auto&& self, size_t k) -> void {
      if (k == members.size()) {
        out.push_back({mask, image});
        return;
      }
      for (int y = 0; y < nj; ++y) {
        if (used[y]) continue;
        used[y] = 1;
        image.push_back(y);
        self(self, k + 1);
        image.pop_back();
        used[y] = 0;
      }
    };
    rec(rec, 0);
  }
  return out;
}

// Encoding of a finite system under a relabeling: component order sigma (a
// permutation of equal-size blocks, old index at each new position) and
// per-component point permutations pi (new index of each old point). Maps are
// encoded only on their gluing region, so filler values in the stored tables
// never influence the canonical form. Both stored directions of a gluing are
// covered because each ordered component pair is emitted.
inline std::vector<int> encode_system(const FinAdjSystem& sys, const std::vector<int>& sigma,
                                      const std::vector<std::vector<int>>& pi) {
  int m = sys.m();
  std::vector<int> enc;
  // inverse point permutations: old point of new index
  std::vector<std::vector<int>> inv(m);
  for (int d = 0; d < m; ++d) {
    inv[d].assign(pi[d].size(), 0);
    for (size_t x = 0; x < pi[d].size(); ++x) inv[d][pi[d][x]] = static_cast<int>(x);
  }
  for (int c = 0; c < m; ++c) {
    int d = sigma[c];
    int n = sys.spaces[d].n();
    for (int u = 0; u < n; ++u) {
      int bits = 0;
      for (int v = 0; v < n; ++v)
        if (sys.spaces[d].min_open(inv[d][u]).contains(inv[d][v])) bits |= 1 << v;
      enc.push_back(bits);
    }
  }
  for (int c1 = 0; c1 < m; ++c1)
    for (int c2 = c1 + 1; c2 < m; ++c2) {
      int d1 = sigma[c1], d2 = sigma[c2];
      int n1 = sys.spaces[d1].n();
      for (int u = 0; u < n1; ++u) {
        int x = inv[d1][u];
        enc.push_back(sys.A[d1][d2].contains(x) ? pi[d2][sys.f[d1][d2](x)] : -1);
      }
    }
  return enc;
}

// Compares the encoding under (sigma, pi) against base element by element,
// aborting at the first difference. Returns true iff strictly smaller.
inline bool encodes_smaller(const FinAdjSystem& sys, const std::vector<int>& sigma,
                            const std::vector<std::vector<int>>& pi,
                            const std::vector<std::vector<int>>& inv,
                            const std::vector<int>& base) {
  int m = sys.m();
  size_t idx = 0;
  auto step = [&](int e) {  // -1 smaller, 0 tie so far, +1 larger
    int b = base[idx++];
    return e < b ? -1 : (e > b ? 1 : 0);
  };
  for (int c = 0; c < m; ++c) {
    int d = sigma[c];
    int n = sys.spaces[d].n();
    for (int u = 0; u < n; ++u) {
      int bits = 0;
      for (int v = 0; v < n; ++v)
        if (sys.spaces[d].min_open(inv[d][u]).contains(inv[d][v])) bits |= 1 << v;
      if (int s = step(bits)) return s < 0;
    }
  }
  for (int c1 = 0; c1 < m; ++c1)
    for (int c2 = c1 + 1; c2 < m; ++c2) {
      int d1 = sigma[c1], d2 = sigma[c2];
      int n1 = sys.spaces[d1].n();
      for (int u = 0; u < n1; ++u) {
        int x = inv[d1][u];
        int e = sys.A[d1][d2].contains(x) ? pi[d2][sys.f[d1][d2](x)] : -1;
        if (int s = step(e)) return s < 0;
      }
    }
  return false;  // equal
}

inline bool is_canonical(const FinAdjSystem& sys) {
  int m = sys.m();
  std::vector<std::vector<int>> pi(m), inv(m);
  for (int d = 0; d < m; ++d) {
    pi[d].resize(sys.spaces[d].n());
    std::iota(pi[d].begin(), pi[d].end(), 0);
    inv[d] = pi[d];
  }
  std::vector<int> id_sigma(m);
  std::iota(id_sigma.begin(), id_sigma.end(), 0);
  std::vector<int> base = encode_system(sys, id_sigma, pi);

  // component permutations preserving the size tuple
  std::vector<std::vector<int>> sigmas;
  std::vector<int> sigma = id_sigma;
  do {
    bool ok = true;
    for (int c = 0; c < m; ++c)
      if (sys.spaces[sigma[c]].n() != sys.spaces[c].n()) ok = false;
    if (ok) sigmas.push_back(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  auto set_perm = [&](int d, const std::vector<int>& perm) {
    pi[d] = perm;
    for (size_t x = 0; x < perm.size(); ++x) inv[d][perm[x]] = static_cast<int>(x);
  };
  // iterate all point-permutation tuples; false => found a smaller encoding
  auto rec = [&](auto&& self, int d) -> bool {
    if (d == m) {
      for (const auto& s : sigmas)
        if (encodes_smaller(sys, s, pi, inv, base)) return false;
      return true;
    }
    std::vector<int> perm(sys.spaces[d].n());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      set_perm(d, perm);
      if (!self(self, d + 1)) return false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::iota(perm.begin(), perm.end(), 0);
    set_perm(d, perm);
    return true;
  };
  return rec(rec, 0);
}

}  // namespace detail

// Enumerates, in a fixed deterministic order, every valid finite adjunction
// system with exactly `total` points spread over 1..3 components, one
// representative per isomorphism class (component relabeling plus point
// relabeling).
inline void enumerate_canonical_systems_of_total(
    int total, const std::function<void(const FinAdjSystem&)>& fn) {
  if (total < 1 || total > 7) throw std::invalid_argument("total points must be in 1..7");
  for (int m = 1; m <= 3 && m <= total; ++m) {
    // non-decreasing size tuples summing to total
    std::vector<std::vector<int>> tuples;
    std::vector<int> cur;
    auto parts = [&](auto&& self, int rest, int minv, int slots) -> void {
      if (slots == 0) {
        if (rest == 0) tuples.push_back(cur);
        return;
      }
      for (int v = minv; v <= rest - (slots - 1); ++v) {
        cur.push_back(v);
        self(self, rest - v, v, slots - 1);
        cur.pop_back();
      }
    };
    parts(parts, total, 1, m);
    for (const auto& sizes : tuples) {
      // topology lists per component size (shared per distinct size)
      std::vector<std::vector<FinSpace>> tops(m);
      for (int d = 0; d < m; ++d)
        detail::for_each_topology(sizes[d], [&](const std::vector<unsigned>& rows) {
          tops[d].push_back(detail::space_from_masks(rows));
        });
      std::vector<std::vector<std::vector<detail::GluingChoice>>> choices(m);
      for (int i = 0; i < m; ++i) {
        choices[i].resize(m);
        for (int j = i + 1; j < m; ++j) choices[i][j] = detail::all_gluing_choices(sizes[i], sizes[j]);
      }
      std::vector<int> top_pick(m, 0);
      auto with_topologies = [&](auto&& self, int d) -> void {
        if (d < m) {
          for (top_pick[d] = 0; top_pick[d] < static_cast<int>(tops[d].size()); ++top_pick[d])
            self(self, d + 1);
          return;
        }
        std::vector<FinSpace> spaces;
        for (int c = 0; c < m; ++c) spaces.push_back(tops[c][top_pick[c]]);
        auto base = make_system<FiniteBackend>(spaces);
        // assign one gluing choice per unordered pair
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < m; ++i)
          for (int j = i + 1; j < m; ++j) pairs.push_back({i, j});
        auto glue = [&](auto&& gself, size_t p) -> void {
          if (p == pairs.size()) {
            if (!validate(base).valid()) return;
            if (!detail::is_canonical(base)) return;
            fn(base);
            return;
          }
          auto [i, j] = pairs[p];
          for (const auto& gc : choices[i][j]) {
            PointSet a(sizes[i]);
            std::vector<int> table(sizes[i], 0);
            int k = 0;
            for (int x = 0; x < sizes[i]; ++x)
              if (gc.mask >> x & 1u) {
                a.add(x);
                table[x] = gc.image[k++];
              }
            set_gluing(base, i, j, a, FinMap(sizes[i], sizes[j], table));
            gself(gself, p + 1);
          }
          // restore empty gluing for this pair before returning
          set_gluing(base, i, j, PointSet(sizes[i]), FinMap(sizes[i], sizes[j], std::vector<int>(sizes[i], 0)));
        };
        glue(glue, 0);
      };
      with_topologies(with_topologies, 0);
    }
  }
}

inline void enumerate_canonical_systems(int max_points,
                                        const std::function<void(const FinAdjSystem&)>& fn) {
  for (int total = 1; total <= max_points; ++total) enumerate_canonical_systems_of_total(total, fn);
}

// ---- lemma checks ----------------------------------------------------------

inline std::vector<std::string> lemma_hypotheses(const std::string& lemma) {
  if (lemma == "connectedness") return {"components-connected", "regions-nonempty"};
  if (lemma == "graph-connectedness") return {"components-connected", "graph-connected"};
  if (lemma == "t1") return {"components-t1"};
  if (lemma == "open-embedding") return {"regions-open"};
  throw std::invalid_argument("unknown lemma: " + lemma +
                              " (expected connectedness | graph-connectedness | t1 | open-embedding)");
}

inline bool hypothesis_holds(const FinAdjSystem& sys, const std::string& id) {
  int m = sys.m();
  if (id == "components-connected") {
    for (const auto& X : sys.spaces)
      if (!X.is_connected(X.whole())) return false;
    return true;
  }
  if (id == "regions-nonempty") {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (i != j && sys.A[i][j].empty()) return false;
    return true;
  }
  if (id == "graph-connected") {
    // union-find over the component graph
    std::vector<int> rep(m);
    std::iota(rep.begin(), rep.end(), 0);
    auto find = [&](int a) { while (rep[a] != a) a = rep[a] = rep[rep[a]]; return a; };
    for (auto [i, j] : component_graph(sys)) rep[find(i)] = find(j);
    for (int i = 1; i < m; ++i)
      if (find(i) != find(0)) return false;
    return true;
  }
  if (id == "components-t1") {
    for (const auto& X : sys.spaces)
      if (!X.is_T1()) return false;
    return true;
  }
  if (id == "regions-open") return all_gluing_regions_open(sys);
  throw std::invalid_argument("unknown hypothesis: " + id);
}

// Empty string when the conclusion holds, otherwise a reason.
inline std::string lemma_conclusion_failure(const FinAdjSystem& sys, const std::string& lemma) {
  FinGlued g(sys, /*check=*/false);
  const FinSpace& Q = g.finite_quotient().Q;
  if (lemma == "connectedness" || lemma == "graph-connectedness")
    return Q.is_connected(Q.whole()) ? "" : "glued space disconnected";
  if (lemma == "t1") return Q.is_T1() ? "" : "glued space not T1";
  if (lemma == "open-embedding") {
    for (int i = 0; i < sys.m(); ++i) {
      FinMap p = g.phi(i);
      if (!check_embedding(sys.spaces[i], Q, p) || !check_open_map(sys.spaces[i], Q, p))
        return "phi_" + std::to_string(i) + " not an open embedding";
    }
    return "";
  }
  throw std::invalid_argument("unknown lemma: " + lemma);
}

struct MineOptions {
  std::string lemma;
  int max_points = 6;
  std::string drop_hypothesis;  // empty = keep all hypotheses
};

struct MineWitness {
  FinAdjSystem sys;
  int total_points = 0;
  std::string reason;
};

struct MineResult {
  long long canonical_systems = 0;
  long long hypothesis_matches = 0;
  std::vector<MineWitness> witnesses;
};

// With all hypotheses kept, scans every canonical system up to the bound and
// collects counterexamples (soundness means none). With one hypothesis
// dropped, returns the witnesses of minimal total size.
inline MineResult mine(const MineOptions& opt) {
  if (opt.max_points < 1 || opt.max_points > 7)
    throw std::invalid_argument("max_points must be in 1..7");
  auto hyps = lemma_hypotheses(opt.lemma);
  if (!opt.drop_hypothesis.empty()) {
    auto it = std::find(hyps.begin(), hyps.end(), opt.drop_hypothesis);
    if (it == hyps.end())
      throw std::invalid_argument("lemma " + opt.lemma + " has no hypothesis " + opt.drop_hypothesis);
    hyps.erase(it);
  }
  MineResult res;
  for (int total = 1; total <= opt.max_points; ++total) {
    enumerate_canonical_systems_of_total(total, [&](const FinAdjSystem& sys) {
      ++res.canonical_systems;
      for (const auto& h : hyps)
        if (!hypothesis_holds(sys, h)) return;
      ++res.hypothesis_matches;
      std::string reason = lemma_conclusion_failure(sys, opt.lemma);
      if (!reason.empty()) res.witnesses.push_back({sys, total, std::move(reason)});
    });
    // a dropped hypothesis asks for minimal witnesses only
    if (!opt.drop_hypothesis.empty() && !res.witnesses.empty()) break;
  }
  return res;
}

}  // namespace adjsp
