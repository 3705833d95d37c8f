#pragma once

// Finite topological spaces in Alexandrov form: each point carries its
// minimal open neighborhood, which determines the whole open-set lattice.
// This is the exact oracle backend; everything here is a small, total scan.

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace adjsp {

class FinSpace;

// Subset of the carrier {0..n-1} of some FinSpace, as a bit vector.
struct PointSet {
  int n = 0;
  std::vector<char> bits;  // bits[x] != 0 iff x is a member

  PointSet() = default;
  explicit PointSet(int n_) : n(n_), bits(n_, 0) {}

  static PointSet full(int n) {
    PointSet s(n);
    std::fill(s.bits.begin(), s.bits.end(), 1);
    return s;
  }
  static PointSet of(int n, std::initializer_list<int> pts) {
    PointSet s(n);
    for (int p : pts) s.bits.at(p) = 1;
    return s;
  }

  bool contains(int x) const { return x >= 0 && x < n && bits[x]; }
  void add(int x) { bits.at(x) = 1; }
  void remove(int x) { bits.at(x) = 0; }
  int count() const { return static_cast<int>(std::count(bits.begin(), bits.end(), 1)); }
  bool empty() const { return count() == 0; }

  std::vector<int> points() const {
    std::vector<int> out;
    for (int x = 0; x < n; ++x)
      if (bits[x]) out.push_back(x);
    return out;
  }

  friend bool operator==(const PointSet& a, const PointSet& b) = default;
};

inline void require_same_carrier(const PointSet& a, const PointSet& b) {
  if (a.n != b.n) throw std::invalid_argument("point sets over different carriers");
}

inline PointSet set_union(const PointSet& a, const PointSet& b) {
  require_same_carrier(a, b);
  PointSet r(a.n);
  for (int x = 0; x < a.n; ++x) r.bits[x] = a.bits[x] | b.bits[x];
  return r;
}
inline PointSet set_intersect(const PointSet& a, const PointSet& b) {
  require_same_carrier(a, b);
  PointSet r(a.n);
  for (int x = 0; x < a.n; ++x) r.bits[x] = a.bits[x] & b.bits[x];
  return r;
}
inline PointSet set_difference(const PointSet& a, const PointSet& b) {
  require_same_carrier(a, b);
  PointSet r(a.n);
  for (int x = 0; x < a.n; ++x) r.bits[x] = a.bits[x] & !b.bits[x];
  return r;
}
inline PointSet set_complement(const PointSet& a) {
  PointSet r(a.n);
  for (int x = 0; x < a.n; ++x) r.bits[x] = !a.bits[x];
  return r;
}
inline bool is_subset(const PointSet& a, const PointSet& b) {
  require_same_carrier(a, b);
  for (int x = 0; x < a.n; ++x)
    if (a.bits[x] && !b.bits[x]) return false;
  return true;
}

class FinSpace {
 public:
  FinSpace() = default;

  // Validates the Alexandrov laws: x in min_open(x), and membership is
  // transitive (y in min_open(x) implies min_open(y) subset of min_open(x)).
  explicit FinSpace(std::vector<std::vector<int>> min_open_lists) {
    n_ = static_cast<int>(min_open_lists.size());
    min_open_.assign(n_, PointSet(n_));
    for (int x = 0; x < n_; ++x)
      for (int y : min_open_lists[x]) {
        if (y < 0 || y >= n_) throw std::invalid_argument("min_open point out of range");
        min_open_[x].add(y);
      }
    for (int x = 0; x < n_; ++x) {
      if (!min_open_[x].contains(x))
        throw std::invalid_argument("min_open table not reflexive at point " + std::to_string(x));
      for (int y = 0; y < n_; ++y)
        if (min_open_[x].contains(y) && !is_subset(min_open_[y], min_open_[x]))
          throw std::invalid_argument("min_open table not transitive at pair (" +
                                      std::to_string(x) + "," + std::to_string(y) + ")");
    }
  }

  static FinSpace discrete(int n) {
    std::vector<std::vector<int>> t(n);
    for (int x = 0; x < n; ++x) t[x] = {x};
    return FinSpace(std::move(t));
  }

  int n() const { return n_; }
  const PointSet& min_open(int x) const { return min_open_.at(x); }

  PointSet empty_set() const { return PointSet(n_); }
  PointSet whole() const { return PointSet::full(n_); }

  bool is_open(const PointSet& s) const {
    check_carrier(s);
    for (int x = 0; x < n_; ++x)
      if (s.bits[x] && !is_subset(min_open_[x], s)) return false;
    return true;
  }

  PointSet closure(const PointSet& s) const {
    check_carrier(s);
    PointSet r(n_);
    for (int x = 0; x < n_; ++x)
      if (!set_intersect(min_open_[x], s).empty()) r.add(x);
    return r;
  }
  PointSet interior(const PointSet& s) const {
    return set_complement(closure(set_complement(s)));
  }
  PointSet boundary(const PointSet& s) const {
    return set_difference(closure(s), interior(s));
  }

  // Connectivity of the subspace topology on s; for finite spaces this is
  // graph connectivity under "one point lies in the minimal open of the other".
  std::vector<PointSet> components(const PointSet& s) const {
    check_carrier(s);
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int x = 0; x < n_; ++x)
      if (s.bits[x])
        for (int y = 0; y < n_; ++y)
          if (s.bits[y] && (min_open_[x].contains(y) || min_open_[y].contains(x)))
            parent[find(x)] = find(y);
    std::vector<PointSet> out;
    std::vector<int> root_slot(n_, -1);
    for (int x = 0; x < n_; ++x)
      if (s.bits[x]) {
        int r = find(x);
        if (root_slot[r] < 0) {
          root_slot[r] = static_cast<int>(out.size());
          out.emplace_back(n_);
        }
        out[root_slot[r]].add(x);
      }
    return out;
  }
  bool is_connected(const PointSet& s) const { return components(s).size() <= 1; }

  // Two distinct points admit disjoint open neighborhoods iff their minimal
  // opens are disjoint.
  bool separable_pair(int x, int y) const {
    if (x == y) throw std::invalid_argument("separable_pair requires distinct points");
    return set_intersect(min_open_.at(x), min_open_.at(y)).empty();
  }

  std::vector<std::pair<int, int>> y_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int x = 0; x < n_; ++x)
      for (int y = x + 1; y < n_; ++y)
        if (!separable_pair(x, y)) out.emplace_back(x, y);
    return out;
  }
  bool is_hausdorff() const { return y_pairs().empty(); }

  bool is_T1() const {
    bool by_min_open = true, by_closed_points = true;
    for (int x = 0; x < n_; ++x) {
      if (min_open_[x].count() != 1) by_min_open = false;
      PointSet single(n_);
      single.add(x);
      if (!(closure(single) == single)) by_closed_points = false;
    }
    if (by_min_open != by_closed_points)
      throw std::logic_error("T1 characterizations disagree");  // impossible for finite spaces
    return by_closed_points;
  }

 private:
  void check_carrier(const PointSet& s) const {
    if (s.n != n_) throw std::invalid_argument("point set over a different carrier");
  }
  int n_ = 0;
  std::vector<PointSet> min_open_;
};

struct FinMap {
  int source_n = 0;
  int target_n = 0;
  std::vector<int> table;  // total on 0..source_n-1

  FinMap() = default;
  FinMap(int src, int tgt, std::vector<int> t) : source_n(src), target_n(tgt), table(std::move(t)) {
    if (static_cast<int>(table.size()) != source_n)
      throw std::invalid_argument("map table size mismatch");
    for (int v : table)
      if (v < 0 || v >= target_n) throw std::invalid_argument("map image out of range");
  }
  static FinMap identity(int n) {
    std::vector<int> t(n);
    std::iota(t.begin(), t.end(), 0);
    return FinMap(n, n, std::move(t));
  }
  int operator()(int x) const { return table.at(x); }

  PointSet image(const PointSet& s) const {
    PointSet r(target_n);
    for (int x = 0; x < source_n; ++x)
      if (s.bits[x]) r.add(table[x]);
    return r;
  }
  PointSet preimage(const PointSet& s) const {
    PointSet r(source_n);
    for (int x = 0; x < source_n; ++x)
      if (s.contains(table[x])) r.add(x);
    return r;
  }

  friend FinMap compose(const FinMap& g, const FinMap& f) {  // g after f
    if (f.target_n != g.source_n) throw std::invalid_argument("compose: carrier mismatch");
    std::vector<int> t(f.source_n);
    for (int x = 0; x < f.source_n; ++x) t[x] = g(f(x));
    return FinMap(f.source_n, g.target_n, std::move(t));
  }
};

// Continuity in Alexandrov form: f respects minimal opens.
inline bool check_continuous(const FinSpace& X, const FinSpace& Y, const FinMap& f) {
  if (f.source_n != X.n() || f.target_n != Y.n())
    throw std::invalid_argument("map carriers do not match the given spaces");
  for (int x = 0; x < X.n(); ++x)
    if (!is_subset(f.image(X.min_open(x)), Y.min_open(f(x)))) return false;
  return true;
}

// Open map: images of minimal opens are open (every open set is a union of
// minimal opens, so this suffices).
inline bool check_open_map(const FinSpace& X, const FinSpace& Y, const FinMap& f) {
  if (f.source_n != X.n() || f.target_n != Y.n())
    throw std::invalid_argument("map carriers do not match the given spaces");
  for (int x = 0; x < X.n(); ++x)
    if (!Y.is_open(f.image(X.min_open(x)))) return false;
  return true;
}

// Topological embedding: injective, and f maps each minimal open exactly onto
// the subspace minimal open of the image point.
inline bool check_embedding(const FinSpace& X, const FinSpace& Y, const FinMap& f) {
  if (f.source_n != X.n() || f.target_n != Y.n())
    throw std::invalid_argument("map carriers do not match the given spaces");
  PointSet img = f.image(X.whole());
  if (img.count() != X.n()) return false;  // not injective
  for (int x = 0; x < X.n(); ++x)
    if (!(f.image(X.min_open(x)) == set_intersect(Y.min_open(f(x)), img))) return false;
  return true;
}

// Quotient by a partition: carries the finest topology making the projection
// continuous. Minimal opens of classes are computed as the smallest saturated
// open supersets (alternate open-hull and class-saturation to a fixed point).
inline std::pair<FinSpace, FinMap> quotient(const FinSpace& X, const std::vector<std::vector<int>>& classes) {
  std::vector<int> cls_of(X.n(), -1);
  for (int c = 0; c < static_cast<int>(classes.size()); ++c)
    for (int x : classes[c]) {
      if (x < 0 || x >= X.n() || cls_of[x] != -1)
        throw std::invalid_argument("classes do not partition the carrier");
      cls_of[x] = c;
    }
  for (int x = 0; x < X.n(); ++x)
    if (cls_of[x] == -1) throw std::invalid_argument("classes do not partition the carrier");
  for (const auto& c : classes)
    if (c.empty()) throw std::invalid_argument("empty class");

  int m = static_cast<int>(classes.size());
  std::vector<std::vector<int>> qmin(m);
  for (int c = 0; c < m; ++c) {
    PointSet s(X.n());
    for (int x : classes[c]) s.add(x);
    for (;;) {
      PointSet hull(X.n());
      for (int x = 0; x < X.n(); ++x)
        if (s.bits[x]) hull = set_union(hull, X.min_open(x));
      PointSet sat = hull;
      for (int x = 0; x < X.n(); ++x)
        if (hull.bits[x])
          for (int y : classes[cls_of[x]]) sat.add(y);
      if (sat == s) break;
      s = sat;
    }
    for (int d = 0; d < m; ++d)
      if (s.contains(classes[d][0])) qmin[c].push_back(d);
  }
  FinSpace Q(std::move(qmin));
  return {Q, FinMap(X.n(), m, cls_of)};
}

// Disjoint union; returns the space and the index offset of each summand.
inline std::pair<FinSpace, std::vector<int>> disjoint_union(const std::vector<FinSpace>& spaces) {
  std::vector<int> offsets;
  int total = 0;
  for (const auto& X : spaces) {
    offsets.push_back(total);
    total += X.n();
  }
  std::vector<std::vector<int>> t(total);
  for (size_t i = 0; i < spaces.size(); ++i)
    for (int x = 0; x < spaces[i].n(); ++x)
      for (int y : spaces[i].min_open(x).points()) t[offsets[i] + x].push_back(offsets[i] + y);
  return {FinSpace(std::move(t)), offsets};
}

// Exhaustive open-set lattice; exponential, intended as a test oracle only.
inline std::vector<PointSet> enumerate_open_sets(const FinSpace& X) {
  if (X.n() > 20) throw std::invalid_argument("lattice enumeration bound exceeded");
  std::vector<PointSet> out;
  for (unsigned mask = 0; mask < (1u << X.n()); ++mask) {
    PointSet s(X.n());
    for (int x = 0; x < X.n(); ++x)
      if (mask & (1u << x)) s.add(x);
    if (X.is_open(s)) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace adjsp
