#pragma once

// JSON (de)serialization for both backends, the analysis report, and DOT
// emission. Rationals travel as "p/q" strings; infinite endpoints as
// "-inf"/"inf". System files list regions/maps per ordered component pair
// "i,j"; omitted pairs default to the empty gluing (i != j) and to the
// identity self-gluing (i == j). Entries are applied verbatim — including
// deliberately broken ones — so the validator can report on hand-edited
// files.

#include <json.hpp>

#include "catalog.hpp"
#include "hausdorff.hpp"
#include "manifold.hpp"

namespace adjsp {

using nlohmann::json;

// ---- scalars ---------------------------------------------------------------

inline json rat_to_json(const Rat& r) { return rat_to_string(r); }
inline Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  return rat_from_string(j.get<std::string>());
}
inline json ext_to_json(const ExtRat& e) { return e.str(); }
inline ExtRat ext_from_json(const json& j) {
  if (j.is_number_integer()) return ExtRat(Rat(j.get<long long>()));
  return ext_from_string(j.get<std::string>());
}

// ---- regions and maps ------------------------------------------------------

inline json interval_to_json(const Interval& iv) {
  return json::array({ext_to_json(iv.lo), iv.lo_closed, ext_to_json(iv.hi), iv.hi_closed});
}
inline Interval interval_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw std::invalid_argument("interval must be [lo, lo_closed, hi, hi_closed]");
  return Interval(ext_from_json(j[0]), j[1].get<bool>(), ext_from_json(j[2]), j[3].get<bool>());
}

inline json region_to_json(const Region& r) {
  json cells = json::array();
  for (const auto& c : r.cells()) {
    json cell = json::array();
    for (const auto& iv : c) cell.push_back(interval_to_json(iv));
    cells.push_back(cell);
  }
  return cells;
}
inline Region region_from_json(const json& j, int dim) {
  std::vector<Box> cells;
  for (const auto& cj : j) {
    Box b;
    for (const auto& ij : cj) b.push_back(interval_from_json(ij));
    if (static_cast<int>(b.size()) != dim) throw std::invalid_argument("cell dimension mismatch");
    cells.push_back(std::move(b));
  }
  return Region(dim, std::move(cells));
}

inline json pointset_to_json(const PointSet& s) { return json(s.points()); }
inline PointSet pointset_from_json(const json& j, int n) {
  PointSet s(n);
  for (const auto& x : j) s.add(x.get<int>());
  return s;
}

inline json affine_to_json(const DiagAffine& f) {
  json a = json::array(), b = json::array();
  for (const auto& v : f.a) a.push_back(rat_to_json(v));
  for (const auto& v : f.b) b.push_back(rat_to_json(v));
  return json{{"a", a}, {"b", b}};
}
inline DiagAffine affine_from_json(const json& j) {
  std::vector<Rat> a, b;
  for (const auto& v : j.at("a")) a.push_back(rat_from_json(v));
  for (const auto& v : j.at("b")) b.push_back(rat_from_json(v));
  return DiagAffine(std::move(a), std::move(b));
}

inline json finmap_to_json(const FinMap& f) { return json(f.table); }
inline FinMap finmap_from_json(const json& j, int src, int tgt) {
  std::vector<int> t;
  for (const auto& x : j) t.push_back(x.get<int>());
  if (static_cast<int>(t.size()) != src) throw std::invalid_argument("map table length mismatch");
  return FinMap(src, tgt, std::move(t));
}

// ---- spaces and systems ----------------------------------------------------

inline json finspace_to_json(const FinSpace& X) {
  json rows = json::array();
  for (int x = 0; x < X.n(); ++x) rows.push_back(X.min_open(x).points());
  return json{{"n", X.n()}, {"min_open", rows}};
}
inline FinSpace finspace_from_json(const json& j) {
  int n = j.at("n").get<int>();
  std::vector<std::vector<int>> t;
  for (const auto& row : j.at("min_open")) t.push_back(row.get<std::vector<int>>());
  if (static_cast<int>(t.size()) != n) throw std::invalid_argument("min_open row count mismatch");
  return FinSpace(std::move(t));
}

inline std::string pair_key(int i, int j) { return std::to_string(i) + "," + std::to_string(j); }
inline std::pair<int, int> parse_pair_key(const std::string& k) {
  auto c = k.find(',');
  if (c == std::string::npos) throw std::invalid_argument("pair key must be \"i,j\"");
  return {std::stoi(k.substr(0, c)), std::stoi(k.substr(c + 1))};
}

inline json system_to_json(const FinAdjSystem& sys) {
  json spaces = json::array(), regions = json::object(), maps = json::object();
  for (const auto& X : sys.spaces) spaces.push_back(finspace_to_json(X));
  for (int i = 0; i < sys.m(); ++i)
    for (int j = 0; j < sys.m(); ++j) {
      if (i == j || sys.A[i][j].empty()) continue;
      regions[pair_key(i, j)] = pointset_to_json(sys.A[i][j]);
      maps[pair_key(i, j)] = finmap_to_json(sys.f[i][j]);
    }
  return json{{"backend", "finite"}, {"spaces", spaces}, {"regions", regions}, {"maps", maps}};
}

inline json system_to_json(const EucAdjSystem& sys) {
  json spaces = json::array(), regions = json::object(), maps = json::object();
  for (const auto& X : sys.spaces) spaces.push_back(json{{"dim", X.dim}});
  for (int i = 0; i < sys.m(); ++i)
    for (int j = 0; j < sys.m(); ++j) {
      if (i == j || b_is_empty(sys.A[i][j])) continue;
      regions[pair_key(i, j)] = region_to_json(sys.A[i][j]);
      maps[pair_key(i, j)] = affine_to_json(sys.f[i][j]);
    }
  return json{{"backend", "euclidean"}, {"spaces", spaces}, {"regions", regions}, {"maps", maps}};
}

inline json system_to_json(const CatalogSystem& sys) {
  return std::visit([](const auto& s) { return system_to_json(s); }, sys);
}

inline CatalogSystem system_from_json(const json& j) {
  std::string backend = j.at("backend").get<std::string>();
  if (backend == "finite") {
    std::vector<FinSpace> spaces;
    for (const auto& sj : j.at("spaces")) spaces.push_back(finspace_from_json(sj));
    auto sys = make_system<FiniteBackend>(spaces);
    if (j.contains("regions"))
      for (const auto& [key, rj] : j.at("regions").items()) {
        auto [i, a] = parse_pair_key(key);
        sys.A.at(i).at(a) = pointset_from_json(rj, spaces.at(i).n());
      }
    if (j.contains("maps"))
      for (const auto& [key, mj] : j.at("maps").items()) {
        auto [i, a] = parse_pair_key(key);
        sys.f.at(i).at(a) = finmap_from_json(mj, spaces.at(i).n(), spaces.at(a).n());
      }
    return sys;
  }
  if (backend == "euclidean") {
    std::vector<EucSpace> spaces;
    for (const auto& sj : j.at("spaces")) spaces.push_back(EucSpace{sj.at("dim").get<int>()});
    auto sys = make_system<EuclideanBackend>(spaces);
    if (j.contains("regions"))
      for (const auto& [key, rj] : j.at("regions").items()) {
        auto [i, a] = parse_pair_key(key);
        sys.A.at(i).at(a) = region_from_json(rj, spaces.at(i).dim);
      }
    if (j.contains("maps"))
      for (const auto& [key, mj] : j.at("maps").items()) {
        auto [i, a] = parse_pair_key(key);
        sys.f.at(i).at(a) = affine_from_json(mj);
      }
    return sys;
  }
  throw std::invalid_argument("backend must be \"finite\" or \"euclidean\"");
}

// ---- glued sets and PL functions -------------------------------------------

inline json gluedset_to_json(const GluedSet<FiniteBackend>& s) {
  json parts = json::array();
  for (const auto& p : s.parts) parts.push_back(pointset_to_json(p));
  return parts;
}
inline json gluedset_to_json(const GluedSet<EuclideanBackend>& s) {
  json parts = json::array();
  for (const auto& p : s.parts) parts.push_back(region_to_json(p));
  return parts;
}
inline GluedSet<FiniteBackend> gluedset_from_json(const json& j, const FinAdjSystem& sys) {
  if (static_cast<int>(j.size()) != sys.m()) throw std::invalid_argument("glued set needs one part per component");
  GluedSet<FiniteBackend> s;
  for (int i = 0; i < sys.m(); ++i) s.parts.push_back(pointset_from_json(j[i], sys.spaces[i].n()));
  return s;
}
inline GluedSet<EuclideanBackend> gluedset_from_json(const json& j, const EucAdjSystem& sys) {
  if (static_cast<int>(j.size()) != sys.m()) throw std::invalid_argument("glued set needs one part per component");
  GluedSet<EuclideanBackend> s;
  for (int i = 0; i < sys.m(); ++i) s.parts.push_back(region_from_json(j[i], sys.spaces[i].dim));
  return s;
}

inline json plfunction_to_json(const PLFunction& f) {
  json comps = json::array();
  for (const auto& c : f.comps) {
    json breaks = json::array(), values = json::array();
    for (const auto& b : c.breaks) breaks.push_back(rat_to_json(b));
    for (const auto& v : c.values) values.push_back(rat_to_json(v));
    comps.push_back(json{{"breaks", breaks},
                         {"values", values},
                         {"left_tail", rat_to_json(c.left_tail)},
                         {"right_tail", rat_to_json(c.right_tail)}});
  }
  return comps;
}
inline PLFunction plfunction_from_json(const json& j) {
  PLFunction f;
  for (const auto& cj : j) {
    PLComponent c;
    for (const auto& b : cj.at("breaks")) c.breaks.push_back(rat_from_json(b));
    for (const auto& v : cj.at("values")) c.values.push_back(rat_from_json(v));
    c.left_tail = rat_from_json(cj.at("left_tail"));
    c.right_tail = rat_from_json(cj.at("right_tail"));
    f.comps.push_back(std::move(c));
  }
  return f;
}

// ---- reports ---------------------------------------------------------------

inline json violations_to_json(const ValidationReport& v) {
  json out = json::array();
  for (const auto& viol : v.violations)
    out.push_back(json{{"axiom", viol.axiom},
                       {"i", viol.i},
                       {"j", viol.j},
                       {"k", viol.k},
                       {"message", viol.message}});
  return out;
}

template <class B>
json hajicek_to_json(const Glued<B>& g, const HajicekReport<B>& r) {
  auto set_str = [&](const GluedSet<B>& s) {
    json parts = json::array();
    for (const auto& p : s.parts) parts.push_back(b_set_str(p));
    return parts;
  };
  (void)g;
  return json{{"open", r.open},
              {"connected", r.connected},
              {"internally_hausdorff", r.hausdorff},
              {"boundary", set_str(r.boundary)},
              {"y_set", set_str(r.y)},
              {"cl_y_set", set_str(r.cl_y)},
              {"criterion_boundary_eq_cl_y", r.criterion},
              {"boundary_eq_y", r.boundary_eq_y},
              {"is_h_submanifold", r.is_h_submanifold}};
}

// One self-consistent snapshot of everything the analyzers can say about a
// system. The Hausdorff verdict and the Y-pair list come from the same
// computation, so "hausdorff" is true exactly when "y_pairs" is empty.
template <class B>
json analyze_to_json(const std::string& id, const AdjSystem<B>& sys) {
  json out;
  out["system"] = id;
  auto v = validate(sys);
  out["valid"] = v.valid();
  out["violations"] = violations_to_json(v);
  if (!v.valid()) return out;

  Glued<B> g(sys, /*check=*/false);
  out["components"] = sys.m();
  json edges = json::array();
  for (auto [i, j] : component_graph(sys)) edges.push_back(json::array({i, j}));
  out["component_graph"] = edges;
  out["connected"] = g.is_connected(g.whole());
  out["gluing_regions_open"] = all_gluing_regions_open(sys);

  if constexpr (std::is_same_v<B, FiniteBackend>) {
    const FinSpace& Q = g.finite_quotient().Q;
    out["quotient_points"] = Q.n();
    out["t1"] = Q.is_T1();
    out["hausdorff"] = Q.is_hausdorff();
    json yp = json::array();
    for (auto [a, b] : Q.y_pairs()) yp.push_back(json::array({a, b}));
    out["y_pairs"] = yp;
  } else {
    // euclidean classes are finite, hence closed: always T1
    out["t1"] = true;
    if (!all_gluing_regions_open(sys)) {
      out["hausdorff"] = nullptr;
      out["note"] = "Y-analysis needs open gluing regions";
      return out;
    }
    auto fam = y_pairs(g);
    json yp = json::array();
    for (const auto& e : fam.entries)
      if (e.i < e.j)
        yp.push_back(json{{"i", e.i},
                          {"j", e.j},
                          {"boundary", b_set_str(e.region)},
                          {"pairing", affine_to_json(e.pairing)}});
    out["y_pairs"] = yp;
    out["hausdorff"] = fam.empty();
  }

  if (all_gluing_regions_open(sys)) {
    json embeds = json::array();
    for (int i = 0; i < sys.m(); ++i) {
      auto img = g.pushforward_i(i, b_whole(sys.spaces[i]));
      embeds.push_back(hajicek_to_json(g, hajicek_check(g, img)));
    }
    out["embeddings"] = embeds;
  }
  return out;
}

inline json analyze_to_json(const std::string& id, const CatalogSystem& sys) {
  return std::visit([&](const auto& s) { return analyze_to_json(id, s); }, sys);
}

// ---- DOT -------------------------------------------------------------------

template <class B>
std::string dot_component_graph(const AdjSystem<B>& sys) {
  std::string out = "graph components {\n";
  for (int i = 0; i < sys.m(); ++i) out += "  c" + std::to_string(i) + ";\n";
  for (auto [i, j] : component_graph(sys))
    out += "  c" + std::to_string(i) + " -- c" + std::to_string(j) + ";\n";
  return out + "}\n";
}
inline std::string dot_component_graph(const CatalogSystem& sys) {
  return std::visit([](const auto& s) { return dot_component_graph(s); }, sys);
}

// Y-graph: nodes are the classes met by gluing-region boundaries, edges the
// Y-related pairs among them.
inline std::string dot_y_graph(const EucGlued& g) {
  auto cls = boundary_classes(g);
  std::string out = "graph y {\n";
  auto label = [&](const GluedPoint<EuclideanBackend>& p) {
    return "\"[" + b_point_str(p.x) + "," + std::to_string(p.i) + "]\"";
  };
  for (const auto& p : cls) out += "  " + label(p) + ";\n";
  for (size_t a = 0; a < cls.size(); ++a)
    for (size_t b = a + 1; b < cls.size(); ++b)
      if (y_related(g, cls[a], cls[b])) out += "  " + label(cls[a]) + " -- " + label(cls[b]) + ";\n";
  return out + "}\n";
}
inline std::string dot_y_graph(const FinGlued& g) {
  const FinSpace& Q = g.finite_quotient().Q;
  std::string out = "graph y {\n";
  for (int x = 0; x < Q.n(); ++x) out += "  q" + std::to_string(x) + ";\n";
  for (auto [a, b] : Q.y_pairs())
    out += "  q" + std::to_string(a) + " -- q" + std::to_string(b) + ";\n";
  return out + "}\n";
}

}  // namespace adjsp
