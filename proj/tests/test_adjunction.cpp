#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <adjsp/glued.hpp>

using namespace adjsp;

namespace {

FinSpace line3() { return FinSpace({{0}, {0, 1, 2}, {2}}); }

// n copies of R glued pairwise along (-inf, 0) with identity maps.
EucAdjSystem branched_line(int n) {
  auto sys = make_system<EuclideanBackend>(std::vector<EucSpace>(n, EucSpace{1}));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      set_gluing(sys, i, j, Region::of_interval(Interval::below(Rat(0))), DiagAffine::identity(1));
  return sys;
}

// n copies of the 3-point line model glued along the open point L.
FinAdjSystem finite_branched(int n) {
  auto sys = make_system<FiniteBackend>(std::vector<FinSpace>(n, line3()));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) set_gluing(sys, i, j, PointSet::of(3, {0}), FinMap::identity(3));
  return sys;
}

// Three copies of R: A_01 = (-inf,0), A_12 = (0,inf), A_02 empty.
EucAdjSystem nontransitive_line() {
  auto sys = make_system<EuclideanBackend>(std::vector<EucSpace>(3, EucSpace{1}));
  set_gluing(sys, 0, 1, Region::of_interval(Interval::below(Rat(0))), DiagAffine::identity(1));
  set_gluing(sys, 1, 2, Region::of_interval(Interval::above(Rat(0))), DiagAffine::identity(1));
  return sys;
}

// Two copies of R^2 glued along the open lower half-plane.
EucAdjSystem doubled_plane() {
  auto sys = make_system<EuclideanBackend>(std::vector<EucSpace>(2, EucSpace{2}));
  set_gluing(sys, 0, 1, Region::box2(Interval::line(), Interval::below(Rat(0))), DiagAffine::identity(2));
  return sys;
}

Region interval_region(Interval iv) { return Region::of_interval(std::move(iv)); }

// The identification relation on the disjoint union, checked to be an
// equivalence relation pair by pair (finite backend oracle for axiom checks).
bool relation_is_equivalence(const FinAdjSystem& sys) {
  struct P {
    int i, x;
    bool operator==(const P&) const = default;
  };
  std::vector<P> pts;
  for (int i = 0; i < sys.m(); ++i)
    for (int x = 0; x < sys.spaces[i].n(); ++x) pts.push_back({i, x});
  auto rel = [&](P a, P b) {
    if (a == b) return true;  // reflexive part via A1
    return sys.A[a.i][b.i].contains(a.x) && sys.f[a.i][b.i](a.x) == b.x;
  };
  for (auto a : pts)
    for (auto b : pts) {
      if (rel(a, b) != rel(b, a)) return false;
      for (auto c : pts)
        if (rel(a, b) && rel(b, c) && !rel(a, c)) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("validation") {
  SUBCASE("branched lines are valid") {
    for (int n : {1, 2, 3})
      CHECK(validate(branched_line(n)).valid());
    CHECK(validate(finite_branched(3)).valid());
    CHECK(validate(nontransitive_line()).valid());
    CHECK(validate(doubled_plane()).valid());
  }
  SUBCASE("single-space system is valid") {
    auto sys = make_system<EuclideanBackend>({EucSpace{1}});
    CHECK(validate(sys).valid());
  }
  SUBCASE("broken symmetry is reported with a witness") {
    auto sys = branched_line(2);
    sys.A[1][0] = Region::empty(1);
    auto rep = validate(sys);
    REQUIRE_FALSE(rep.valid());
    CHECK(rep.violations[0].axiom == "A2");
    CHECK(rep.violations[0].message.find("-1") != std::string::npos);
  }
  SUBCASE("broken identity is reported") {
    auto sys = branched_line(2);
    sys.f[0][0] = DiagAffine({Rat(2)}, {Rat(0)});
    auto rep = validate(sys);
    REQUIRE_FALSE(rep.valid());
    CHECK(rep.violations[0].axiom == "A1");
  }
  SUBCASE("broken cocycle is reported") {
    auto sys = branched_line(3);
    // shift the 0-2 gluing: f_02 = x+0 replaced by x -> x - 1 on the same region
    sys.f[0][2] = DiagAffine({Rat(1)}, {Rat(-1)});
    sys.f[2][0] = DiagAffine({Rat(1)}, {Rat(1)});
    sys.A[2][0] = region_map(sys.A[0][2], sys.f[0][2]);
    auto rep = validate(sys);
    REQUIRE_FALSE(rep.valid());
    bool saw_a3 = false;
    for (const auto& v : rep.violations) saw_a3 |= v.axiom == "A3";
    CHECK(saw_a3);
  }
  SUBCASE("finite non-homeomorphic gluing is reported") {
    auto sys = make_system<FiniteBackend>({line3(), line3()});
    // send {L,O} of copy 1 to {O,R} of copy 2: a bijection of subsets that is
    // not a homeomorphism of the subspaces
    set_gluing(sys, 0, 1, PointSet::of(3, {0, 1}), FinMap(3, 3, {1, 2, 2}));
    auto rep = validate(sys);
    REQUIRE_FALSE(rep.valid());
    bool saw_map = false;
    for (const auto& v : rep.violations) saw_map |= v.axiom == "map";
    CHECK(saw_map);
  }
}

TEST_CASE("relation is an equivalence relation exactly for validated systems") {
  CHECK(relation_is_equivalence(finite_branched(2)));
  CHECK(relation_is_equivalence(finite_branched(3)));
  // break A2 symmetry: relation loses symmetry
  auto sys = finite_branched(2);
  sys.A[1][0] = PointSet(3);
  CHECK_FALSE(validate(sys).valid());
  CHECK_FALSE(relation_is_equivalence(sys));
}

TEST_CASE("finite build: two line models glued at L") {
  FinGlued g(finite_branched(2));
  const auto& Q = g.finite_quotient().Q;
  CHECK(Q.n() == 5);
  CHECK(g.point_eq(0, 0, 1, 0));       // the two L's are identified
  CHECK_FALSE(g.point_eq(0, 1, 1, 1)); // the O's are not
  auto yp = Q.y_pairs();
  CHECK(yp.size() == 5);
  // phi_i are open embeddings (all gluing regions open)
  for (int i = 0; i < 2; ++i) {
    CHECK(check_embedding(g.system().spaces[i], Q, g.phi(i)));
    CHECK(check_open_map(g.system().spaces[i], Q, g.phi(i)));
  }
}

TEST_CASE("euclidean classes on the branched line") {
  EucGlued g(branched_line(3));
  // the origins are pairwise distinct
  std::vector<GluedPoint<EuclideanBackend>> origins;
  for (int i = 0; i < 3; ++i) origins.push_back(g.canonical_map(i, {Rat(0)}));
  CHECK(origins[0] != origins[1]);
  CHECK(origins[1] != origins[2]);
  CHECK(origins[0] != origins[2]);
  // negatives are all identified, canonically in component 0
  for (int i = 0; i < 3; ++i) {
    auto p = g.canonical_map(i, {Rat(-1)});
    CHECK(p.i == 0);
    CHECK(p.x == std::vector<Rat>{Rat(-1)});
  }
  CHECK(g.point_eq(0, {Rat(-1)}, 1, {Rat(-1)}));
  CHECK_FALSE(g.point_eq(0, {Rat(0)}, 1, {Rat(0)}));
  CHECK(g.point_eq(1, {Rat(2)}, 1, {Rat(2)}));
}

TEST_CASE("saturation and the openness criterion") {
  EucGlued g(branched_line(2));
  auto s = g.pushforward_i(0, interval_region(Interval::open(ExtRat(-1), ExtRat(1))));
  CHECK(g.preimage_i(s, 1) == interval_region(Interval::open(ExtRat(-1), ExtRat(0))));
  CHECK(g.is_open(s));
  CHECK(g.is_open(g.whole()));
  CHECK(g.is_saturated(s));

  FinGlued fg(finite_branched(2));
  auto t = fg.pushforward_i(0, PointSet::of(3, {1}));  // {O_1} alone
  CHECK_FALSE(fg.is_open(t));
  auto u = fg.pushforward_i(0, PointSet::of(3, {0}));  // open point L saturates across
  CHECK(fg.is_open(u));
  CHECK(u.parts[1] == PointSet::of(3, {0}));
}

TEST_CASE("openness criterion agrees with quotient-lattice openness") {
  for (auto sys : {finite_branched(2), finite_branched(1)}) {
    FinGlued g(sys);
    const auto& Q = g.finite_quotient().Q;
    for (unsigned mask = 0; mask < (1u << Q.n()); ++mask) {
      PointSet cls(Q.n());
      for (int c = 0; c < Q.n(); ++c)
        if (mask & (1u << c)) cls.add(c);
      auto s = g.from_class_set(cls);
      CHECK(g.is_open(s) == Q.is_open(cls));
    }
  }
}

TEST_CASE("disjoint union recovered from empty gluing") {
  auto sys = make_system<FiniteBackend>({line3(), line3()});
  FinGlued g(sys);
  CHECK(g.finite_quotient().Q.n() == 6);
  CHECK_FALSE(g.is_connected(g.whole()));
  CHECK(component_graph(sys).empty());
}

TEST_CASE("connectivity of glued sets") {
  EucGlued g(branched_line(2));
  CHECK(g.is_connected(g.whole()));
  auto conn = g.connectivity(g.empty_set());
  CHECK(conn.empty);
  CHECK_FALSE(conn.connected);
  // two pieces joined only through the gluing
  auto s = g.saturate({interval_region(Interval::open(ExtRat(-1), ExtRat(0))),
                       interval_region(Interval(ExtRat(0), true, ExtRat(1), false))});
  CHECK(g.is_connected(s));  // preimage in component 2 is (-1,1)
  // remove the joining origin class: disconnected
  auto t = g.saturate({interval_region(Interval::open(ExtRat(-1), ExtRat(0))),
                       interval_region(Interval::open(ExtRat(0), ExtRat(1)))});
  CHECK_FALSE(g.is_connected(t));
  // finite backend matches
  FinGlued fg(finite_branched(2));
  CHECK(fg.is_connected(fg.whole()));
}

TEST_CASE("component graph") {
  CHECK(component_graph(nontransitive_line()) ==
        std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  auto k3 = component_graph(branched_line(3));
  CHECK(k3 == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
}

TEST_CASE("glued topological operators") {
  SUBCASE("2-branched line: boundary of a canonical image") {
    EucGlued g(branched_line(2));
    auto v = g.pushforward_i(0, Region::whole(1));
    auto bd = g.glued_boundary(v);
    CHECK(bd.parts[0].is_empty());
    CHECK(bd.parts[1] == interval_region(Interval::point(Rat(0))));
    CHECK(g.glued_closure(g.whole()) == g.whole());
  }
  SUBCASE("doubled plane: boundary of a canonical image is the partner axis") {
    EucGlued g(doubled_plane());
    auto v = g.pushforward_i(0, Region::whole(2));
    auto bd = g.glued_boundary(v);
    CHECK(bd.parts[0].is_empty());
    CHECK(bd.parts[1] == Region::box2(Interval::line(), Interval::point(Rat(0))));
  }
  SUBCASE("refused when a gluing region is not open") {
    auto sys = make_system<EuclideanBackend>(std::vector<EucSpace>(2, EucSpace{1}));
    set_gluing(sys, 0, 1, interval_region(Interval::below(Rat(0), true)), DiagAffine::identity(1));
    REQUIRE(validate(sys).valid());
    EucGlued g(sys);
    CHECK_THROWS_AS((void)g.glued_closure(g.whole()), std::invalid_argument);
  }
}

TEST_CASE("properness counterexample") {
  EucGlued g(branched_line(2));
  auto s = g.pushforward_i(0, interval_region(Interval::closed(Rat(-1), Rat(1))));
  CHECK(g.preimage_i(s, 1) == interval_region(Interval(ExtRat(-1), true, ExtRat(0), false)));
  CHECK(region_is_compact(g.preimage_i(s, 0)));
  CHECK_FALSE(region_is_compact(g.preimage_i(s, 1)));
}

TEST_CASE("universal property on the finite backend") {
  FinGlued g(finite_branched(2));
  auto L3 = line3();
  SUBCASE("fold maps back onto the line model") {
    std::vector<FinMap> psi{FinMap::identity(3), FinMap::identity(3)};
    auto gmap = g.universal_map(L3, psi);
    for (int i = 0; i < 2; ++i) {
      auto comp = compose(gmap, g.phi(i));
      for (int x = 0; x < 3; ++x) CHECK(comp(x) == psi[i](x));
    }
    CHECK(check_continuous(g.finite_quotient().Q, L3, gmap));
    // uniqueness: any map satisfying the equations equals gmap
    const auto& Q = g.finite_quotient().Q;
    std::vector<int> t(Q.n());
    auto rec = [&](auto&& self, int c) -> void {
      if (c == Q.n()) {
        FinMap h(Q.n(), 3, t);
        bool satisfies = true;
        for (int i = 0; i < 2 && satisfies; ++i) {
          auto comp = compose(h, g.phi(i));
          for (int x = 0; x < 3; ++x)
            if (comp(x) != psi[i](x)) { satisfies = false; break; }
        }
        if (satisfies)
          for (int q = 0; q < Q.n(); ++q) CHECK(h(q) == gmap(q));
        return;
      }
      for (int v = 0; v < 3; ++v) {
        t[c] = v;
        self(self, c + 1);
      }
    };
    rec(rec, 0);
  }
  SUBCASE("constant family gives the constant map") {
    std::vector<FinMap> psi{FinMap(3, 3, {2, 2, 2}), FinMap(3, 3, {2, 2, 2})};
    auto gmap = g.universal_map(L3, psi);
    for (int c = 0; c < g.finite_quotient().Q.n(); ++c) CHECK(gmap(c) == 2);
  }
  SUBCASE("incompatible family is rejected with a witness") {
    // disagree on the glued point L (index 0)
    std::vector<FinMap> psi{FinMap(3, 3, {0, 1, 2}), FinMap(3, 3, {2, 1, 2})};
    CHECK_THROWS_WITH_AS(g.universal_map(L3, psi), doctest::Contains("incompatible"),
                         std::invalid_argument);
  }
}

TEST_CASE("subsystems and the sub-embedding") {
  SUBCASE("restriction of the non-transitive line is the 2-branched line") {
    auto full_sys = nontransitive_line();
    auto sub_sys = subsystem(full_sys, {0, 1});
    CHECK(validate(sub_sys).valid());
    CHECK(sub_sys.A[0][1] == interval_region(Interval::below(Rat(0))));
    EucGlued full(full_sys), sub(sub_sys);
    auto p0 = sub_embed_point(full, {0, 1}, sub.canonical_map(0, {Rat(0)}));
    auto p1 = sub_embed_point(full, {0, 1}, sub.canonical_map(1, {Rat(0)}));
    CHECK(p0 == full.canonical_map(0, {Rat(0)}));
    CHECK(p1 == full.canonical_map(1, {Rat(0)}));
    CHECK(p0 != p1);
  }
  SUBCASE("identity subsystem") {
    auto sys = branched_line(2);
    auto sub = subsystem(sys, {0, 1});
    CHECK(validate(sub).valid());
    CHECK(sub.A == sys.A);
  }
  SUBCASE("finite sub-embedding is an open embedding") {
    FinGlued full(finite_branched(2));
    auto sub_sys = subsystem(full.system(), {0});
    FinGlued sub(sub_sys);
    auto emb = sub_embedding_finmap(full, sub, {0});
    CHECK(check_embedding(sub.finite_quotient().Q, full.finite_quotient().Q, emb));
    CHECK(check_open_map(sub.finite_quotient().Q, full.finite_quotient().Q, emb));
  }
  SUBCASE("empty index set is rejected") {
    CHECK_THROWS_AS(subsystem(branched_line(2), {}), std::invalid_argument);
  }
  SUBCASE("set containment in the sub-image") {
    EucGlued full(nontransitive_line());
    auto V = full.pushforward_i(0, Region::whole(1));
    CHECK(set_within_sub_image(full, {0, 1}, V));
    auto W = full.pushforward_i(2, Region::whole(1));
    CHECK_FALSE(set_within_sub_image(full, {0, 1}, W));
  }
}

TEST_CASE("bases") {
  SUBCASE("finite: pushed-forward minimal opens form a basis") {
    FinGlued g(finite_branched(2));
    const auto& Q = g.finite_quotient().Q;
    auto basis = g.finite_basis();
    for (const auto& open_set : enumerate_open_sets(Q)) {
      auto S = g.from_class_set(open_set);
      auto acc = g.empty_set();
      for (const auto& bel : basis)
        if (g.gs_subset(bel, S)) acc = g.gs_union(acc, bel);
      CHECK(acc == S);
    }
  }
  SUBCASE("euclidean: box generators realize opens on test sets") {
    EucGlued g(branched_line(2));
    auto S = g.pushforward_i(0, interval_region(Interval::open(ExtRat(-2), ExtRat(1))));
    REQUIRE(g.is_open(S));
    // every sampled member point admits a basis box inside S
    for (int i = 0; i < 2; ++i)
      for (const auto& p : b_probe_points(g.preimage_i(S, i))) {
        bool found = false;
        for (Rat r(1); r >= Rat(1, 64); r /= 2)
          if (g.gs_subset(g.basis_box(i, p, r), S)) { found = true; break; }
        CHECK(found);
      }
  }
}

TEST_CASE("locally-finite cover witness") {
  SUBCASE("euclidean branch point: both-component case") {
    EucGlued g(branched_line(2));
    std::vector<std::vector<Region>> covers(2);
    for (int i = 0; i < 2; ++i)
      covers[i] = {interval_region(Interval::below(Rat(1))), interval_region(Interval::above(Rat(-1)))};
    auto w = paracompact_witness(g, covers, g.canonical_map(0, {Rat(0)}));
    CHECK(w.cases == std::vector<std::string>{"gluing-boundary"});
    CHECK(w.meets.size() <= 4);
    CHECK(g.is_open(w.W));
  }
  SUBCASE("interior point away from the gluing: single-component case") {
    EucGlued g(branched_line(2));
    std::vector<std::vector<Region>> covers(2, {Region::whole(1)});
    auto w = paracompact_witness(g, covers, g.canonical_map(0, {Rat(5)}));
    CHECK(w.cases == std::vector<std::string>{"interior-of-complement"});
    CHECK(w.W.parts[1].is_empty());
  }
  SUBCASE("point inside the gluing region") {
    EucGlued g(branched_line(2));
    std::vector<std::vector<Region>> covers(2, {Region::whole(1)});
    auto w = paracompact_witness(g, covers, g.canonical_map(1, {Rat(-3)}));
    CHECK(w.cases == std::vector<std::string>{"inside-gluing"});
  }
  SUBCASE("finite backend witness at the branch class") {
    FinGlued g(finite_branched(2));
    std::vector<std::vector<PointSet>> covers(2, {PointSet::full(3)});
    auto w = paracompact_witness(g, covers, g.canonical_map(0, 1));
    CHECK(g.is_open(w.W));
    CHECK(w.meets.size() == 2);
  }
}
