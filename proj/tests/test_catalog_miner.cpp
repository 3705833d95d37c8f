#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <adjsp/json_io.hpp>
#include <adjsp/miner.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>

using namespace adjsp;

namespace {

std::pair<int, std::string> run_tool(const std::string& args) {
  std::string out_path = "/tmp/adjtool_out.txt";
  std::string cmd = std::string(ADJTOOL_PATH) + " " + args + " > " + out_path + " 2>&1";
  int raw = std::system(cmd.c_str());
  int code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(out_path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return {code, text};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("catalog builders validate and reject bad parameters") {
  for (const auto& name : catalog_names()) {
    auto sys = build_catalog(name, 3, 3);
    CHECK(std::visit([](const auto& s) { return validate(s).valid(); }, sys));
  }
  CHECK_THROWS(build_catalog("bogus"));
  CHECK_THROWS(catalog_branched_line(0));
  CHECK_THROWS(catalog_finite_branched(0));
  CHECK_THROWS(catalog_truncated(1));

  auto nt = catalog_nontransitive_line();
  CHECK(component_graph(nt) == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});

  EucGlued dp(catalog_doubled_plane());
  CHECK(hajicek_check(dp, doubled_plane_V(dp)).is_h_submanifold);

  EucGlued tr(catalog_truncated(2));
  auto v = gluing_union_V(tr);
  CHECK(v.parts[0] == Region::of_interval(Interval::below(Rat(1))));
  CHECK(v.parts[1] == Region::of_interval(Interval::below(Rat(1))));
  CHECK_FALSE(boundary_eq_y_check(tr, v));
}

TEST_CASE("JSON round-trips") {
  // scalar and interval encodings, including infinities and fractions
  CHECK(rat_from_json(rat_to_json(Rat(-7, 3))) == Rat(-7, 3));
  CHECK(ext_from_json(ext_to_json(ExtRat::neg_inf())) == ExtRat::neg_inf());
  auto iv = Interval(ExtRat(Rat(-1, 2)), true, ExtRat(Rat(5)), false);
  CHECK(interval_from_json(interval_to_json(iv)) == iv);

  auto r2 = Region::box2(Interval::line(), Interval::below(Rat(0)));
  CHECK(region_from_json(region_to_json(r2), 2) == r2);
  CHECK(region_from_json(region_to_json(Region::empty(1)), 1) == Region::empty(1));

  DiagAffine m({Rat(2), Rat(1, 3)}, {Rat(-1), Rat(0)});
  auto m2 = affine_from_json(affine_to_json(m));
  CHECK(m2 == m);

  // full systems: serialize, parse, re-serialize, compare
  for (const auto& name : catalog_names()) {
    auto sys = build_catalog(name, 3, 3);
    json j = system_to_json(sys);
    CHECK(system_to_json(system_from_json(j)) == j);
  }

  PLFunction f{{PLComponent{{Rat(-1), Rat(0)}, {Rat(1, 2), Rat(0)}, Rat(1, 2), Rat(0)},
                pl_constant(Rat(3))}};
  json fj = plfunction_to_json(f);
  auto f2 = plfunction_from_json(fj);
  CHECK(f2.comps[0] == f.comps[0]);
  CHECK(f2.comps[1] == f.comps[1]);

  auto euc = catalog_branched_line(2);
  EucGlued g(euc);
  auto gs = g.pushforward_i(0, Region::of_interval(Interval::closed(Rat(-2), Rat(1))));
  auto gs2 = gluedset_from_json(gluedset_to_json(gs), euc);
  CHECK(gs2.parts == gs.parts);

  auto fin = catalog_finite_branched(2);
  FinGlued fg(fin);
  auto fs = fg.pushforward_i(0, PointSet::of(3, {0, 2}));
  CHECK(gluedset_from_json(gluedset_to_json(fs), fin).parts == fs.parts);
}

TEST_CASE("analysis reports are internally consistent") {
  for (const auto& name : catalog_names()) {
    auto sys = build_catalog(name, 3, 3);
    json rep = analyze_to_json(name, sys);
    REQUIRE(rep["valid"].get<bool>());
    CHECK(rep["hausdorff"].get<bool>() == rep["y_pairs"].empty());
    bool direct = std::visit(
        [](const auto& s) {
          Glued<typename std::decay_t<decltype(s)>::Backend> g(s, false);
          return g.is_connected(g.whole());
        },
        sys);
    CHECK(rep["connected"].get<bool>() == direct);
  }

  json r3 = analyze_to_json("b3", catalog_branched_line(3));
  CHECK_FALSE(r3["hausdorff"].get<bool>());
  CHECK(r3["t1"].get<bool>());
  CHECK(r3["connected"].get<bool>());
  CHECK(r3["y_pairs"].size() == 3);
  CHECK(r3["component_graph"].size() == 3);
  for (const auto& e : r3["embeddings"]) CHECK(e["is_h_submanifold"].get<bool>());

  json r1 = analyze_to_json("line", EucAdjSystem(make_system<EuclideanBackend>({EucSpace{1}})));
  CHECK(r1["hausdorff"].get<bool>());

  // broken mirror region: A2 violation reported
  auto bad = catalog_branched_line(2);
  bad.A[1][0] = Region::of_interval(Interval::below(Rat(1)));
  json rb = analyze_to_json("bad", bad);
  CHECK_FALSE(rb["valid"].get<bool>());
  CHECK(rb["violations"][0]["axiom"] == "A2");
}

TEST_CASE("DOT outputs round-trip node counts") {
  auto sys = catalog_branched_line(3);
  auto dot_c = dot_component_graph(sys);
  CHECK(dot_c.rfind("graph components {", 0) == 0);
  CHECK(std::count(dot_c.begin(), dot_c.end(), ';') == 3 + 3);  // 3 nodes + 3 edges

  EucGlued g(sys);
  auto dot_y = dot_y_graph(g);
  CHECK(dot_y.rfind("graph y {", 0) == 0);
  size_t nodes = boundary_classes(g).size();
  json rep = analyze_to_json("b3", sys);
  CHECK(nodes == 3);
  CHECK(std::count(dot_y.begin(), dot_y.end(), ';') ==
        static_cast<long>(nodes + rep["y_pairs"].size()));

  FinGlued fg(catalog_finite_branched(2));
  auto dot_fy = dot_y_graph(fg);
  CHECK(std::count(dot_fy.begin(), dot_fy.end(), ';') ==
        fg.finite_quotient().Q.n() + static_cast<long>(fg.finite_quotient().Q.y_pairs().size()));
}

TEST_CASE("canonical enumeration counts match the topology census") {
  // labeled T(n): 1, 4, 29, 355, 6942; canonical single-component systems are
  // homeomorphism classes: 1, 3, 9, 33, 139
  std::vector<long> labeled_expect{1, 4, 29, 355, 6942};
  std::vector<long> canon_expect{1, 3, 9, 33, 139};
  for (int n = 1; n <= 5; ++n) {
    long labeled = 0;
    detail::for_each_topology(n, [&](const std::vector<unsigned>&) { ++labeled; });
    CHECK(labeled == labeled_expect[n - 1]);
    long canon = 0;
    enumerate_canonical_systems_of_total(n, [&](const FinAdjSystem& s) {
      if (s.m() == 1) ++canon;
    });
    CHECK(canon == canon_expect[n - 1]);
  }
  // every enumerated system is valid and equal to its own canonical form
  long checked = 0;
  enumerate_canonical_systems(4, [&](const FinAdjSystem& s) {
    ++checked;
    CHECK(validate(s).valid());
    CHECK(detail::is_canonical(s));
  });
  CHECK(checked > 100);
}

TEST_CASE("lemma implications hold on every canonical system up to 6 points") {
  long conn = 0, graph_conn = 0, t1 = 0, open_emb = 0;
  enumerate_canonical_systems(6, [&](const FinAdjSystem& sys) {
    FinGlued g(sys, false);
    const FinSpace& Q = g.finite_quotient().Q;
    if (hypothesis_holds(sys, "components-connected")) {
      if (hypothesis_holds(sys, "regions-nonempty")) {
        ++conn;
        CHECK(Q.is_connected(Q.whole()));
      }
      if (hypothesis_holds(sys, "graph-connected")) {
        ++graph_conn;
        CHECK(Q.is_connected(Q.whole()));
      }
    }
    if (hypothesis_holds(sys, "components-t1")) {
      ++t1;
      CHECK(Q.is_T1());
    }
    if (hypothesis_holds(sys, "regions-open")) {
      ++open_emb;
      for (int i = 0; i < sys.m(); ++i) {
        FinMap p = g.phi(i);
        CHECK(check_embedding(sys.spaces[i], Q, p));
        CHECK(check_open_map(sys.spaces[i], Q, p));
      }
    }
  });
  CHECK(conn == 1606);
  CHECK(graph_conn == 1824);
  CHECK(t1 == 72);
  CHECK(open_emb == 2085);
}

TEST_CASE("dropped hypotheses yield minimal re-verifiable witnesses") {
  auto r1 = mine({"connectedness", 6, "regions-nonempty"});
  REQUIRE(r1.witnesses.size() == 1);
  const auto& w1 = r1.witnesses[0].sys;
  CHECK(r1.witnesses[0].total_points == 2);
  CHECK(w1.m() == 2);
  CHECK(w1.A[0][1].empty());
  CHECK_FALSE(FinGlued(w1).finite_quotient().Q.is_connected(PointSet::full(2)));

  auto r2 = mine({"connectedness", 6, "components-connected"});
  REQUIRE(r2.witnesses.size() == 1);
  CHECK(r2.witnesses[0].total_points == 2);
  CHECK(r2.witnesses[0].sys.m() == 1);

  auto r3 = mine({"t1", 6, "components-t1"});
  CHECK(r3.witnesses.size() == 2);
  bool sierpinski_seen = false;
  for (const auto& w : r3.witnesses) {
    CHECK(w.total_points == 2);
    const FinSpace& X = w.sys.spaces[0];
    if (X.min_open(0).points() == std::vector<int>{0} &&
        X.min_open(1).points() == std::vector<int>{0, 1})
      sierpinski_seen = true;
    CHECK_FALSE(FinGlued(w.sys).finite_quotient().Q.is_T1());
  }
  CHECK(sierpinski_seen);

  auto r4 = mine({"open-embedding", 6, "regions-open"});
  REQUIRE_FALSE(r4.witnesses.empty());
  for (const auto& w : r4.witnesses) {
    CHECK(w.total_points == 3);
    CHECK_FALSE(all_gluing_regions_open(w.sys));
    FinGlued g(w.sys);
    bool all_open_embeddings = true;
    for (int i = 0; i < w.sys.m(); ++i) {
      FinMap p = g.phi(i);
      if (!check_embedding(w.sys.spaces[i], g.finite_quotient().Q, p) ||
          !check_open_map(w.sys.spaces[i], g.finite_quotient().Q, p))
        all_open_embeddings = false;
    }
    CHECK_FALSE(all_open_embeddings);
  }

  CHECK_THROWS(mine({"bogus", 6, ""}));
  CHECK_THROWS(mine({"t1", 6, "regions-open"}));
  CHECK_THROWS(mine({"t1", 8, ""}));
  CHECK(mine({"t1", 6, ""}).witnesses.empty());
}

TEST_CASE("command line end-to-end") {
  auto [c0, catalog_out] = run_tool("catalog n_branched_line --n 3 --emit /tmp/b3.json");
  CHECK(c0 == 0);

  auto [c1, analyze_out] = run_tool("analyze /tmp/b3.json");
  CHECK(c1 == 0);
  json rep = json::parse(analyze_out);
  CHECK_FALSE(rep["hausdorff"].get<bool>());
  CHECK(rep["y_pairs"].size() == 3);

  // mutate the mirror of one gluing region: validate exits 1 with an A2 witness
  json broken = json::parse(catalog_out.empty() ? std::string("{}") : catalog_out);
  {
    std::ifstream in("/tmp/b3.json");
    in >> broken;
  }
  broken["regions"]["1,0"] = region_to_json(Region::of_interval(Interval::below(Rat(1))));
  write_file("/tmp/b3_bad.json", broken.dump());
  auto [c2, bad_out] = run_tool("validate /tmp/b3_bad.json");
  CHECK(c2 == 1);
  CHECK(bad_out.find("A2") != std::string::npos);

  auto [c3, _] = run_tool("frobnicate");
  CHECK(c3 == 2);
  auto [c4, miss] = run_tool("analyze /tmp/does_not_exist.json");
  CHECK(c4 == 2);

  // hajicek on the doubled plane's distinguished subset
  run_tool("catalog doubled_plane --emit /tmp/dp.json");
  EucGlued dp(catalog_doubled_plane());
  write_file("/tmp/dp_v.json", gluedset_to_json(doubled_plane_V(dp)).dump());
  auto [c5, haj] = run_tool("hajicek /tmp/dp.json --subset /tmp/dp_v.json");
  CHECK(c5 == 0);
  json hj = json::parse(haj);
  CHECK(hj["is_h_submanifold"].get<bool>());
  CHECK_FALSE(hj["boundary_eq_y"].get<bool>());

  // uniqueness over the three-line grid on the 2-branched line
  run_tool("catalog n_branched_line --n 2 --emit /tmp/b2.json");
  auto [c6, uniq] = run_tool("uniqueness /tmp/b2.json --grid -1,0,1");
  CHECK(c6 == 0);
  CHECK(json::parse(uniq)["count"].get<int>() == 2);

  // partition-of-unity verdicts on the bare line
  json line_sys = system_to_json(EucAdjSystem(make_system<EuclideanBackend>({EucSpace{1}})));
  write_file("/tmp/line.json", line_sys.dump());
  write_file("/tmp/cover.json", json::array({json::array({region_to_json(Region::whole(1))})}).dump());
  write_file("/tmp/ok.json", json::array({plfunction_to_json(PLFunction{{pl_constant(Rat(1))}})}).dump());
  write_file("/tmp/half.json", json::array({plfunction_to_json(PLFunction{{pl_constant(Rat(1, 2))}})}).dump());
  auto [c7, acc] = run_tool("pou-check /tmp/line.json --cover /tmp/cover.json --candidate /tmp/ok.json");
  CHECK(c7 == 0);
  CHECK(acc.find("Accept") != std::string::npos);
  auto [c8, rej] = run_tool("pou-check /tmp/line.json --cover /tmp/cover.json --candidate /tmp/half.json");
  CHECK(c8 == 0);
  CHECK(rej.find("Reject(sum") != std::string::npos);

  // truncation flag propagates from catalog emission into the report
  run_tool("catalog N_truncated --k 2 --emit /tmp/n2.json");
  auto [c9, n2rep] = run_tool("analyze /tmp/n2.json");
  CHECK(c9 == 0);
  CHECK(json::parse(n2rep)["truncated_counterexample"].get<bool>());

  auto [c10, mined] = run_tool("mine --lemma connectedness --max-points 5");
  CHECK(c10 == 0);
  CHECK(json::parse(mined)["witnesses"].empty());
}
