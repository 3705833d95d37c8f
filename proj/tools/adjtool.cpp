// Command-line front end: validate/analyze adjunction systems, run the
// H-submanifold and partition-of-unity checkers, enumerate small finite
// counterexamples, and emit the named example systems.
//
// Exit codes: 0 verdict computed, 1 validation failure, 2 usage error.

#include <CLI11.hpp>
#include <adjsp/json_io.hpp>
#include <adjsp/miner.hpp>
#include <fstream>
#include <iostream>

using namespace adjsp;

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw CLI::ValidationError("cannot write " + path);
  out << text;
}

std::vector<Rat> parse_grid(const std::string& csv) {
  std::vector<Rat> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(rat_from_string(tok));
  if (out.empty()) throw CLI::ValidationError("--grid needs at least one value");
  return out;
}

// Thrown when a verdict subcommand is handed an invalid system (exit 1).
struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_valid(const CatalogSystem& sys) {
  auto rep = std::visit([](const auto& s) { return validate(s); }, sys);
  if (!rep.valid()) throw ValidationFailure("invalid system:\n" + rep.str());
}

int cmd_validate(const std::string& path) {
  auto sys = system_from_json(read_json_file(path));
  auto rep = std::visit([](const auto& s) { return validate(s); }, sys);
  if (rep.valid()) {
    std::cout << "valid\n";
    return 0;
  }
  std::cout << "invalid\n" << rep.str();
  return 1;
}

int cmd_analyze(const std::string& path, const std::string& json_out, const std::string& dot_y,
                const std::string& dot_c) {
  json in = read_json_file(path);
  auto sys = system_from_json(in);
  json rep = analyze_to_json(path, sys);
  if (in.contains("truncated_counterexample"))
    rep["truncated_counterexample"] = in["truncated_counterexample"];
  std::string text = rep.dump(2) + "\n";
  if (json_out.empty())
    std::cout << text;
  else
    write_text_file(json_out, text);
  bool valid = rep["valid"].get<bool>();
  if (!dot_c.empty()) write_text_file(dot_c, dot_component_graph(sys));
  if (!dot_y.empty()) {
    if (!valid) throw ValidationFailure("cannot build the Y-graph of an invalid system");
    std::string dot = std::visit(
        [](const auto& s) {
          return dot_y_graph(Glued<typename std::decay_t<decltype(s)>::Backend>(s, /*check=*/false));
        },
        sys);
    write_text_file(dot_y, dot);
  }
  return valid ? 0 : 1;
}

int cmd_hajicek(const std::string& path, const std::string& subset_path) {
  auto sys = system_from_json(read_json_file(path));
  require_valid(sys);
  json sj = read_json_file(subset_path);
  json rep = std::visit(
      [&](const auto& s) {
        using B = typename std::decay_t<decltype(s)>::Backend;
        Glued<B> g(s, /*check=*/false);
        auto v = g.saturate(gluedset_from_json(sj, s).parts);
        return hajicek_to_json(g, hajicek_check(g, v));
      },
      sys);
  std::cout << rep.dump(2) << "\n";
  return 0;
}

int cmd_uniqueness(const std::string& path, const std::string& grid_csv) {
  auto sys = system_from_json(read_json_file(path));
  auto* euc = std::get_if<EucAdjSystem>(&sys);
  if (!euc) throw CLI::ValidationError("uniqueness search needs a euclidean system");
  require_valid(sys);
  EucGlued g(*euc, /*check=*/false);
  auto found = uniqueness_experiment(g, parse_grid(grid_csv));
  json out;
  out["count"] = found.size();
  json sets = json::array();
  for (const auto& v : found) sets.push_back(gluedset_to_json(v));
  out["submanifolds"] = sets;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_pou_check(const std::string& path, const std::string& cover_path,
                  const std::string& cand_path) {
  auto sys = system_from_json(read_json_file(path));
  auto* euc = std::get_if<EucAdjSystem>(&sys);
  if (!euc) throw CLI::ValidationError("pou-check needs a euclidean system");
  require_valid(sys);
  EucGlued g(*euc, /*check=*/false);
  std::vector<GluedSet<EuclideanBackend>> cover;
  for (const auto& cj : read_json_file(cover_path)) cover.push_back(gluedset_from_json(cj, *euc));
  std::vector<PLFunction> cand;
  for (const auto& fj : read_json_file(cand_path)) cand.push_back(plfunction_from_json(fj));
  auto res = pou_check(g, cover, cand);
  std::cout << res.str() << "\n";
  return 0;
}

int cmd_mine(const std::string& lemma, int max_points, const std::string& drop) {
  auto res = mine({lemma, max_points, drop});
  json out;
  out["lemma"] = lemma;
  out["max_points"] = max_points;
  if (!drop.empty()) out["dropped_hypothesis"] = drop;
  out["canonical_systems"] = res.canonical_systems;
  out["hypothesis_matches"] = res.hypothesis_matches;
  json ws = json::array();
  for (const auto& w : res.witnesses)
    ws.push_back(json{{"total_points", w.total_points},
                      {"reason", w.reason},
                      {"system", system_to_json(w.sys)}});
  out["witnesses"] = ws;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_catalog(const std::string& name, int n, int k, const std::string& emit) {
  json j = system_to_json(build_catalog(name, n, k));
  if (name == "N_truncated") j["truncated_counterexample"] = true;
  if (emit.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_text_file(emit, j.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact analysis of adjunction (gluing) spaces"};
  app.require_subcommand(1);

  std::string sys_path, json_out, dot_y, dot_c, subset_path, grid_csv, cover_path, cand_path;
  std::string lemma, drop, name, emit;
  int max_points = 6, n = 2, k = 2;

  auto* v = app.add_subcommand("validate", "Check the adjunction axioms of a system file");
  v->add_option("system", sys_path, "system JSON file")->required();

  auto* a = app.add_subcommand("analyze", "Full report: validation, connectivity, Y-pairs, embeddings");
  a->add_option("system", sys_path)->required();
  a->add_option("--json", json_out, "write the report to a file instead of stdout");
  a->add_option("--dot-y", dot_y, "write the Y-graph in DOT form");
  a->add_option("--dot-c", dot_c, "write the component graph in DOT form");

  auto* h = app.add_subcommand("hajicek", "H-submanifold criterion for a glued subset");
  h->add_option("system", sys_path)->required();
  h->add_option("--subset", subset_path, "glued-set JSON file (one part per component)")->required();

  auto* u = app.add_subcommand("uniqueness", "Exhaustive H-submanifold search over grid-cell unions");
  u->add_option("system", sys_path)->required();
  u->add_option("--grid", grid_csv, "comma-separated rational grid lines")->required();

  auto* p = app.add_subcommand("pou-check", "Exact partition-of-unity verdict for PL candidates");
  p->add_option("system", sys_path)->required();
  p->add_option("--cover", cover_path, "JSON list of glued sets")->required();
  p->add_option("--candidate", cand_path, "JSON list of PL functions")->required();

  auto* m = app.add_subcommand("mine", "Enumerate small finite systems and test a lemma");
  m->add_option("--lemma", lemma, "connectedness | graph-connectedness | t1 | open-embedding")->required();
  m->add_option("--max-points", max_points, "total point bound (1..7)");
  m->add_option("--drop-hypothesis", drop, "drop one hypothesis and report minimal witnesses");

  auto* c = app.add_subcommand("catalog", "Emit a named example system");
  c->add_option("name", name, "n_branched_line | nontransitive_line | doubled_plane | N_truncated | finite_branched")
      ->required();
  c->add_option("--n", n, "component count for the branched lines");
  c->add_option("--k", k, "truncation stage for N_truncated");
  c->add_option("--emit", emit, "write the system JSON to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*v) return cmd_validate(sys_path);
    if (*a) return cmd_analyze(sys_path, json_out, dot_y, dot_c);
    if (*h) return cmd_hajicek(sys_path, subset_path);
    if (*u) return cmd_uniqueness(sys_path, grid_csv);
    if (*p) return cmd_pou_check(sys_path, cover_path, cand_path);
    if (*m) return cmd_mine(lemma, max_points, drop);
    if (*c) return cmd_catalog(name, n, k, emit);
  } catch (const ValidationFailure& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
