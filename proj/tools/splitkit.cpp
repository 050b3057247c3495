#include <iostream>

#include "CLI11.hpp"
#include "splitkit/bass_serre.hpp"
#include "splitkit/cayley.hpp"
#include "splitkit/crossing.hpp"
#include "splitkit/dunwoody.hpp"
#include "splitkit/json_io.hpp"
#include "splitkit/surface_oracle.hpp"

using namespace splitkit;
using OJson = nlohmann::ordered_json;

namespace {

// exit codes: 0 ok, 1 error, 2 computation fine but unresolved at radius
int unresolved_exit = 0;

void emit(const OJson& j) { std::cout << j.dump(2) << "\n"; }

OJson verdict_json(const Verdict& v) {
  OJson j;
  j["state"] = v.name();
  j["radius"] = v.radius;
  if (v.witness) j["witness"] = *v.witness;
  return j;
}

OJson count_json(const CountReport& r, const GroupPresentation& g) {
  OJson j;
  j["count"] = r.count;
  j["exact"] = r.exact;
  j["radius"] = r.radius;
  OJson per = OJson::array();
  for (const auto& pc : r.cosets) {
    OJson e;
    std::string rep = g.format(pc.rep);
    e["rep"] = rep.empty() ? "e" : rep;
    e["verdict"] = pc.verdict.name();
    per.push_back(e);
  }
  j["per_coset"] = per;
  return j;
}

StdVariant parse_variant(const std::string& v) {
  if (v == "X") return StdVariant::X;
  if (v == "X+H") return StdVariant::XunionH;
  if (v == "X*") return StdVariant::Xstar;
  if (v == "X*-H") return StdVariant::XstarMinusH;
  throw BadInput("unknown variant: " + v);
}

Slope parse_slope(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) throw BadInput("slope must look like p/q");
  return Slope{std::stol(s.substr(0, slash)), std::stol(s.substr(slash + 1))};
}

PosetWithInvolution load_poset_file(const std::string& path) {
  Json j = Json::parse(read_file(path));
  PosetWithInvolution p;
  auto labels = j.at("elements");
  p.n = static_cast<int>(labels.size());
  for (const auto& l : labels) p.labels.push_back(l.get<std::string>());
  p.involution = j.at("involution").get<std::vector<int>>();
  p.leq.assign(p.n, std::vector<char>(p.n, 0));
  for (int i = 0; i < p.n; ++i) p.leq[i][i] = 1;
  for (const auto& pair : j.at("le"))
    p.leq[pair.at(0).get<int>()][pair.at(1).get<int>()] = 1;
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"splitkit: intersection theory of group splittings at certified desk scale"};
  app.require_subcommand(1);

  int radius = 6, depth = 4, coset_radius = 3, threads = 2;
  long budget_mb = 2048;
  bool want_json = false;
  std::string out_dot;
  app.add_option("--radius", radius, "certification radius")->capture_default_str();
  app.add_option("--depth", depth, "tree depth")->capture_default_str();
  app.add_option("--threads", threads, "worker threads")->capture_default_str();
  app.add_flag("--json", want_json, "JSON output (default for most commands)");
  app.add_option("--dot", out_dot, "write DOT output to this path");
  app.add_option("--budget-mb", budget_mb, "memory budget for ball enumeration");

  std::string s_path, t_path, group_path, subgroup_path, splitting_path,
      word_text, variant_text = "X", g1_text, g2_text, actor_path, poset_path,
      out_path, slope_a, slope_b;
  std::vector<std::string> splitting_paths;
  bool strong = false;

  auto* nf = app.add_subcommand("nf", "normal form of a word");
  nf->add_option("--splitting", splitting_path)->required();
  nf->add_option("--word", word_text)->required();

  auto* side = app.add_subcommand("side", "standard-set side of a word");
  side->add_option("--splitting", splitting_path)->required();
  side->add_option("--word", word_text)->required();
  side->add_option("--variant", variant_text)->capture_default_str();

  auto* ballc = app.add_subcommand("ball", "radius-truncated Cayley ball");
  ballc->add_option("--group", group_path)->required();
  ballc->add_option("--out", out_path);

  auto* ends = app.add_subcommand("ends", "ends estimate of a pair");
  ends->add_option("--group", group_path)->required();
  ends->add_option("--subgroup", subgroup_path,
                   "subgroup json; omitted = trivial");

  auto* cross = app.add_subcommand("cross", "crossing verdict");
  cross->add_option("--s", s_path)->required();
  cross->add_option("--t", t_path)->required();
  cross->add_option("--g1", g1_text);
  cross->add_option("--g2", g2_text);
  cross->add_flag("--strong", strong);

  auto* inum = app.add_subcommand("inum", "intersection number");
  inum->add_option("--s", s_path)->required();
  inum->add_option("--t", t_path)->required();

  auto* sinum = app.add_subcommand("sinum", "strong intersection number");
  sinum->add_option("--s", s_path)->required();
  sinum->add_option("--t", t_path)->required();

  auto* tree = app.add_subcommand("tree", "local Bass-Serre tree");
  tree->add_option("--splitting", splitting_path)->required();
  tree->add_option("--coset-radius", coset_radius)->capture_default_str();
  tree->add_option("--out", out_path);

  auto* psi = app.add_subcommand("psi", "quotient of the minimal invariant subtree");
  psi->add_option("--target", t_path)->required();
  psi->add_option("--actor", actor_path, "subgroup json acting on the tree")
      ->required();

  auto* dtree = app.add_subcommand("dtree", "tree from a validated poset");
  dtree->add_option("--poset", poset_path)->required();
  dtree->add_option("--out", out_path);

  auto* gog = app.add_subcommand("gog", "graph-of-groups assembly");
  gog->add_option("--splittings", splitting_paths)->required()->expected(-1);
  gog->add_option("--out", out_path);

  auto* oracle = app.add_subcommand("oracle", "surface oracle");
  auto* slopes = oracle->add_subcommand("slopes", "slope pair agreement");
  slopes->add_option("--a", slope_a)->required();
  slopes->add_option("--b", slope_b)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*nf) {
      auto sp = load_splitting_file(splitting_path);
      const auto& g = sp->group();
      NormalForm n = sp->normal_form(g.parse(word_text));
      OJson j;
      j["kind"] = n.hnn ? "hnn" : "amalgam";
      OJson sy = OJson::array();
      for (const auto& s : n.syllables) {
        OJson e;
        std::string rep = g.format(s.rep);
        e["rep"] = rep.empty() ? "e" : rep;
        if (n.hnn)
          e["eps"] = s.eps;
        else
          e["side"] = s.side == SideTag::A ? "A" : "B";
        sy.push_back(e);
      }
      j["syllables"] = sy;
      std::string tail = g.format(n.tail);
      j["tail"] = tail.empty() ? "e" : tail;
      std::string re = g.format(sp->reassemble(n));
      j["reassembled"] = re.empty() ? "e" : re;
      emit(j);
    } else if (*side) {
      auto sp = load_splitting_file(splitting_path);
      const auto& g = sp->group();
      bool in = sp->member(g.parse(word_text), parse_variant(variant_text));
      OJson j;
      j["variant"] = variant_text;
      j["side"] = in ? "inside" : "outside";
      emit(j);
    } else if (*ballc) {
      auto g = load_presentation_file(group_path);
      BallBudget budget;
      budget.max_vertices = static_cast<size_t>(budget_mb) * 1024 * 16;
      CayleyBall b = ball(g, radius, budget);
      OJson j;
      j["radius"] = radius;
      j["vertices"] = b.vertices.size();
      j["edges"] = b.edges.size();
      emit(j);
      if (!out_path.empty()) write_file(out_path, to_dot(b, "ball"));
      if (!out_dot.empty()) write_file(out_dot, to_dot(b, "ball"));
    } else if (*ends) {
      auto g = load_presentation_file(group_path);
      SubgroupPtr h = subgroup_path.empty()
                          ? make_trivial_subgroup(g)
                          : load_subgroup(g, Json::parse(read_file(subgroup_path)));
      EndsEstimate e = estimate_ends(g, h, radius);
      OJson j;
      j["value"] = ends_value_name(e.value);
      j["certified_radius"] = e.certified_radius;
      j["stabilized"] = e.stabilized;
      emit(j);
      if (!e.stabilized) unresolved_exit = 2;
    } else if (*cross) {
      auto s = load_splitting_file(s_path);
      auto t = load_splitting_file(t_path);
      const auto& g = s->group();
      HalfSpace h1{s, g1_text.empty() ? Word{} : g.parse(g1_text), StdVariant::X};
      HalfSpace h2{t, g2_text.empty() ? Word{} : g.parse(g2_text), StdVariant::X};
      Verdict v = strong ? crosses_strongly(h1, h2, radius)
                         : crosses(h1, h2, radius);
      emit(verdict_json(v));
      if (v.unresolved_state()) unresolved_exit = 2;
    } else if (*inum || *sinum) {
      auto s = load_splitting_file(s_path);
      auto t = load_splitting_file(t_path);
      PairOptions opt;
      opt.threads = threads;
      CountReport r = *inum ? intersection_number(*s, *t, radius, opt)
                            : strong_intersection_number(*s, *t, radius, opt);
      emit(count_json(r, s->group()));
      if (!r.exact) unresolved_exit = 2;
    } else if (*tree) {
      auto sp = load_splitting_file(splitting_path);
      TreeLocal t = local_tree(*sp, depth, coset_radius);
      OJson j;
      j["depth"] = depth;
      j["coset_radius"] = coset_radius;
      j["vertices"] = t.vertices.size();
      j["edges"] = t.edges.size();
      emit(j);
      std::string dot = to_dot(t, sp->group(), "tree");
      if (!out_path.empty()) write_file(out_path, dot);
      if (!out_dot.empty()) write_file(out_dot, dot);
    } else if (*psi) {
      auto t = load_splitting_file(t_path);
      SubgroupPtr actor =
          load_subgroup(t->group_ptr(), Json::parse(read_file(actor_path)));
      QuotientGraph q = minimal_subtree(*t, *actor, depth);
      OJson j;
      j["edges"] = q.edge_count;
      j["stabilized"] = q.stabilized;
      j["note"] = q.note;
      emit(j);
      if (!q.stabilized) unresolved_exit = 2;
    } else if (*dtree) {
      PosetWithInvolution p = load_poset_file(poset_path);
      if (auto bad = validate_poset(p)) {
        OJson j;
        j["accepted"] = false;
        j["condition"] = bad->condition;
        j["detail"] = bad->detail;
        emit(j);
        return 1;
      }
      AbstractTree t = build_tree(p);
      OJson j;
      j["accepted"] = true;
      j["vertices"] = t.num_vertices;
      j["edges"] = p.n / 2;
      j["round_trip"] = round_trip_ok(p);
      emit(j);
      if (!out_path.empty() || !out_dot.empty()) {
        std::string dot = "graph \"dtree\" {\n";
        for (int i = 0; i < t.num_vertices; ++i)
          dot += "  v" + std::to_string(i) + ";\n";
        for (int e = 0; e < p.n; e += 2)
          dot += "  v" + std::to_string(t.origin(e)) + " -- v" +
                 std::to_string(t.terminus[e]) + " [label=\"" + p.labels[e] +
                 "\"];\n";
        dot += "}\n";
        write_file(out_path.empty() ? out_dot : out_path, dot);
      }
    } else if (*gog) {
      std::vector<SplittingPtr> inputs;
      for (const auto& p : splitting_paths) inputs.push_back(load_splitting_file(p));
      AssemblyOptions opt;
      opt.radius = std::min(radius, 5);
      opt.inum_radius = radius;
      GraphOfGroups gg = assemble_graph_of_groups(inputs, opt);
      OJson j;
      j["edges"] = gg.edges.size();
      j["vertices"] = gg.vertex_count;
      OJson labels = OJson::array();
      for (const auto& l : gg.vertex_labels) labels.push_back(l);
      j["labels"] = labels;
      OJson edges = OJson::array();
      for (const auto& e : gg.edges) {
        OJson ej;
        ej["from"] = e.from;
        ej["to"] = e.to;
        ej["input"] = e.input_index;
        ej["edge_group"] = e.edge_group;
        edges.push_back(ej);
      }
      j["edge_list"] = edges;
      j["stability"] = gg.stabilized;
      emit(j);
      if (!out_path.empty() || !out_dot.empty()) {
        std::string dot = "graph \"gog\" {\n";
        for (int i = 0; i < gg.vertex_count; ++i)
          dot += "  v" + std::to_string(i) + " [label=\"" +
                 gg.vertex_labels[i] + "\"];\n";
        for (const auto& e : gg.edges)
          dot += "  v" + std::to_string(e.from) + " -- v" +
                 std::to_string(e.to) + " [label=\"" + e.edge_group + "\"];\n";
        dot += "}\n";
        write_file(out_path.empty() ? out_dot : out_path, dot);
      }
    } else if (*slopes) {
      SlopeContext ctx = make_slope_context();
      Slope a = parse_slope(slope_a), b = parse_slope(slope_b);
      long det = slope_intersection(a, b);
      auto sa = slope_splitting(ctx, a);
      auto sb = slope_splitting(ctx, b);
      PairOptions opt;
      opt.threads = threads;
      CountReport lib;
      for (int r = std::min(radius, 6); r <= radius; r += 2) {
        lib = intersection_number(*sa, *sb, r, opt);
        if (lib.exact) break;
      }
      long brute = brute_force_crossing_count(*sa, *sb, std::min(radius, 8));
      OJson j;
      j["determinant"] = det;
      j["brute_force"] = brute;
      j["library"] = lib.count;
      j["library_exact"] = lib.exact;
      j["agree"] = det == brute && det == lib.count && lib.exact;
      emit(j);
      if (!lib.exact) unresolved_exit = 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return unresolved_exit;
}
