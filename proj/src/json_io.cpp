#include "splitkit/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "splitkit/surface_oracle.hpp"

namespace splitkit {

namespace {

void check_keys(const Json& j, const std::set<std::string>& allowed,
                const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw BadInput("unknown key '" + it.key() + "' in " + where);
}

std::vector<std::string> string_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw BadInput(where + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& v : j) out.push_back(v.get<std::string>());
  return out;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadInput("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw BadInput("cannot write file: " + path);
  out << content;
}

GroupPtr load_presentation(const Json& j) {
  check_keys(j, {"generators", "strategy", "relators", "table", "kb"},
             "presentation");
  auto gens = string_list(j.at("generators"), "generators");
  std::string strategy = j.value("strategy", std::string("free"));
  if (strategy == "free") {
    if (j.contains("relators") && !j.at("relators").empty())
      throw BadInput("free strategy admits no relators");
    return GroupPresentation::free_group(gens);
  }
  if (strategy == "rewriting") {
    KbOptions opts;
    if (j.contains("kb")) {
      const Json& kb = j.at("kb");
      check_keys(kb, {"max_rules", "max_lhs_len", "max_equations"}, "kb");
      opts.max_rules = kb.value("max_rules", opts.max_rules);
      opts.max_lhs_len = kb.value("max_lhs_len", opts.max_lhs_len);
      opts.max_equations = kb.value("max_equations", opts.max_equations);
    }
    return GroupPresentation::from_relators(
        gens, string_list(j.at("relators"), "relators"), opts);
  }
  if (strategy == "table") {
    const Json& tj = j.at("table");
    if (tj.contains("order")) {
      check_keys(tj, {"order"}, "table");
      if (gens.size() != 1)
        throw BadInput("cyclic table shorthand needs one generator");
      return GroupPresentation::cyclic_table(gens[0], tj.at("order").get<int>());
    }
    check_keys(tj, {"size", "identity", "mul", "generator_elements"}, "table");
    TableData t;
    t.n = tj.at("size").get<int>();
    t.identity = tj.value("identity", 0);
    t.mul = tj.at("mul").get<std::vector<std::vector<int>>>();
    t.gen_elem = tj.at("generator_elements").get<std::vector<int>>();
    return GroupPresentation::from_table(gens, std::move(t));
  }
  throw BadInput("unknown strategy: " + strategy);
}

GroupPtr load_presentation_file(const std::string& path) {
  return load_presentation(Json::parse(read_file(path)));
}

SubgroupPtr load_subgroup(GroupPtr g, const Json& j) {
  check_keys(j, {"membership", "generator", "elements"}, "subgroup");
  std::string kind = j.at("membership").get<std::string>();
  if (kind == "trivial") return make_trivial_subgroup(g);
  if (kind == "cyclic-powers")
    return make_cyclic_subgroup(g, g->parse(j.at("generator").get<std::string>()));
  if (kind == "finite-enumeration") {
    std::vector<Word> elems;
    for (const auto& e : j.at("elements"))
      elems.push_back(g->parse(e.get<std::string>()));
    return make_finite_subgroup(g, elems);
  }
  throw BadInput("unknown membership kind: " + kind);
}

SplittingPtr load_splitting(const Json& j) {
  check_keys(j,
             {"kind", "group", "vertex-a", "vertex-b", "edge-subgroup",
              "transversal", "base", "stable-letter", "h0", "h1", "iso-images",
              "slope", "conjugate-by", "automorphism"},
             "splitting");
  std::string kind = j.at("kind").get<std::string>();
  SplittingPtr s;
  GroupPtr g;
  if (kind == "slope") {
    SlopeContext ctx = make_slope_context();
    const Json& sj = j.at("slope");
    check_keys(sj, {"p", "q"}, "slope");
    s = slope_splitting(ctx, {sj.at("p").get<long>(), sj.at("q").get<long>()});
    g = ctx.f2;
  } else {
    g = load_presentation(j.at("group"));
    int choice = 0;
    if (j.contains("transversal")) {
      std::string t = j.at("transversal").get<std::string>();
      if (t == "shortlex")
        choice = 0;
      else if (t == "shortlex-alternate")
        choice = 1;
      else
        throw BadInput("unknown transversal policy: " + t);
    }
    if (kind == "amalgam") {
      Splitting::AmalgamSpec spec;
      spec.letters_a = string_list(j.at("vertex-a"), "vertex-a");
      spec.letters_b = string_list(j.at("vertex-b"), "vertex-b");
      if (j.contains("edge-subgroup"))
        spec.edge = load_subgroup(g, j.at("edge-subgroup"));
      spec.transversal_choice = choice;
      s = Splitting::make_amalgam(g, spec);
    } else if (kind == "hnn") {
      Splitting::HnnSpec spec;
      if (j.contains("base")) spec.base_letters = string_list(j.at("base"), "base");
      spec.stable_letter = j.at("stable-letter").get<std::string>();
      if (j.contains("h0")) spec.h0 = load_subgroup(g, j.at("h0"));
      if (j.contains("h1")) spec.h1 = load_subgroup(g, j.at("h1"));
      if (j.contains("iso-images"))
        for (const auto& w : j.at("iso-images"))
          spec.iso_images.push_back(g->parse(w.get<std::string>()));
      spec.transversal_choice = choice;
      s = Splitting::make_hnn(g, spec);
    } else {
      throw BadInput("unknown splitting kind: " + kind);
    }
  }
  if (j.contains("automorphism")) {
    const Json& aj = j.at("automorphism");
    check_keys(aj, {"images", "inverse-images"}, "automorphism");
    std::vector<Word> img, pre;
    for (const auto& w : aj.at("images")) img.push_back(g->parse(w.get<std::string>()));
    for (const auto& w : aj.at("inverse-images"))
      pre.push_back(g->parse(w.get<std::string>()));
    s = s->transported(Automorphism::from_images(g, img, pre));
  }
  if (j.contains("conjugate-by"))
    s = s->conjugated(g->parse(j.at("conjugate-by").get<std::string>()));
  return s;
}

SplittingPtr load_splitting_file(const std::string& path) {
  return load_splitting(Json::parse(read_file(path)));
}

}  // namespace splitkit
