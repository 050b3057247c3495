#include "splitkit/bass_serre.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace splitkit {

const char* edge_relation_name(EdgeRelation r) {
  switch (r) {
    case EdgeRelation::Equal:
      return "equal";
    case EdgeRelation::Less:
      return "<=";
    case EdgeRelation::Greater:
      return ">=";
    case EdgeRelation::LessComplement:
      return "<= complement";
    case EdgeRelation::GreaterComplement:
      return ">= complement";
    case EdgeRelation::ComplementEqual:
      return "equal complement";
    default:
      return "incomparable-at-depth";
  }
}

EdgeOrderResult edge_order(const Splitting& s, const Word& g1, const Word& g2) {
  const auto& g = s.group();
  Word h = g.canon(g1.inverse() * g2);
  EdgeOrderResult r;
  r.pattern = s.quadrant_pattern(h);
  bool e_tt = r.pattern.empty_xy();    // X n hX empty  -> X subset hX*
  bool e_tf = r.pattern.empty_xys();   // X n hX* empty -> X subset hX
  bool e_ft = r.pattern.empty_xsy();   // X* n hX empty -> hX subset X
  bool e_ff = r.pattern.empty_xsys();  // X* n hX* empty -> hX* subset X
  if (e_tf && e_ft)
    r.relation = EdgeRelation::Equal;
  else if (e_tt && e_ff)
    r.relation = EdgeRelation::ComplementEqual;
  else if (e_tf)
    r.relation = EdgeRelation::Less;
  else if (e_ft)
    r.relation = EdgeRelation::Greater;
  else if (e_tt)
    r.relation = EdgeRelation::LessComplement;
  else if (e_ff)
    r.relation = EdgeRelation::GreaterComplement;
  else
    r.relation = EdgeRelation::IncomparableAtDepth;
  return r;
}

namespace {

bool in_vertex_group(const Splitting& s, const Word& w, int type) {
  NormalForm nf = s.normal_form(w);
  if (nf.syllables.empty()) return true;
  if (s.kind() == Splitting::Kind::Hnn) return false;
  if (nf.syllables.size() > 1) return false;
  SideTag want = type == 0 ? SideTag::A : SideTag::B;
  return nf.syllables[0].side == want;
}

bool same_edge(const Splitting& s, const Word& g1, const Word& g2) {
  return s.edge_subgroup()->contains(s.group().canon(g1.inverse() * g2));
}

// Vertices on the geodesic from the type-`type` vertex at `from` to the
// same-type vertex at `to`, as (address, type) pairs including endpoints.
std::vector<std::pair<Word, int>> vertex_path_typed(const Splitting& s,
                                                    const Word& from,
                                                    const Word& to, int type) {
  const auto& g = s.group();
  Word h = g.canon(from.inverse() * to);
  std::vector<std::pair<Word, int>> path;
  path.push_back({g.canon(from), type});
  if (in_vertex_group(s, h, type)) return path;
  NormalForm nf = s.normal_form(h);
  if (s.kind() == Splitting::Kind::Hnn) {
    Word p = g.canon(from);
    const Word tw = s.stable_letter_word();
    for (const auto& syl : nf.syllables) {
      p = g.canon(p * syl.rep *
                  (syl.eps > 0 ? tw : tw.inverse()));
      path.push_back({p, 0});
    }
    return path;
  }
  // amalgam: trim the trailing syllable on the target's own side
  auto sylls = nf.syllables;
  SideTag own = type == 0 ? SideTag::A : SideTag::B;
  if (!sylls.empty() && sylls.back().side == own) sylls.pop_back();
  if (sylls.empty()) return path;
  SideTag other = type == 0 ? SideTag::B : SideTag::A;
  if (sylls.front().side == other)
    path.push_back({g.canon(from), type == 0 ? 1 : 0});
  Word p = g.canon(from);
  for (const auto& syl : sylls) {
    p = g.canon(p * syl.rep);
    int vtype = syl.side == SideTag::A ? 1 : 0;  // opposite of the syllable
    path.push_back({p, vtype});
  }
  return path;
}

// Distance between the two same-type vertices at g1 and g2.
int vertex_distance_typed(const Splitting& s, const Word& g1, const Word& g2,
                          int type) {
  auto p = vertex_path_typed(s, g1, g2, type);
  return static_cast<int>(p.size()) - 1;
}

}  // namespace

std::vector<Word> edge_path(const Splitting& s, const Word& h) {
  const auto& g = s.group();
  NormalForm nf = s.normal_form(h);
  std::vector<Word> seq;
  seq.push_back(Word{});
  if (s.kind() == Splitting::Kind::Amalgam) {
    Word p;
    for (const auto& syl : nf.syllables) {
      p = g.canon(p * syl.rep);
      seq.push_back(p);
    }
  } else {
    Word p;
    const Word t = s.stable_letter_word();
    for (const auto& syl : nf.syllables) {
      if (syl.eps > 0) {
        Word cross = g.canon(p * syl.rep);
        seq.push_back(cross);
        p = g.canon(cross * t);
      } else {
        p = g.canon(p * syl.rep * t.inverse());
        seq.push_back(p);
      }
    }
    seq.push_back(g.canon(h));
  }
  std::vector<Word> out;
  for (const Word& e : seq) {
    if (!out.empty() && same_edge(s, out.back(), e)) continue;
    out.push_back(e);
  }
  return out;
}

int vertex_distance(const Splitting& s, const Word& g1, const Word& g2) {
  return vertex_distance_typed(s, g1, g2, 0);
}

TreeLocal local_tree(const Splitting& s, int depth, int coset_radius) {
  const auto& g = s.group();
  TreeLocal t;
  t.depth = depth;
  t.coset_radius = coset_radius;
  bool hnn = s.kind() == Splitting::Kind::Hnn;

  auto reps_a = s.transversal_reps(SideTag::A, coset_radius);
  auto reps_b = s.transversal_reps(SideTag::B, coset_radius);

  std::unordered_map<std::string, int> vindex;
  auto add_vertex = [&](const Word& addr, int type, int d) {
    auto key = std::to_string(type) + "|" + word_key(addr);
    auto it = vindex.find(key);
    if (it != vindex.end()) return it->second;
    int id = static_cast<int>(t.vertices.size());
    vindex.emplace(key, id);
    t.vertices.push_back({addr, type, d});
    return id;
  };

  struct Pending {
    int vertex;
    int from_edge;
  };
  std::deque<Pending> frontier;

  if (!hnn) {
    int va = add_vertex(Word{}, 0, 0);
    int vb = add_vertex(Word{}, 1, 0);
    t.edges.push_back({Word{}, va, vb, 0});
    frontier.push_back({va, 0});
    frontier.push_back({vb, 0});
  } else {
    const Word tw = s.stable_letter_word();
    int va = add_vertex(Word{}, 0, 0);
    int vb = add_vertex(g.canon(tw), 0, 0);
    t.edges.push_back({Word{}, va, vb, 0});
    frontier.push_back({va, 0});
    frontier.push_back({vb, 0});
  }

  while (!frontier.empty()) {
    auto [vi, from_edge] = frontier.front();
    frontier.pop_front();
    const auto vert = t.vertices[vi];
    int edge_depth = t.edges[from_edge].depth + 1;
    if (edge_depth > depth) continue;
    const Word addr = vert.address;
    auto attach = [&](const Word& edge_label, const Word& other_addr,
                      int other_type) {
      if (same_edge(s, edge_label, t.edges[from_edge].label)) return;
      int vo = add_vertex(other_addr, other_type, vert.depth + 1);
      t.edges.push_back({edge_label, vi, vo, edge_depth});
      frontier.push_back({vo, static_cast<int>(t.edges.size()) - 1});
    };
    if (!hnn) {
      const auto& reps = vert.type == 0 ? reps_a : reps_b;
      for (const Word& r : reps) {
        Word label = g.canon(addr * r);
        attach(label, label, 1 - vert.type);
      }
    } else {
      const Word tw = s.stable_letter_word();
      for (const Word& r : reps_a) {  // outgoing edges addr * r
        Word label = g.canon(addr * r);
        attach(label, g.canon(label * tw), 0);
      }
      for (const Word& r : reps_b) {  // incoming edges addr * r * t'
        Word label = g.canon(addr * r * tw.inverse());
        attach(label, label, 0);
      }
    }
  }
  return t;
}

std::string to_dot(const TreeLocal& t, const GroupPresentation& g,
                   const std::string& name) {
  std::string out = "graph \"" + name + "\" {\n";
  for (size_t i = 0; i < t.vertices.size(); ++i) {
    std::string lbl = g.format(t.vertices[i].address);
    if (lbl.empty()) lbl = "e";
    lbl += t.vertices[i].type == 0 ? " . A" : " . B";
    out += "  v" + std::to_string(i) + " [label=\"" + lbl + "\"];\n";
  }
  for (const auto& e : t.edges) {
    std::string lbl = g.format(e.label);
    if (lbl.empty()) lbl = "e";
    out += "  v" + std::to_string(e.v_from) + " -- v" + std::to_string(e.v_to) +
           " [label=\"" + lbl + "\"];\n";
  }
  out += "}\n";
  return out;
}

QuotientGraph minimal_subtree(const Splitting& target, const Subgroup& actor,
                              int depth) {
  const auto& g = target.group();
  QuotientGraph out;
  out.depth_used = depth;
  auto gens = actor.generators();
  // drop trivial generators
  std::vector<Word> kgens;
  for (const Word& k : gens)
    if (!g.is_identity(k)) kgens.push_back(g.canon(k));
  if (kgens.empty()) {
    out.edge_count = 0;
    out.vertex_count = 1;
    out.stabilized = true;
    out.vertex_labels.push_back("A");
    out.note = "trivial actor fixes every vertex";
    return out;
  }
  auto fixes = [&](const Word& addr, int type, const Word& k) {
    return in_vertex_group(target, g.canon(addr.inverse() * k * addr), type);
  };
  std::vector<std::pair<Word, int>> candidates;
  candidates.push_back({Word{}, 0});
  if (target.kind() == Splitting::Kind::Amalgam)
    candidates.push_back({Word{}, 1});
  for (const Word& k : kgens) {
    auto p = vertex_path_typed(target, Word{}, k, 0);
    candidates.insert(candidates.end(), p.begin(), p.end());
  }
  for (const auto& [addr, type] : candidates) {
    bool all = true;
    for (const Word& k : kgens)
      if (!fixes(addr, type, k)) {
        all = false;
        break;
      }
    if (all) {
      out.edge_count = 0;
      out.vertex_count = 1;
      out.stabilized = true;
      std::string lbl = g.format(addr);
      out.vertex_labels.push_back((lbl.empty() ? "e" : lbl) +
                                  (type ? " . B" : " . A"));
      out.note = "actor fixes a vertex";
      return out;
    }
  }
  if (kgens.size() == 1) {
    // cyclic actor: translation length = minimal displacement along the
    // geodesic from a base vertex to its translate
    const Word& k = kgens[0];
    auto path = vertex_path_typed(target, Word{}, k, 0);
    int best = -1;
    Word best_v;
    for (const auto& [addr, type] : path) {
      int d = vertex_distance_typed(target, addr, g.canon(k * addr), type);
      if (best < 0 || d < best) {
        best = d;
        best_v = addr;
      }
    }
    out.edge_count = best;
    out.vertex_count = best;
    out.stabilized = true;
    out.note = "cyclic actor axis";
    std::string lbl = g.format(best_v);
    out.vertex_labels.push_back(lbl.empty() ? "e" : lbl);
    return out;
  }
  // general actor: union of geodesics between ball translates of the base
  // vertex, quotiented by the actor ball; stability compared across depths
  auto edge_coset_key = [&](const Word& e) {
    Word r = target.edge_subgroup()->coset_canonical(e.inverse()).inverse();
    return g.canon(r);
  };
  auto orbits_at = [&](int d) {
    auto ball = actor.ball(std::max(d, 1));
    std::unordered_set<std::string> acc;
    for (const Word& k : ball) {
      if (g.is_identity(k)) continue;
      auto edges = edge_path(target, k);
      for (size_t i = 1; i + 1 < edges.size() + 1; ++i) {
        Word best = edge_coset_key(edges[i - 1]);
        for (const Word& k2 : ball) {
          Word cand = edge_coset_key(g.canon(k2 * edges[i - 1]));
          if (shortlex_less(cand, best)) best = cand;
        }
        acc.insert(word_key(best));
      }
    }
    return acc;
  };
  auto prev = orbits_at(depth - 1);
  auto cur = orbits_at(depth);
  out.edge_count = static_cast<int>(cur.size());
  out.vertex_count = out.edge_count;
  out.stabilized = prev.size() == cur.size();
  out.note = "union-of-geodesics quotient";
  return out;
}

}  // namespace splitkit
