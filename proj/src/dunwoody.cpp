#include "splitkit/dunwoody.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "splitkit/bass_serre.hpp"

namespace splitkit {

// ---------------------------------------------------------------------------
// Poset validation: partial order plus the four tree conditions
// ---------------------------------------------------------------------------

std::optional<PosetViolation> validate_poset(const PosetWithInvolution& e) {
  int n = e.n;
  if (static_cast<int>(e.involution.size()) != n ||
      static_cast<int>(e.leq.size()) != n)
    return PosetViolation{0, "shape mismatch"};
  for (int i = 0; i < n; ++i) {
    if (e.involution[i] == i)
      return PosetViolation{0, "element equals its involution: " + e.labels[i]};
    if (e.involution[e.involution[i]] != i)
      return PosetViolation{0, "involution is not an involution"};
    if (!e.le(i, i)) return PosetViolation{0, "order not reflexive"};
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i != j && e.le(i, j) && e.le(j, i))
        return PosetViolation{0, "order not antisymmetric: " + e.labels[i] +
                                     " vs " + e.labels[j]};
      for (int k = 0; k < n; ++k)
        if (e.le(i, j) && e.le(j, k) && !e.le(i, k))
          return PosetViolation{0, "order not transitive"};
    }
  // (1) order reversal under the involution
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (e.le(i, j) && !e.le(e.involution[j], e.involution[i]))
        return PosetViolation{
            1, e.labels[i] + " <= " + e.labels[j] + " but not the reverses"};
  // (2) finite intervals: automatic on a finite element set
  // (3) comparability: at least one of the four relations
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int ib = e.involution[i], jb = e.involution[j];
      if (!e.le(i, j) && !e.le(i, jb) && !e.le(ib, j) && !e.le(ib, jb))
        return PosetViolation{3, "incomparable pair " + e.labels[i] + ", " +
                                     e.labels[j]};
    }
  // (4) never e <= f and e <= fbar
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && i != e.involution[j] && e.le(i, j) &&
          e.le(i, e.involution[j]))
        return PosetViolation{
            4, e.labels[i] + " below both " + e.labels[j] + " and its inverse"};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Tree construction
// ---------------------------------------------------------------------------

namespace {

bool strictly_less(const PosetWithInvolution& e, int a, int b) {
  return a != b && e.le(a, b);
}

// terminal-vertex relation: term(a) = term(b) iff a = b, or a < bbar with
// empty open interval
bool share_terminus(const PosetWithInvolution& e, int a, int b) {
  if (a == b) return true;
  int bb = e.involution[b];
  if (a == bb) return false;
  if (!strictly_less(e, a, bb)) return false;
  for (int g = 0; g < e.n; ++g)
    if (g != a && g != bb && strictly_less(e, a, g) && strictly_less(e, g, bb))
      return false;
  return true;
}

}  // namespace

AbstractTree build_tree(const PosetWithInvolution& e) {
  if (auto bad = validate_poset(e))
    throw BadInput("build_tree on invalid poset (condition " +
                   std::to_string(bad->condition) + "): " + bad->detail);
  int n = e.n;
  std::vector<int> cls(n, -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = next;
    for (int j = 0; j < n; ++j)
      if (cls[j] < 0 && share_terminus(e, i, j)) cls[j] = next;
    ++next;
  }
  // the construction is self-checking: the sharing relation must be the
  // class relation, and the result must be a tree
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool rel = share_terminus(e, i, j);
      if (rel != (cls[i] == cls[j]))
        throw BadInput("terminal-vertex relation is not an equivalence at " +
                       e.labels[i] + " / " + e.labels[j]);
    }
  AbstractTree t;
  t.poset = &e;
  t.num_vertices = next;
  t.terminus.resize(n);
  for (int i = 0; i < n; ++i) t.terminus[i] = cls[i];
  for (int i = 0; i < n; ++i)
    if (t.terminus[i] == t.terminus[e.involution[i]])
      throw BadInput("tree construction produced a loop edge");
  std::vector<std::vector<int>> adj(next);
  for (int i = 0; i < n; ++i) adj[t.origin(i)].push_back(t.terminus[i]);
  std::vector<char> seen(next, 0);
  std::deque<int> q{0};
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        q.push_back(w);
      }
  }
  if (reached != next || next != n / 2 + 1)
    throw BadInput("constructed graph is not a tree");
  return t;
}

std::vector<std::vector<char>> order_from_paths(const AbstractTree& t) {
  const PosetWithInvolution& e = *t.poset;
  int n = e.n;
  std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
  std::vector<std::vector<int>> succ(n);
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f) {
      if (f == e.involution[g]) continue;
      if (t.origin(f) == t.terminus[g]) succ[g].push_back(f);
    }
  for (int start = 0; start < n; ++start) {
    std::deque<int> q{start};
    leq[start][start] = 1;
    while (!q.empty()) {
      int g = q.front();
      q.pop_front();
      for (int f : succ[g])
        if (!leq[start][f]) {
          leq[start][f] = 1;
          q.push_back(f);
        }
    }
  }
  return leq;
}

bool round_trip_ok(const PosetWithInvolution& e) {
  AbstractTree t = build_tree(e);
  auto derived = order_from_paths(t);
  for (int i = 0; i < e.n; ++i)
    for (int j = 0; j < e.n; ++j)
      if ((derived[i][j] != 0) != e.le(i, j)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Posets from half-space translates
// ---------------------------------------------------------------------------

namespace {

struct QuadrantData {
  bool empty[2][2] = {{false, false}, {false, false}};
  bool small[2][2] = {{false, false}, {false, false}};
};

// U <= V iff U n V* is empty or the only small set of the four; the indices
// flip with the orientations of the two elements
bool poset_le(const QuadrantData& q, bool u_star, bool v_star) {
  auto pick = [&](bool in_u, bool in_v) {
    int a = (in_u ? 0 : 1) ^ (u_star ? 1 : 0);
    int b = (in_v ? 0 : 1) ^ (v_star ? 1 : 0);
    return std::pair<bool, bool>(q.empty[a][b], q.small[a][b]);
  };
  auto [e_uvs, s_uvs] = pick(true, false);  // U n V*
  if (e_uvs) return true;
  if (!s_uvs) return false;
  int small_count = 0;
  for (bool su : {true, false})
    for (bool sv : {true, false})
      if (pick(su, sv).second) ++small_count;
  return small_count == 1;
}

}  // namespace

HalfSpacePoset poset_from_halfspaces(const std::vector<SplittingPtr>& splittings,
                                     const AssemblyOptions& opt) {
  if (splittings.empty()) throw AssemblyError("no splittings given");
  GroupPtr g = splittings[0]->group_ptr();
  for (size_t i = 0; i < splittings.size(); ++i)
    for (size_t j = i + 1; j < splittings.size(); ++j) {
      PairOptions popt;
      popt.thresholds = opt.thresholds;
      CountReport r = intersection_number(*splittings[i], *splittings[j],
                                          opt.inum_radius, popt);
      if (r.count > 0) {
        std::string coset;
        for (auto& pc : r.cosets)
          if (pc.verdict.certified_true()) {
            coset = g->format(pc.rep);
            break;
          }
        throw AssemblyError("crossing pair detected: splittings " +
                            std::to_string(i) + " and " + std::to_string(j) +
                            " cross at double coset '" +
                            (coset.empty() ? "e" : coset) + "'");
      }
      if (!r.exact)
        throw AssemblyError(
            "intersection number not certified exact at radius " +
            std::to_string(opt.inum_radius));
    }

  HalfSpacePoset out;
  for (size_t i = 0; i < splittings.size(); ++i) {
    const Splitting& s = *splittings[i];
    std::unordered_set<std::string> seen;
    for (const Word& w : group_ball(*g, opt.radius)) {
      Word key = s.edge_subgroup()->coset_canonical(w.inverse()).inverse();
      key = g->canon(key);
      if (!seen.insert(word_key(key)).second) continue;
      for (bool star : {false, true}) {
        HalfSpaceElement el;
        el.splitting_index = static_cast<int>(i);
        el.translate = key;
        el.star = star;
        std::string lbl = g->format(key);
        el.label = "s" + std::to_string(i) + ":" + (lbl.empty() ? "e" : lbl) +
                   (star ? ".X*" : ".X");
        out.elements.push_back(el);
      }
    }
  }
  int n = static_cast<int>(out.elements.size());
  out.poset.n = n;
  out.poset.labels.resize(n);
  out.poset.involution.resize(n);
  out.poset.leq.assign(n, std::vector<char>(n, 0));
  for (int a = 0; a < n; ++a) {
    out.poset.labels[a] = out.elements[a].label;
    out.poset.involution[a] = a % 2 == 0 ? a + 1 : a - 1;
    out.poset.leq[a][a] = 1;
  }
  auto cross_ball = group_ball(*g, opt.radius + 2);
  for (int a = 0; a < n; a += 2)
    for (int b = 0; b < n; b += 2) {
      if (a == b) continue;
      const auto& ea = out.elements[a];
      const auto& eb = out.elements[b];
      const Splitting& sa = *splittings[ea.splitting_index];
      const Splitting& sb = *splittings[eb.splitting_index];
      QuadrantData qd;
      if (ea.splitting_index == eb.splitting_index) {
        Word h = g->canon(ea.translate.inverse() * eb.translate);
        QuadrantPattern pat = sa.quadrant_pattern(h);
        for (int x = 0; x < 2; ++x)
          for (int y = 0; y < 2; ++y) {
            qd.empty[x][y] = !pat.occupied[x][y];
            qd.small[x][y] = qd.empty[x][y];
          }
      } else {
        auto in_u = [&](const Word& w) {
          return sa.side_X(g->canon(ea.translate.inverse() * w));
        };
        auto in_v = [&](const Word& w) {
          return sb.side_X(g->canon(eb.translate.inverse() * w));
        };
        for (int x = 0; x < 2; ++x)
          for (int y = 0; y < 2; ++y) {
            auto uu = [&](const Word& w) { return in_u(w) == (x == 0); };
            auto vv = [&](const Word& w) { return in_v(w) == (y == 0); };
            Verdict sm = smallness_verdict(g, uu, vv, *sb.edge_subgroup(),
                                           opt.radius + 2, opt.thresholds);
            if (sm.unresolved_state())
              throw AssemblyError(
                  "unresolved smallness verdict (radius insufficient) between " +
                  ea.label + " and " + eb.label);
            qd.small[x][y] = sm.certified_true();
            bool any = false;
            for (const Word& w : cross_ball)
              if (uu(w) && vv(w)) {
                any = true;
                break;
              }
            qd.empty[x][y] = !any && qd.small[x][y];
          }
      }
      for (bool us : {false, true})
        for (bool vs : {false, true}) {
          int ia = a + (us ? 1 : 0), ib = b + (vs ? 1 : 0);
          if (poset_le(qd, us, vs)) out.poset.leq[ia][ib] = 1;
        }
    }
  if (auto bad = validate_poset(out.poset))
    throw AssemblyError("half-space poset violates condition " +
                        std::to_string(bad->condition) + ": " + bad->detail);
  return out;
}

// ---------------------------------------------------------------------------
// Graph-of-groups assembly
// ---------------------------------------------------------------------------

GraphOfGroups assemble_graph_of_groups(const std::vector<SplittingPtr>& inputs,
                                       const AssemblyOptions& opt) {
  if (inputs.empty()) throw AssemblyError("no splittings given");
  GroupPtr g = inputs[0]->group_ptr();
  std::vector<int> class_of(inputs.size(), -1);
  std::vector<size_t> rep_of_class;
  std::vector<Word> conjugator(inputs.size());
  for (size_t i = 0; i < inputs.size(); ++i) {
    for (size_t c = 0; c < rep_of_class.size() && class_of[i] < 0; ++c) {
      auto res = splittings_conjugate(*inputs[rep_of_class[c]], *inputs[i],
                                      opt.conjugacy_agree_radius,
                                      opt.conjugacy_search_radius);
      if (res.verdict.certified_true()) {
        class_of[i] = static_cast<int>(c);
        conjugator[i] = res.conjugator;
      }
    }
    if (class_of[i] < 0) {
      class_of[i] = static_cast<int>(rep_of_class.size());
      rep_of_class.push_back(i);
    }
  }
  std::vector<SplittingPtr> reps;
  for (size_t idx : rep_of_class) reps.push_back(inputs[idx]);

  HalfSpacePoset hp = poset_from_halfspaces(reps, opt);
  AbstractTree tree = build_tree(hp.poset);

  GraphOfGroups gog;
  gog.inputs = inputs;
  gog.radius = opt.radius;
  gog.stabilized = true;

  struct BaseEdge {
    int clazz;
    int term_v, origin_v;
  };
  std::vector<BaseEdge> base_edges;
  for (size_t c = 0; c < reps.size(); ++c) {
    int plus = -1;
    for (int i = 0; i < hp.poset.n; ++i) {
      const auto& el = hp.elements[i];
      if (el.splitting_index == static_cast<int>(c) && !el.star &&
          g->is_identity(el.translate)) {
        plus = i;
        break;
      }
    }
    if (plus < 0) throw AssemblyError("base translate missing from poset");
    base_edges.push_back(
        {static_cast<int>(c), tree.terminus[plus], tree.origin(plus)});
  }
  auto incident = [&](int v) {
    std::vector<int> out;
    for (int i = 0; i < hp.poset.n; ++i)
      if (tree.terminus[i] == v) out.push_back(i);
    return out;
  };
  auto edge_key = [&](int el_index, const Word& shift) {
    const auto& el = hp.elements[el_index];
    const Splitting& s = *reps[el.splitting_index];
    Word t = g->canon(shift * el.translate);
    Word key = s.edge_subgroup()->coset_canonical(t.inverse()).inverse();
    return std::to_string(el.splitting_index) + "|" + word_key(g->canon(key));
  };
  auto vertex_signature = [&](int v, const Word& shift) {
    std::vector<std::string> keys;
    for (int ei : incident(v)) keys.push_back(edge_key(ei, shift));
    std::sort(keys.begin(), keys.end());
    std::string out;
    for (auto& k : keys) out += k + ";";
    return out;
  };
  std::vector<int> verts;
  for (auto& be : base_edges) {
    verts.push_back(be.term_v);
    verts.push_back(be.origin_v);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  std::vector<int> orbit(verts.size(), -1);
  int next_orbit = 0;
  auto ball_words = group_ball(*g, opt.conjugacy_search_radius + 2);
  for (size_t i = 0; i < verts.size(); ++i) {
    if (orbit[i] >= 0) continue;
    orbit[i] = next_orbit++;
    std::string sig_i = vertex_signature(verts[i], Word{});
    for (size_t j = i + 1; j < verts.size(); ++j) {
      if (orbit[j] >= 0) continue;
      for (const Word& t : ball_words) {
        if (vertex_signature(verts[j], t) == sig_i) {
          orbit[j] = orbit[i];
          break;
        }
      }
    }
  }
  auto orbit_of_vertex = [&](int v) {
    for (size_t i = 0; i < verts.size(); ++i)
      if (verts[i] == v) return orbit[i];
    return -1;
  };
  gog.vertex_count = next_orbit;
  gog.vertex_labels.assign(next_orbit, "");
  for (size_t i = 0; i < verts.size(); ++i) {
    if (!gog.vertex_labels[orbit[i]].empty()) continue;
    std::string sig = vertex_signature(verts[i], Word{});
    std::vector<std::string> stab;
    for (const Word& t : ball_words) {
      if (t.empty() || stab.size() >= 3) continue;
      if (vertex_signature(verts[i], t) == sig) stab.push_back(g->format(t));
    }
    std::string lbl = "<";
    for (size_t k = 0; k < stab.size(); ++k) lbl += (k ? ", " : "") + stab[k];
    lbl += ">";
    gog.vertex_labels[orbit[i]] = lbl;
  }
  std::vector<std::vector<size_t>> members(reps.size());
  for (size_t i = 0; i < inputs.size(); ++i)
    members[class_of[i]].push_back(i);
  for (size_t c = 0; c < reps.size(); ++c) {
    int v_from = orbit_of_vertex(base_edges[c].origin_v);
    int v_to = orbit_of_vertex(base_edges[c].term_v);
    const auto& mem = members[c];
    if (mem.size() == 1) {
      GraphOfGroups::Edge e;
      e.from = v_from;
      e.to = v_to;
      e.input_index = static_cast<int>(mem[0]);
      e.splitting = reps[c];
      e.conjugator = conjugator[mem[0]];
      e.edge_group = reps[c]->edge_subgroup()->describe();
      gog.edges.push_back(e);
    } else {
      // conjugate inputs: subdivide into |mem| edges with the edge subgroup
      // labelling the interior vertices
      int prev = v_from;
      for (size_t k = 0; k < mem.size(); ++k) {
        int nxt;
        if (k + 1 == mem.size()) {
          nxt = v_to;
        } else {
          nxt = gog.vertex_count++;
          gog.vertex_labels.push_back(reps[c]->edge_subgroup()->describe());
        }
        GraphOfGroups::Edge e;
        e.from = prev;
        e.to = nxt;
        e.input_index = static_cast<int>(mem[k]);
        e.splitting = reps[c];
        e.conjugator = conjugator[mem[k]];
        e.edge_group = reps[c]->edge_subgroup()->describe();
        gog.edges.push_back(e);
        prev = nxt;
      }
    }
  }
  std::sort(gog.edges.begin(), gog.edges.end(),
            [](const GraphOfGroups::Edge& a, const GraphOfGroups::Edge& b) {
              return a.input_index < b.input_index;
            });
  return gog;
}

SplittingPtr collapse_edge(const GraphOfGroups& gog, int i) {
  if (i < 0 || i >= static_cast<int>(gog.edges.size()))
    throw BadInput("collapse_edge: index out of range");
  const auto& e = gog.edges[i];
  if (e.conjugator.empty()) return e.splitting;
  return e.splitting->conjugated(e.conjugator);
}

Verdict verify_collapse(const GraphOfGroups& gog, int i, int r) {
  if (i < 0 || i >= static_cast<int>(gog.edges.size()))
    throw BadInput("verify_collapse: index out of range");
  const auto& e = gog.edges[i];
  SplittingPtr s = collapse_edge(gog, i);
  const GroupPresentation& g = s->group();
  // the half-space description from the tree order: w lies in X exactly when
  // w e < e or w ebar < e; edge inversions fall back to the subdivided order
  auto reconstructed = [&](const Word& w) {
    auto rel = edge_order(*s, w, Word{}).relation;
    switch (rel) {
      case EdgeRelation::Less:
      case EdgeRelation::GreaterComplement:
        return true;
      case EdgeRelation::ComplementEqual:
        return s->side_X(w);
      default:
        return false;
    }
  };
  for (const Word& w : group_ball(g, r)) {
    bool lhs = reconstructed(w);
    bool rhs = s->side_X(w);
    if (lhs != rhs)
      return Verdict::no(r,
                         "half-space description mismatch at " + g.format(w));
  }
  const Splitting& input = *gog.inputs[e.input_index];
  Verdict eq = splittings_equivalent(input, *s, r);
  if (!eq.certified_true()) {
    auto res = splittings_conjugate(input, *s, r, 3);
    if (!res.verdict.certified_true())
      return Verdict::unresolved(r, "no conjugator found in search ball");
  }
  return Verdict::yes(r);
}

}  // namespace splitkit
