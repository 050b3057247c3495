#include "splitkit/crossing.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <limits>
#include <optional>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace splitkit {

// ---------------------------------------------------------------------------
// Double cosets
// ---------------------------------------------------------------------------

Word double_coset_key(GroupPtr g, const Subgroup& k, const Subgroup& h,
                      const Word& w) {
  Word wc = g->canon(w);
  Word best = k.coset_canonical(wc);
  long grace_init = 8;
  if (h.kind() == MembershipKind::CyclicPowers)
    grace_init = 2 * static_cast<long>(h.generators()[0].size()) + 8;
  switch (h.kind()) {
    case MembershipKind::Trivial:
      return best;
    case MembershipKind::FiniteEnum: {
      for (const Word& e : h.generators()) {
        Word cand = k.coset_canonical(g->mul(wc, e));
        if (shortlex_less(cand, best)) best = cand;
      }
      return best;
    }
    case MembershipKind::CyclicPowers: {
      for (int sgn : {1, -1}) {
        long grace = grace_init;
        for (long n = 1; grace > 0 && n <= 512; ++n) {
          Word p = h.power_word(sgn * n);
          if (n > 1 && p.empty()) break;  // finite order wrapped around
          Word cand = k.coset_canonical(g->mul(wc, p));
          if (shortlex_less(cand, best))
            best = cand;
          else
            --grace;
        }
      }
      return best;
    }
    default:
      throw BadInput("double_coset_key: unsupported subgroup kind");
  }
}

std::vector<Word> double_coset_reps(GroupPtr g, const Subgroup& k,
                                    const Subgroup& h, int r) {
  std::unordered_set<std::string> seen;
  std::vector<Word> reps;
  BallVisitor vis;
  vis.enter = [&](const Word& w, int) {
    Word key = double_coset_key(g, k, h, w);
    if (seen.insert(word_key(key)).second) reps.push_back(key);
    return true;
  };
  stream_ball(*g, r, vis);
  std::sort(reps.begin(), reps.end(), shortlex_less);
  return reps;
}

// ---------------------------------------------------------------------------
// Growth verdicts and first-letter models
// ---------------------------------------------------------------------------

namespace {

Verdict projection_verdict(const long c[3], int r, const CrossingThresholds& th) {
  if (c[0] == c[2]) return Verdict::yes(r);  // small: stable window
  if (c[0] < c[1] && c[1] < c[2] && c[2] > th.growth_floor)
    return Verdict::no(r);  // not small: strict growth
  return Verdict::unresolved(r);
}

// Exact route for trivial-edge splittings of free ambient groups whose side
// function factors through the first letter of the reduced word.
struct FirstLetterModel {
  bool valid = false;
  const GroupPresentation* g = nullptr;
  std::vector<char> side_pos, side_neg;

  bool side_of_letter(Letter l) const {
    int gi = l > 0 ? l : -l;
    return l > 0 ? side_pos[gi] != 0 : side_neg[gi] != 0;
  }
};

FirstLetterModel first_letter_model(const Splitting& s) {
  FirstLetterModel m;
  if (s.group().strategy != Strategy::Free) return m;
  if (s.has_transport()) return m;
  if (!s.edge_subgroup()->is_trivial_kind()) return m;
  int n = s.group().alphabet.size();
  m.g = &s.group();
  m.side_pos.assign(n + 1, 0);
  m.side_neg.assign(n + 1, 0);
  if (s.kind() == Splitting::Kind::Hnn) {
    Word t = s.stable_letter_word();
    if (t.size() != 1 || t[0] < 0) return m;
    m.side_pos[t[0]] = 1;
  } else {
    for (int gi = 1; gi <= n; ++gi) {
      Word w{{static_cast<Letter>(gi)}};
      m.side_pos[gi] = s.side_X(w) ? 1 : 0;
      m.side_neg[gi] = s.side_X(w.inverse()) ? 1 : 0;
    }
  }
  m.valid = true;
  return m;
}

struct ExactQuadrants {
  bool infinite[2][2] = {{false, false}, {false, false}};
  long finite_count[2][2] = {{0, 0}, {0, 0}};
  void add_singleton(bool s1, bool s2) {
    finite_count[s1 ? 0 : 1][s2 ? 0 : 1]++;
  }
  void add_family(bool s1, bool s2) {
    infinite[s1 ? 0 : 1][s2 ? 0 : 1] = true;
  }
};

// quadrant contents of (u Xs, Xt) over all of G: w in u Xs iff
// sideS(u^{-1} w), w in Xt iff sideT(w); both sides are first-letter
// functions, so every quadrant is empty, a few singletons, or infinite
ExactQuadrants exact_quadrants(const FirstLetterModel& ms,
                               const FirstLetterModel& mt, const Word& uw) {
  const GroupPresentation& g = *ms.g;
  Word u = g.canon(uw);
  ExactQuadrants q;
  int n = g.alphabet.size();
  std::vector<Letter> letters;
  for (int gi = 1; gi <= n; ++gi) {
    letters.push_back(gi);
    letters.push_back(-gi);
  }
  if (u.empty()) {
    q.add_singleton(false, false);  // w = e
    for (Letter a : letters)
      q.add_family(ms.side_of_letter(a), mt.side_of_letter(a));
    return q;
  }
  Letter u_first = u[0];
  Letter u_last_inv = -u.letters.back();
  // sideS(u^{-1} w) is constant for every w that does not extend u
  bool const_s = ms.side_of_letter(u_last_inv);
  q.add_singleton(const_s, false);                      // w = e
  q.add_singleton(false, mt.side_of_letter(u_first));   // w = u
  for (Letter a : letters) {
    bool exists = a != u_first || u.size() >= 2;
    if (exists) q.add_family(const_s, mt.side_of_letter(a));
  }
  for (Letter b : letters) {
    if (b == u_last_inv) continue;
    q.add_family(ms.side_of_letter(b), mt.side_of_letter(u_first));
  }
  return q;
}

Verdict exact_quadrants_verdict(const ExactQuadrants& q, int evidence) {
  bool all_infinite = true;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (!q.infinite[i][j]) all_infinite = false;
  if (all_infinite) return Verdict::yes(evidence);
  return Verdict::no(evidence, "a quadrant is finite");
}

// ---------------------------------------------------------------------------
// Axis-end route: cyclic-edge HNN splittings of free groups. The coboundary
// of a standard set is the edge-generator axis (a quasi-line in the Cayley
// tree); a pair of translates crosses exactly when each axis has its two
// ends separated by the other set.
// ---------------------------------------------------------------------------

struct AxisModel {
  bool valid = false;
  Word c;  // edge generator, current coordinates
};

AxisModel axis_model(const Splitting& s) {
  AxisModel m;
  if (s.group().strategy != Strategy::Free) return m;
  if (s.kind() != Splitting::Kind::Hnn) return m;
  if (s.edge_subgroup()->kind() != MembershipKind::CyclicPowers) return m;
  m.c = s.group().canon(s.edge_subgroup()->generators()[0]);
  m.valid = m.c.size() > 0;
  return m;
}

// Eventual side of the end g c^{sign * infinity} with respect to `in_set`;
// nullopt when three consecutive probes never agree.
std::optional<bool> end_side(const GroupPresentation& g, const Word& base,
                             const Word& c, int sign,
                             const std::function<bool(const Word&)>& in_set,
                             int extra) {
  long start = (static_cast<long>(base.size()) + extra) /
                   std::max<size_t>(1, cyclic_reduce(c).core.size()) +
               2;
  Word step = sign > 0 ? c : c.inverse();
  for (long n0 = start; n0 <= 8 * start + 64; n0 *= 2) {
    Word p = g.canon(base * step.pow(static_cast<int>(n0)));
    bool v0 = in_set(p);
    bool stable = true;
    for (int j = 1; j <= 2; ++j) {
      p = g.canon(p * step);
      if (in_set(p) != v0) {
        stable = false;
        break;
      }
    }
    if (stable) return v0;
  }
  return std::nullopt;
}

// crossing of (u Xs, Xt) for two axis models; nullopt when an end-side probe
// fails to stabilize
std::optional<bool> axes_cross(const Splitting& s, const AxisModel& ms,
                               const Splitting& t, const AxisModel& mt,
                               const Word& u) {
  const GroupPresentation& g = s.group();
  auto in_t = [&](const Word& w) { return t.side_X(w); };
  auto in_us = [&](const Word& w) {
    return s.side_X(g.canon(u.inverse() * w));
  };
  int extra = static_cast<int>(ms.c.size() + mt.c.size()) + 8;
  auto a_plus = end_side(g, u, ms.c, +1, in_t, extra);
  auto a_minus = end_side(g, u, ms.c, -1, in_t, extra);
  auto b_plus = end_side(g, Word{}, mt.c, +1, in_us,
                         extra + static_cast<int>(u.size()));
  auto b_minus = end_side(g, Word{}, mt.c, -1, in_us,
                          extra + static_cast<int>(u.size()));
  if (!a_plus || !a_minus || !b_plus || !b_minus) return std::nullopt;
  return (*a_plus != *a_minus) && (*b_plus != *b_minus);
}

// strong crossing of (u Xs) over Xt: the boundary of u Xs is the translated
// axis; it crosses strongly exactly when its two ends are separated by Xt
std::optional<bool> axis_crosses_strongly(const Splitting& s,
                                          const AxisModel& ms,
                                          const Splitting& t, const Word& u) {
  const GroupPresentation& g = s.group();
  auto in_t = [&](const Word& w) { return t.side_X(w); };
  int extra = static_cast<int>(ms.c.size()) + 12;
  auto a_plus = end_side(g, u, ms.c, +1, in_t, extra);
  auto a_minus = end_side(g, u, ms.c, -1, in_t, extra);
  if (!a_plus || !a_minus) return std::nullopt;
  return *a_plus != *a_minus;
}

// ---------------------------------------------------------------------------
// Generic projected-count scans
// ---------------------------------------------------------------------------

// DFS-ordered ball with the second set's side bits and K-coset projection
// ids; shared across the per-coset scans of one pair.
struct ScanContext {
  GroupPtr g;
  int radius = 0;
  std::vector<int8_t> len;
  std::vector<int8_t> side_t;
  std::vector<int32_t> coset_k;
  int32_t num_cosets = 0;
};

ScanContext build_context(GroupPtr g, const Splitting& t, StdVariant vt,
                          const Subgroup& k, int r) {
  ScanContext ctx;
  ctx.g = g;
  ctx.radius = r;
  std::unordered_map<std::string, int32_t> coset_ids;
  auto cur = t.cursor();
  BallVisitor vis;
  vis.enter = [&](const Word& w, int lenw) {
    if (lenw > 0) cur.push(w.letters.back());
    ctx.len.push_back(static_cast<int8_t>(lenw));
    ctx.side_t.push_back(cur.member(vt) ? 1 : 0);
    Word key = k.coset_canonical(w);
    auto [it, fresh] = coset_ids.emplace(word_key(key), ctx.num_cosets);
    if (fresh) ++ctx.num_cosets;
    ctx.coset_k.push_back(it->second);
    return true;
  };
  vis.leave = [&]() {
    if (cur.depth() > 0) cur.pop();
  };
  stream_ball(*g, r, vis);
  return ctx;
}

struct QuadrantCounts {
  long c[2][2][3] = {};
};

QuadrantCounts quadrant_projection_counts(const ScanContext& ctx,
                                          const Splitting& s, StdVariant vs,
                                          const Word& gw) {
  const GroupPresentation& g = *ctx.g;
  QuadrantCounts out;
  std::vector<int8_t> minlen(static_cast<size_t>(ctx.num_cosets) * 4,
                             std::numeric_limits<int8_t>::max());
  auto cur = s.cursor(g.canon(gw.inverse()));
  size_t idx = 0;
  BallVisitor vis;
  vis.enter = [&](const Word& w, int lenw) {
    if (lenw > 0) cur.push(w.letters.back());
    int qi = (cur.member(vs) ? 0 : 2) + (ctx.side_t[idx] ? 0 : 1);
    size_t slot = static_cast<size_t>(ctx.coset_k[idx]) * 4 + qi;
    if (lenw < minlen[slot]) minlen[slot] = static_cast<int8_t>(lenw);
    ++idx;
    return true;
  };
  vis.leave = [&]() {
    if (cur.depth() > 0) cur.pop();
  };
  stream_ball(g, ctx.radius, vis);
  for (size_t cc = 0; cc < static_cast<size_t>(ctx.num_cosets); ++cc)
    for (int qi = 0; qi < 4; ++qi) {
      int8_t m = minlen[cc * 4 + qi];
      if (m == std::numeric_limits<int8_t>::max()) continue;
      for (int k3 = 0; k3 < 3; ++k3)
        if (m <= ctx.radius - 2 + k3) out.c[qi >> 1][qi & 1][k3]++;
    }
  return out;
}

// projected counts of boundary points of the g-translate of the s-set,
// split by the side in the t-set
QuadrantCounts boundary_projection_counts(const ScanContext& ctx,
                                          const Splitting& s, StdVariant vs,
                                          const Word& gw) {
  const GroupPresentation& g = *ctx.g;
  QuadrantCounts out;
  std::vector<int8_t> minlen(static_cast<size_t>(ctx.num_cosets) * 2,
                             std::numeric_limits<int8_t>::max());
  auto cur = s.cursor(g.canon(gw.inverse()));
  int n = g.alphabet.size();
  size_t idx = 0;
  BallVisitor vis;
  vis.enter = [&](const Word& w, int lenw) {
    if (lenw > 0) cur.push(w.letters.back());
    bool base_side = cur.member(vs);
    bool boundary = false;
    for (int gi = 1; gi <= n && !boundary; ++gi) {
      for (Letter l : {static_cast<Letter>(gi), static_cast<Letter>(-gi)}) {
        cur.push(l);
        bool nb = cur.member(vs);
        cur.pop();
        if (nb != base_side) {
          boundary = true;
          break;
        }
      }
    }
    if (boundary) {
      size_t slot =
          static_cast<size_t>(ctx.coset_k[idx]) * 2 + (ctx.side_t[idx] ? 0 : 1);
      if (lenw < minlen[slot]) minlen[slot] = static_cast<int8_t>(lenw);
    }
    ++idx;
    return true;
  };
  vis.leave = [&]() {
    if (cur.depth() > 0) cur.pop();
  };
  stream_ball(g, ctx.radius, vis);
  for (size_t cc = 0; cc < static_cast<size_t>(ctx.num_cosets); ++cc)
    for (int si = 0; si < 2; ++si) {
      int8_t m = minlen[cc * 2 + si];
      if (m == std::numeric_limits<int8_t>::max()) continue;
      for (int k3 = 0; k3 < 3; ++k3)
        if (m <= ctx.radius - 2 + k3) out.c[0][si][k3]++;
    }
  return out;
}

Verdict quadrant_counts_verdict(const QuadrantCounts& qc, int r,
                                const CrossingThresholds& th) {
  int small_c = 0, notsmall_c = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Verdict v = projection_verdict(qc.c[a][b], r, th);
      if (v.certified_true()) ++small_c;
      if (v.certified_false()) ++notsmall_c;
    }
  if (small_c > 0) return Verdict::no(r, "a quadrant is certified small");
  if (notsmall_c == 4) return Verdict::yes(r);
  return Verdict::unresolved(r);
}

Verdict boundary_counts_verdict(const QuadrantCounts& qb, int r,
                                const CrossingThresholds& th) {
  Verdict v_in = projection_verdict(qb.c[0][0], r, th);
  Verdict v_out = projection_verdict(qb.c[0][1], r, th);
  if (v_in.certified_true() || v_out.certified_true())
    return Verdict::no(r, "a boundary-side projection is certified finite");
  if (v_in.certified_false() && v_out.certified_false())
    return Verdict::yes(r);
  return Verdict::unresolved(r);
}

// Escalation ladder: cheap small-radius scans resolve distant nested
// translates (their empty quadrants give zero-stable counts); only the
// contentious cosets pay for the full-radius scan.
std::vector<int> radius_ladder(int r) {
  std::vector<int> out;
  for (int rho = 4; rho < r; rho += 2) out.push_back(rho);
  out.push_back(r);
  return out;
}

struct PairEngine {
  const Splitting& s;
  const Splitting& t;
  GroupPtr g;
  StdVariant vs, vt;
  CrossingThresholds th;
  int radius;
  bool same;
  FirstLetterModel ms_fl, mt_fl;
  bool fast_fl = false;
  AxisModel ms_ax, mt_ax;
  std::vector<std::pair<int, ScanContext>> contexts;  // per ladder radius

  PairEngine(const Splitting& s_, const Splitting& t_, int r,
             const PairOptions& opt)
      : s(s_), t(t_), g(s_.group_ptr()), vs(opt.variant_s), vt(opt.variant_t),
        th(opt.thresholds), radius(r), same(&s_ == &t_) {
    if (same) return;
    ms_fl = first_letter_model(s);
    mt_fl = first_letter_model(t);
    fast_fl = ms_fl.valid && mt_fl.valid && &s.group() == &t.group();
    ms_ax = axis_model(s);
    mt_ax = axis_model(t);
  }

  bool needs_contexts(bool strong) const {
    if (same) return false;
    if (fast_fl && !strong) return false;
    if (ms_ax.valid && mt_ax.valid && !strong) return false;
    return true;
  }

  void build_contexts() {
    if (!contexts.empty()) return;
    for (int rho : radius_ladder(radius))
      contexts.emplace_back(
          rho, build_context(g, t, vt, *t.edge_subgroup(), rho));
  }

  Verdict weak(const Word& rep) const {
    if (same) {
      QuadrantPattern pat = s.quadrant_pattern(rep);
      return pat.empty_count() >= 1
                 ? Verdict::no(radius, "nested translates")
                 : Verdict::unresolved(radius, "no empty quadrant found");
    }
    if (fast_fl) {
      ExactQuadrants q = exact_quadrants(ms_fl, mt_fl, rep);
      return exact_quadrants_verdict(q, static_cast<int>(rep.size()) + 1);
    }
    int evidence = static_cast<int>(rep.size()) + 1;
    std::optional<bool> a_sep, b_sep;
    if (ms_ax.valid && &s.group() == &t.group()) {
      auto in_t = [&](const Word& w) { return t.member(w, vt); };
      int extra = static_cast<int>(ms_ax.c.size()) + 12;
      auto ap = end_side(*g, rep, ms_ax.c, +1, in_t, extra);
      auto am = end_side(*g, rep, ms_ax.c, -1, in_t, extra);
      if (ap && am) a_sep = (*ap != *am);
      if (a_sep && *a_sep) return Verdict::yes(evidence, "axis ends separated");
    }
    if (mt_ax.valid && &s.group() == &t.group()) {
      auto in_us = [&](const Word& w) {
        return s.member(g->canon(rep.inverse() * w), vs);
      };
      int extra =
          static_cast<int>(mt_ax.c.size() + rep.size()) + 12;
      auto bp = end_side(*g, Word{}, mt_ax.c, +1, in_us, extra);
      auto bm = end_side(*g, Word{}, mt_ax.c, -1, in_us, extra);
      if (bp && bm) b_sep = (*bp != *bm);
      if (b_sep && *b_sep) return Verdict::yes(evidence, "axis ends separated");
    }
    if (a_sep && b_sep && !*a_sep && !*b_sep)
      return Verdict::no(evidence, "both axes unseparated");
    // generic escalation
    for (const auto& [rho, ctx] : contexts) {
      QuadrantCounts qc = quadrant_projection_counts(ctx, s, vs, rep);
      Verdict v = quadrant_counts_verdict(qc, rho, th);
      if (!v.unresolved_state()) return v;
    }
    return Verdict::unresolved(radius);
  }

  Verdict strong(const Word& rep, const Verdict& weak_v) const {
    if (weak_v.certified_false())
      return Verdict::no(weak_v.radius, "does not cross");
    int evidence = static_cast<int>(rep.size()) + 1;
    // a trivial-edge standard set of a free group has finite coboundary
    if (s.group().strategy == Strategy::Free && !s.has_transport() &&
        s.edge_subgroup()->is_trivial_kind())
      return Verdict::no(evidence, "finite coboundary");
    if (ms_ax.valid && &s.group() == &t.group()) {
      auto in_t = [&](const Word& w) { return t.member(w, vt); };
      int extra = static_cast<int>(ms_ax.c.size()) + 12;
      auto ap = end_side(*g, rep, ms_ax.c, +1, in_t, extra);
      auto am = end_side(*g, rep, ms_ax.c, -1, in_t, extra);
      if (ap && am)
        return *ap != *am
                   ? Verdict::yes(evidence, "boundary axis ends separated")
                   : Verdict::no(evidence, "boundary axis ends unseparated");
    }
    for (const auto& [rho, ctx] : contexts) {
      QuadrantCounts qb = boundary_projection_counts(ctx, s, vs, rep);
      Verdict v = boundary_counts_verdict(qb, rho, th);
      if (!v.unresolved_state()) return v;
    }
    return Verdict::unresolved(radius);
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Public verdicts
// ---------------------------------------------------------------------------

Verdict smallness_verdict(GroupPtr g,
                          const std::function<bool(const Word&)>& u,
                          const std::function<bool(const Word&)>& v,
                          const Subgroup& h_ref, int r,
                          const CrossingThresholds& th) {
  if (r < 2) return Verdict::unresolved(r, "radius too small");
  CayleyBall b = ball(g, r);
  std::vector<char> in_v(b.size()), in_both(b.size());
  for (size_t i = 0; i < b.size(); ++i) {
    in_v[i] = v(b.vertices[i]) ? 1 : 0;
    in_both[i] = in_v[i] && u(b.vertices[i]);
  }
  std::vector<int> dist(b.size(), -1);
  std::deque<int> q;
  std::vector<std::vector<int>> adj(b.size());
  for (const auto& e : b.edges) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
    if (in_v[e.from] != in_v[e.to]) {
      for (int vtx : {e.from, e.to})
        if (dist[vtx] < 0) {
          dist[vtx] = 0;
          q.push_back(vtx);
        }
    }
  }
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int y : adj[x])
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        q.push_back(y);
      }
  }
  long c[3] = {0, 0, 0};
  int dmax[3] = {0, 0, 0};
  std::unordered_set<std::string> proj[3];
  for (size_t i = 0; i < b.size(); ++i) {
    if (!in_both[i]) continue;
    int lenw = static_cast<int>(b.vertices[i].size());
    int d = dist[i] < 0 ? r + 1 : dist[i];
    for (int k3 = 0; k3 < 3; ++k3) {
      if (lenw <= r - 2 + k3) {
        dmax[k3] = std::max(dmax[k3], d);
        proj[k3].insert(word_key(h_ref.coset_canonical(b.vertices[i])));
      }
    }
  }
  for (int k3 = 0; k3 < 3; ++k3) c[k3] = static_cast<long>(proj[k3].size());
  bool d_stable = dmax[1] == dmax[2];
  bool proj_stable = c[0] == c[2];
  if (proj_stable && d_stable) return Verdict::yes(r);
  if (c[0] < c[1] && c[1] < c[2] && c[2] > th.growth_floor)
    return Verdict::no(r);
  return Verdict::unresolved(r);
}

Verdict crosses(const HalfSpace& hs1, const HalfSpace& hs2, int r,
                const CrossingThresholds& th) {
  const auto& g = hs1.splitting->group();
  Word u = g.canon(hs2.translate.inverse() * hs1.translate);
  PairOptions opt;
  opt.thresholds = th;
  opt.variant_s = hs1.variant;
  opt.variant_t = hs2.variant;
  PairEngine eng(*hs1.splitting, *hs2.splitting, r, opt);
  if (eng.same) {
    QuadrantPattern pat = hs1.splitting->quadrant_pattern(u);
    if (pat.empty_count() >= 1)
      return Verdict::no(0, "nested translates (tree order)");
    return Verdict::unresolved(r, "pattern engine found no empty quadrant");
  }
  if (eng.needs_contexts(false)) eng.build_contexts();
  return eng.weak(u);
}

Verdict crosses_strongly(const HalfSpace& hs1, const HalfSpace& hs2, int r,
                         const CrossingThresholds& th) {
  const auto& g = hs1.splitting->group();
  Word u = g.canon(hs2.translate.inverse() * hs1.translate);
  PairOptions opt;
  opt.thresholds = th;
  opt.variant_s = hs1.variant;
  opt.variant_t = hs2.variant;
  PairEngine eng(*hs1.splitting, *hs2.splitting, r, opt);
  Verdict weak;
  if (eng.same) {
    QuadrantPattern pat = hs1.splitting->quadrant_pattern(u);
    weak = pat.empty_count() >= 1
               ? Verdict::no(0, "nested translates (tree order)")
               : Verdict::unresolved(r, "no empty quadrant");
  } else {
    if (eng.needs_contexts(true)) eng.build_contexts();
    weak = eng.weak(u);
  }
  return eng.strong(u, weak);
}

// ---------------------------------------------------------------------------
// Intersection numbers
// ---------------------------------------------------------------------------

namespace {

CountReport count_crossings(const Splitting& s, const Splitting& t, int r,
                            const PairOptions& opt, bool strong) {
  GroupPtr g = s.group_ptr();
  SubgroupPtr h = s.edge_subgroup();
  SubgroupPtr k = t.edge_subgroup();
  auto reps = double_coset_reps(g, *k, *h, r);
  CountReport report;
  report.radius = r;
  report.cosets.resize(reps.size());

  PairEngine eng(s, t, r, opt);
  if (eng.needs_contexts(strong)) eng.build_contexts();

  auto eval_rep = [&](size_t i) {
    const Word& rep = reps[i];
    Verdict weak = eng.weak(rep);
    if (!strong) {
      report.cosets[i] = {rep, weak};
      return;
    }
    report.cosets[i] = {rep, eng.strong(rep, weak)};
  };

  int threads = std::max(1, opt.threads);
  if (threads > 1 && reps.size() > 8) {
    std::atomic<size_t> next{0};
    auto worker = [&]() {
      for (size_t i = next.fetch_add(1); i < reps.size();
           i = next.fetch_add(1))
        eval_rep(i);
    };
    std::vector<std::thread> pool;
    for (int tn = 0; tn < threads; ++tn) pool.emplace_back(worker);
    for (auto& thj : pool) thj.join();
  } else {
    for (size_t i = 0; i < reps.size(); ++i) eval_rep(i);
  }

  bool all_certified = true;
  int deepest_noncrossing_free = -1;
  for (const auto& pc : report.cosets) {
    if (pc.verdict.certified_true()) ++report.count;
    if (pc.verdict.unresolved_state()) all_certified = false;
    if (!pc.verdict.certified_false())
      deepest_noncrossing_free = std::max(deepest_noncrossing_free,
                                          static_cast<int>(pc.rep.size()));
  }
  bool saturated = deepest_noncrossing_free <= r - 2;
  report.exact = all_certified && saturated;
  return report;
}

}  // namespace

CountReport intersection_number(const Splitting& s, const Splitting& t, int r,
                                const PairOptions& opt) {
  return count_crossings(s, t, r, opt, false);
}

CountReport strong_intersection_number(const Splitting& s, const Splitting& t,
                                       int r, const PairOptions& opt) {
  return count_crossings(s, t, r, opt, true);
}

Verdict two_sided_invariance_check(GroupPtr g,
                                   const std::function<bool(const Word&)>& y,
                                   const Subgroup& h, int r) {
  auto hball = h.ball(std::min(r, 8));
  Verdict out = Verdict::yes(r);
  BallVisitor vis;
  vis.enter = [&](const Word& w, int) {
    if (!out.certified_true()) return false;
    if (!y(w)) return true;
    for (const Word& hh : hball) {
      if (hh.empty()) continue;
      if (!y(g->canon(w * hh))) {
        out = Verdict::no(r, g->format(w) + " . " + g->format(hh) +
                                 " leaves the set");
        return false;
      }
    }
    return true;
  };
  stream_ball(*g, r, vis);
  return out;
}

}  // namespace splitkit
