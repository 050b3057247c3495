#include "splitkit/surface_oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "splitkit/cayley.hpp"

namespace splitkit {

Slope normalize_slope(Slope s) {
  if (s.p < 0 || (s.p == 0 && s.q < 0)) {
    s.p = -s.p;
    s.q = -s.q;
  }
  return s;
}

bool valid_slope(Slope s) {
  if (s.p == 0 && s.q == 0) return false;
  return std::gcd(std::abs(s.p), std::abs(s.q)) == 1;
}

SlopeContext make_slope_context() {
  SlopeContext ctx;
  ctx.f2 = GroupPresentation::free_group({"x", "y"});
  Splitting::HnnSpec spec;
  spec.base_letters = {"x"};
  spec.stable_letter = "y";
  spec.h0 = make_cyclic_subgroup(ctx.f2, ctx.f2->parse("x"));
  spec.h1 = make_cyclic_subgroup(ctx.f2, ctx.f2->parse("y' x y"));
  spec.iso_images = {ctx.f2->parse("y' x y")};
  ctx.base = Splitting::make_hnn(ctx.f2, spec);
  return ctx;
}

namespace {

struct Mat {
  long a = 1, b = 0, c = 0, d = 1;  // column-major action on (ex, ey)
  std::array<long, 2> apply(std::array<long, 2> v) const {
    return {a * v[0] + b * v[1], c * v[0] + d * v[1]};
  }
};

}  // namespace

Automorphism slope_automorphism(const SlopeContext& ctx, Slope s) {
  s = normalize_slope(s);
  if (!valid_slope(s)) throw BadInput("invalid slope");
  const auto& g = ctx.f2;
  Word x = g->parse("x"), y = g->parse("y");
  struct Gen {
    const char* name;
    Automorphism phi;
    Mat m;
  };
  auto mk = [&](const std::string& ix, const std::string& iy,
                const std::string& jx, const std::string& jy, Mat m) {
    return Gen{"", Automorphism::from_images(
                       g, {g->parse(ix), g->parse(iy)},
                       {g->parse(jx), g->parse(jy)}),
               m};
  };
  // Nielsen moves with their abelianized matrices (basis: exponent sums)
  std::vector<Gen> gens;
  gens.push_back(mk("x y", "y", "x y'", "y", {1, 0, 1, 1}));    // x -> xy
  gens.push_back(mk("x y'", "y", "x y", "y", {1, 0, -1, 1}));   // x -> xy'
  gens.push_back(mk("x", "y x", "x", "y x'", {1, 1, 0, 1}));    // y -> yx
  gens.push_back(mk("x", "y x'", "x", "y x", {1, -1, 0, 1}));   // y -> yx'
  gens.push_back(mk("y", "x", "y", "x", {0, 1, 1, 0}));         // swap
  gens.push_back(mk("x'", "y", "x'", "y", {-1, 0, 0, 1}));      // invert x

  // slope (p, q) corresponds to the primitive class with exponent vector
  // (q, p); slope (0,1) is x with vector (1, 0)
  std::array<long, 2> target{s.q, s.p};
  std::array<long, 2> start{1, 0};
  if (target == start || (target[0] == -start[0] && target[1] == -start[1]))
    return Automorphism::identity(g);
  long bound = std::abs(s.p) + std::abs(s.q) + 2;
  std::map<std::array<long, 2>, std::pair<std::array<long, 2>, int>> parent;
  std::deque<std::array<long, 2>> queue{start};
  parent[start] = {start, -1};
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    if (v == target ||
        (v[0] == -target[0] && v[1] == -target[1]))
      break;
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      auto w = gens[gi].m.apply(v);
      if (std::abs(w[0]) > bound || std::abs(w[1]) > bound) continue;
      if (parent.count(w)) continue;
      parent[w] = {v, static_cast<int>(gi)};
      queue.push_back(w);
    }
  }
  std::array<long, 2> found;
  if (parent.count(target))
    found = target;
  else if (parent.count({-target[0], -target[1]}))
    found = {-target[0], -target[1]};
  else
    throw BadInput("slope automorphism search failed");
  // compose along the path, outermost last
  std::vector<int> moves;
  for (auto v = found; parent[v].second >= 0; v = parent[v].first)
    moves.push_back(parent[v].second);
  Automorphism phi = Automorphism::identity(g);
  for (auto it = moves.rbegin(); it != moves.rend(); ++it)
    phi = gens[*it].phi.compose(phi);
  return phi;
}

SplittingPtr slope_splitting(const SlopeContext& ctx, Slope s) {
  Automorphism phi = slope_automorphism(ctx, s);
  return ctx.base->transported(phi);
}

Word slope_primitive_word(const SlopeContext& ctx, Slope s) {
  return slope_automorphism(ctx, s).apply(ctx.f2->parse("x"));
}

long slope_intersection(Slope a, Slope b) {
  return std::abs(a.p * b.q - a.q * b.p);
}

// ---------------------------------------------------------------------------
// Independent brute-force crossing counter
// ---------------------------------------------------------------------------

namespace {

// plainest windowed two-sided orbit minimum; deliberately separate from the
// crossing module's keying
Word naive_double_coset_min(const GroupPresentation& g,
                            const std::vector<Word>& kball,
                            const std::vector<Word>& hball, const Word& w) {
  Word best = g.canon(w);
  for (const Word& k : kball)
    for (const Word& h : hball) {
      Word cand = g.canon(k * w * h);
      if (shortlex_less(cand, best)) best = cand;
    }
  return best;
}

std::vector<Word> subgroup_window(const GroupPresentation& g,
                                  const Subgroup& h, int r) {
  auto ball = h.ball(2 * r + 4);
  if (ball.size() > 400) ball.resize(400);
  (void)g;
  return ball;
}

}  // namespace

long brute_force_crossing_count(const Splitting& s, const Splitting& t, int r) {
  GroupPtr g = s.group_ptr();
  auto kball = subgroup_window(*g, *t.edge_subgroup(), r);
  auto hball = subgroup_window(*g, *s.edge_subgroup(), r);
  auto words = group_ball(*g, r);
  // sides of every ball element under both splittings
  std::vector<char> side_t(words.size());
  {
    auto cur = t.cursor();
    size_t idx = 0;
    BallVisitor vis;
    vis.enter = [&](const Word& w, int lenw) {
      if (lenw > 0) cur.push(w.letters.back());
      side_t[idx++] = cur.side_X() ? 1 : 0;
      return true;
    };
    vis.leave = [&]() {
      if (cur.depth() > 0) cur.pop();
    };
    stream_ball(*g, r, vis);
  }
  // double-coset grouping
  std::unordered_map<std::string, int> coset_of;
  std::vector<Word> reps;
  std::vector<int> coset_id(words.size());
  for (size_t i = 0; i < words.size(); ++i) {
    Word key = naive_double_coset_min(*g, kball, hball, words[i]);
    auto [it, fresh] =
        coset_of.emplace(word_key(key), static_cast<int>(reps.size()));
    if (fresh) reps.push_back(key);
    coset_id[i] = it->second;
  }
  // projection to K\G for the quadrant measures
  std::unordered_map<std::string, int> kproj_ids;
  std::vector<int> kproj(words.size());
  for (size_t i = 0; i < words.size(); ++i) {
    Word key = t.edge_subgroup()->coset_canonical(words[i]);
    auto [it, fresh] = kproj_ids.emplace(word_key(key),
                                         static_cast<int>(kproj_ids.size()));
    kproj[i] = it->second;
  }
  long count = 0;
  for (size_t c = 0; c < reps.size(); ++c) {
    const Word& rep = reps[c];
    // quadrant projections of (rep X_s, X_t) at radii r-2, r-1, r
    std::vector<int8_t> minlen(kproj_ids.size() * 4,
                               std::numeric_limits<int8_t>::max());
    auto cur = s.cursor(g->canon(rep.inverse()));
    size_t idx = 0;
    BallVisitor vis;
    vis.enter = [&](const Word& w, int lenw) {
      if (lenw > 0) cur.push(w.letters.back());
      int qi = (cur.side_X() ? 0 : 2) + (side_t[idx] ? 0 : 1);
      size_t slot = static_cast<size_t>(kproj[idx]) * 4 + qi;
      if (lenw < minlen[slot]) minlen[slot] = static_cast<int8_t>(lenw);
      ++idx;
      return true;
    };
    vis.leave = [&]() {
      if (cur.depth() > 0) cur.pop();
    };
    stream_ball(*g, r, vis);
    long counts[4][3] = {};
    for (size_t kc = 0; kc < kproj_ids.size(); ++kc)
      for (int qi = 0; qi < 4; ++qi) {
        int8_t m = minlen[kc * 4 + qi];
        if (m == std::numeric_limits<int8_t>::max()) continue;
        for (int k3 = 0; k3 < 3; ++k3)
          if (m <= r - 2 + k3) counts[qi][k3]++;
      }
    bool all_grew = true;
    for (int qi = 0; qi < 4; ++qi)
      if (!(counts[qi][0] < counts[qi][1] && counts[qi][1] < counts[qi][2]))
        all_grew = false;
    if (all_grew) ++count;
  }
  return count;
}

}  // namespace splitkit
