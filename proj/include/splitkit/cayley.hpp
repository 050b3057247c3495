#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "splitkit/subgroup.hpp"
#include "splitkit/verdict.hpp"

namespace splitkit {

// Radius-truncated Cayley graph: vertices are canonical words of length <= r,
// edges are (vertex, generator) pairs with both ends in the ball.
struct CayleyBall {
  GroupPtr group;
  int radius = 0;
  std::vector<Word> vertices;                       // shortlex-BFS order
  std::unordered_map<std::string, int> index;       // word_key -> vertex id
  // edge (u, l, v): u * l = v, stored once with u < v in discovery order
  struct Edge {
    int from, to;
    Letter label;
  };
  std::vector<Edge> edges;

  int vertex_of(const Word& w) const;  // -1 when outside
  size_t size() const { return vertices.size(); }
};

struct BallBudget {
  size_t max_vertices = 20'000'000;
};

// All canonical words of length <= r. Throws on budget exceeded.
CayleyBall ball(GroupPtr g, int r, const BallBudget& budget = {});
std::vector<Word> group_ball(const GroupPresentation& g, int r,
                             size_t max_count = SIZE_MAX);

// Streaming depth-first enumeration of canonical words of length <= r.
// enter(w, len) is called once per element in prefix order; when it returns
// false the subtree below w is skipped; leave() unwinds. Single elements are
// never repeated: the canonical-word language is prefix-closed for the three
// strategies.
struct BallVisitor {
  std::function<bool(const Word&, int)> enter;
  std::function<void()> leave;
};
void stream_ball(const GroupPresentation& g, int r, const BallVisitor& v);

// Quotient graph H\Gamma truncated at radius r: vertices are canonical coset
// representatives of all words of length <= r.
struct QuotientBall {
  GroupPtr group;
  SubgroupPtr subgroup;
  int radius = 0;
  std::vector<Word> vertices;  // coset canonicals
  std::unordered_map<std::string, int> index;
  struct Edge {
    int from, to;
    Letter label;
  };
  std::vector<Edge> edges;
  int vertex_of_coset(const Word& w) const;
  size_t size() const { return vertices.size(); }
};

QuotientBall quotient_ball(GroupPtr g, SubgroupPtr h, int r,
                           const BallBudget& budget = {});

// Edges of a ball with exactly one endpoint inside the indicated set.
struct EdgeCut {
  std::vector<int> edge_ids;  // indices into ball.edges
};
EdgeCut coboundary(const CayleyBall& b,
                   const std::function<bool(const Word&)>& indicator);
EdgeCut coboundary(const QuotientBall& b,
                   const std::function<bool(const Word&)>& indicator);

// Cohen's criterion at finite radius: CertifiedTrue when the projected
// coboundary in H\Gamma is identical at radii r-2, r-1, r; never
// CertifiedFalse (finiteness is not refutable at finite radius).
Verdict almost_invariance_verdict(GroupPtr g, SubgroupPtr h,
                                  const std::function<bool(const Word&)>& indicator,
                                  int r);

struct EndsEstimate {
  enum class Value { Zero, One, Two, Many } value = Value::One;
  int certified_radius = 0;
  bool stabilized = false;
};
const char* ends_value_name(EndsEstimate::Value v);

// Counts unbounded components of the quotient ball minus its radius-(r/2)
// core, with a three-radius stabilization rule.
EndsEstimate estimate_ends(GroupPtr g, SubgroupPtr h, int r);

// Deterministic DOT emission.
std::string to_dot(const CayleyBall& b, const std::string& name);
std::string to_dot(const QuotientBall& b, const std::string& name);

}  // namespace splitkit
