#pragma once

#include <functional>
#include <string>
#include <vector>

#include "splitkit/crossing.hpp"
#include "splitkit/splitting.hpp"
#include "splitkit/verdict.hpp"

namespace splitkit {

// Finite partially ordered set with a free involution, the input of the
// tree-construction theorem.
struct PosetWithInvolution {
  int n = 0;
  std::vector<int> involution;     // index of the reversed element
  std::vector<std::vector<char>> leq;
  std::vector<std::string> labels;

  bool le(int a, int b) const { return leq[a][b] != 0; }
};

// condition 0: not a partial order; conditions 1..4 as in the theorem
struct PosetViolation {
  int condition = -1;
  std::string detail;
};

// Empty optional when all conditions hold.
std::optional<PosetViolation> validate_poset(const PosetWithInvolution& e);

struct AbstractTree {
  int num_vertices = 0;
  // per oriented edge: terminal vertex; the origin is the terminus of the
  // involuted edge
  std::vector<int> terminus;
  const PosetWithInvolution* poset = nullptr;
  int origin(int e) const { return terminus[poset->involution[e]]; }
};

// Requires a validated poset; the result is self-checked for tree shape.
AbstractTree build_tree(const PosetWithInvolution& e);

// Order induced by oriented paths: e <= f iff some oriented reduced path
// begins with e and ends with f.
std::vector<std::vector<char>> order_from_paths(const AbstractTree& t);

// Round trip: the derived order equals the input order.
bool round_trip_ok(const PosetWithInvolution& e);

// ---------------------------------------------------------------------------
// From splittings to posets and graphs of groups
// ---------------------------------------------------------------------------

class AssemblyError : public BadInput {
 public:
  using BadInput::BadInput;
};

struct HalfSpaceElement {
  int splitting_index = 0;
  Word translate;
  bool star = false;
  std::string label;
};

struct HalfSpacePoset {
  PosetWithInvolution poset;
  std::vector<HalfSpaceElement> elements;
};

struct AssemblyOptions {
  int radius = 6;
  int inum_radius = 8;
  CrossingThresholds thresholds;
  int conjugacy_agree_radius = 5;
  int conjugacy_search_radius = 3;
};

// The poset of half-space translates of pairwise-compatible splittings under
// "U <= V iff U n V* is empty or the only small set of the four". Throws
// AssemblyError naming a crossing coset when a pair has nonzero intersection
// number, and on unresolved smallness verdicts.
HalfSpacePoset poset_from_halfspaces(const std::vector<SplittingPtr>& splittings,
                                     const AssemblyOptions& opt);

struct GraphOfGroups {
  struct Edge {
    int from = 0, to = 0;
    int input_index = 0;          // which input splitting this edge realizes
    std::string edge_group;
    SplittingPtr splitting;       // class representative
    Word conjugator;              // input = representative conjugated by this
  };
  std::vector<Edge> edges;
  std::vector<std::string> vertex_labels;
  int vertex_count = 0;
  bool stabilized = false;
  int radius = 0;
  std::vector<SplittingPtr> inputs;
};

GraphOfGroups assemble_graph_of_groups(const std::vector<SplittingPtr>& inputs,
                                       const AssemblyOptions& opt);

// The splitting realized by edge i (conjugate of the class representative).
SplittingPtr collapse_edge(const GraphOfGroups& gog, int i);

// Verifies the half-space description {g : ge < e or g ebar < e} of the
// collapsed splitting against its standard set on the radius-r ball, plus
// conjugate-equivalence against the original input.
Verdict verify_collapse(const GraphOfGroups& gog, int i, int r);

}  // namespace splitkit
