#pragma once

#include <string>
#include <vector>

#include "splitkit/splitting.hpp"

namespace splitkit {

enum class EdgeRelation {
  Equal,              // g1X = g2X
  Less,               // g1X subset of g2X
  Greater,            // g1X superset of g2X
  LessComplement,     // g1X subset of g2X*
  GreaterComplement,  // g1X superset of g2X*
  ComplementEqual,    // g1X = g2X*
  IncomparableAtDepth,
};

const char* edge_relation_name(EdgeRelation r);

struct EdgeOrderResult {
  EdgeRelation relation = EdgeRelation::IncomparableAtDepth;
  QuadrantPattern pattern;  // quadrants of (g1X, g2X)
};

// Exact tree-order comparison of the half-spaces g1X and g2X, computed from
// the normal form of g1^{-1} g2; never wrong and never depth-limited for
// translates of one splitting.
EdgeOrderResult edge_order(const Splitting& s, const Word& g1, const Word& g2);

// Truncated neighborhood of the base edge in the Bass-Serre tree. Vertices
// carry their coset address; per-vertex branching is truncated to transversal
// representatives of word length <= coset_radius.
struct TreeLocal {
  struct Vertex {
    Word address;     // vertex = address * (vertex group)
    int type = 0;     // amalgam: 0 = A, 1 = B; hnn: 0
    int depth = 0;
  };
  struct Edge {
    Word label;       // edge = label * (edge subgroup); base edge: identity
    int v_from = -1, v_to = -1;
    int depth = 0;
  };
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  int depth = 0, coset_radius = 0;
};

TreeLocal local_tree(const Splitting& s, int depth, int coset_radius);
std::string to_dot(const TreeLocal& t, const GroupPresentation& g,
                   const std::string& name);

// Oriented edge path between the base edge and h * (base edge): the edge
// labels crossed in order. Empty when h stabilizes the base edge.
std::vector<Word> edge_path(const Splitting& s, const Word& h);

// Tree distance between the vertices gA and g'A (amalgam: A-type vertices).
int vertex_distance(const Splitting& s, const Word& g1, const Word& g2);

// Quotient of the minimal actor-invariant subtree. For an actor fixing a
// vertex the graph has zero edges; for a hyperbolic cyclic actor it is a
// cycle whose length is the translation length.
struct QuotientGraph {
  int edge_count = 0;
  int vertex_count = 0;
  bool stabilized = false;
  int depth_used = 0;
  std::vector<std::string> vertex_labels;
  std::string note;
};

QuotientGraph minimal_subtree(const Splitting& target, const Subgroup& actor,
                              int depth);

}  // namespace splitkit
