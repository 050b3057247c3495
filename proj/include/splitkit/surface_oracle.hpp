#pragma once

#include "splitkit/splitting.hpp"

namespace splitkit {

// A slope on the punctured torus: coprime (p, q), with (p, q) ~ (-p, -q).
struct Slope {
  long p = 0, q = 1;
};

Slope normalize_slope(Slope s);
bool valid_slope(Slope s);

// The standard punctured-torus group F2 = <x, y> with the base splitting
// over <x> (stable letter y). Slope (0,1) is the base.
struct SlopeContext {
  GroupPtr f2;
  SplittingPtr base;  // the slope (0,1) splitting
};
SlopeContext make_slope_context();

// Automorphism of F2 carrying slope (0,1) to `s` (found by matrix BFS over
// Nielsen generators).
Automorphism slope_automorphism(const SlopeContext& ctx, Slope s);

// The splitting of F2 over the cyclic subgroup of the slope's primitive word.
SplittingPtr slope_splitting(const SlopeContext& ctx, Slope s);
Word slope_primitive_word(const SlopeContext& ctx, Slope s);

// |pa qb - qa pb|
long slope_intersection(Slope a, Slope b);

// Exhaustive double-coset crossing counter. Groups ball elements into double
// cosets by windowed two-sided multiplication, measures all four quadrant
// projections per coset, and counts cosets whose projections grew at the
// last two radius increments. Shares no verdict logic with the crossing
// module.
long brute_force_crossing_count(const Splitting& s, const Splitting& t, int r);

}  // namespace splitkit
