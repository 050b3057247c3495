#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "splitkit/crossing.hpp"
#include "splitkit/surface_oracle.hpp"

using namespace splitkit;

namespace {
const SlopeContext& ctx() {
  static SlopeContext c = make_slope_context();
  return c;
}
std::array<long, 2> ab_vector(const Word& w) {
  long ex = 0, ey = 0;
  for (Letter l : w.letters) {
    if (l == 1) ++ex;
    if (l == -1) --ex;
    if (l == 2) ++ey;
    if (l == -2) --ey;
  }
  return {ex, ey};
}
}  // namespace

TEST_CASE("slope validity and normalization") {
  CHECK(valid_slope({0, 1}));
  CHECK(valid_slope({1, 0}));
  CHECK(valid_slope({2, 3}));
  CHECK_FALSE(valid_slope({0, 0}));
  CHECK_FALSE(valid_slope({2, 4}));
  Slope n = normalize_slope({-1, -2});
  CHECK(n.p == 1);
  CHECK(n.q == 2);
}

TEST_CASE("slope splittings carry the right primitive words") {
  // base: slope (0,1) over <x>
  Word p01 = slope_primitive_word(ctx(), {0, 1});
  CHECK(ctx().f2->format(p01) == "x");
  // slope (1,0): the swap image, over <y>
  Word p10 = slope_primitive_word(ctx(), {1, 0});
  auto v10 = ab_vector(p10);
  CHECK(v10[0] == 0);
  CHECK(std::abs(v10[1]) == 1);
  // slope (1,1): over a conjugate of <x y>
  Word p11 = slope_primitive_word(ctx(), {1, 1});
  auto v11 = ab_vector(p11);
  CHECK(std::abs(v11[0] + v11[1]) == 2);
  CHECK(v11[0] * v11[1] == 1);
  // general: exponent vector of the primitive word of (p, q) is +-(q, p)
  for (long p = -3; p <= 3; ++p)
    for (long q = -3; q <= 3; ++q) {
      if (!valid_slope({p, q})) continue;
      Word w = slope_primitive_word(ctx(), {p, q});
      auto v = ab_vector(w);
      bool match = (v[0] == q && v[1] == p) || (v[0] == -q && v[1] == -p);
      CHECK(match);
    }
}

TEST_CASE("slope splittings validate") {
  for (Slope s : {Slope{0, 1}, Slope{1, 0}, Slope{1, 1}, Slope{1, -1},
                  Slope{1, 2}, Slope{2, 1}}) {
    auto sp = slope_splitting(ctx(), s);
    CHECK(sp->kind() == Splitting::Kind::Hnn);
    // standard set is a genuine side: both sides inhabited on a small ball
    int in = 0, out = 0;
    for (const Word& w : group_ball(*ctx().f2, 4))
      (sp->side_X(w) ? in : out)++;
    CHECK(in > 0);
    CHECK(out > 0);
  }
  CHECK_THROWS_AS(slope_splitting(ctx(), {2, 4}), BadInput);
}

TEST_CASE("determinant formula") {
  CHECK(slope_intersection({0, 1}, {1, 0}) == 1);
  CHECK(slope_intersection({1, 1}, {1, -1}) == 2);
  CHECK(slope_intersection({1, 2}, {1, 2}) == 0);
  // automorphism invariance: determinant +-1 integer maps preserve it
  long m[2][2] = {{2, 1}, {1, 1}};
  auto apply = [&](Slope s) {
    return Slope{m[0][0] * s.p + m[0][1] * s.q, m[1][0] * s.p + m[1][1] * s.q};
  };
  for (Slope a : {Slope{0, 1}, Slope{1, 2}, Slope{1, -1}})
    for (Slope b : {Slope{1, 0}, Slope{1, 1}, Slope{2, 1}})
      CHECK(slope_intersection(apply(a), apply(b)) == slope_intersection(a, b));
}

TEST_CASE("brute force counter on small cases") {
  auto s01 = slope_splitting(ctx(), {0, 1});
  auto s10 = slope_splitting(ctx(), {1, 0});
  CHECK(brute_force_crossing_count(*s01, *s01, 7) == 0);
  CHECK(brute_force_crossing_count(*s01, *s10, 8) == 1);

  auto f3 = GroupPresentation::free_group({"x", "y", "z"});
  Splitting::AmalgamSpec s1;
  s1.letters_a = {"x"};
  s1.letters_b = {"y", "z"};
  s1.edge = make_trivial_subgroup(f3);
  auto f3a = Splitting::make_amalgam(f3, s1);
  Splitting::AmalgamSpec s2;
  s2.letters_a = {"x", "y"};
  s2.letters_b = {"z"};
  s2.edge = make_trivial_subgroup(f3);
  auto f3b = Splitting::make_amalgam(f3, s2);
  CHECK(brute_force_crossing_count(*f3a, *f3b, 6) == 0);
}

TEST_CASE("oracle triangle on small slope pairs") {
  std::vector<Slope> slopes = {{0, 1}, {1, 0}, {1, 1}, {1, -1}};
  for (size_t i = 0; i < slopes.size(); ++i)
    for (size_t j = i + 1; j < slopes.size(); ++j) {
      long det = slope_intersection(slopes[i], slopes[j]);
      auto si = slope_splitting(ctx(), slopes[i]);
      auto sj = slope_splitting(ctx(), slopes[j]);
      CountReport lib;
      for (int r = 6; r <= 10; r += 2) {
        lib = intersection_number(*si, *sj, r);
        if (lib.exact) break;
      }
      CHECK(lib.exact);
      CHECK(lib.count == det);
      long brute = brute_force_crossing_count(*si, *sj, 8);
      CHECK(brute == det);
    }
}
