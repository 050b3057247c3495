#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "splitkit/crossing.hpp"

using namespace splitkit;

namespace {

struct Fixture {
  GroupPtr z, f2, f3;
  SplittingPtr z_split, slope01, slope10, arc, f3a, f3b;
};

Fixture make_fixture() {
  Fixture f;
  f.z = GroupPresentation::free_group({"t"});
  {
    Splitting::HnnSpec s;
    s.stable_letter = "t";
    s.h0 = make_trivial_subgroup(f.z);
    s.h1 = make_trivial_subgroup(f.z);
    f.z_split = Splitting::make_hnn(f.z, s);
  }
  f.f2 = GroupPresentation::free_group({"x", "y"});
  {
    Splitting::HnnSpec s;
    s.base_letters = {"x"};
    s.stable_letter = "y";
    s.h0 = make_cyclic_subgroup(f.f2, f.f2->parse("x"));
    s.h1 = make_cyclic_subgroup(f.f2, f.f2->parse("y' x y"));
    s.iso_images = {f.f2->parse("y' x y")};
    f.slope01 = Splitting::make_hnn(f.f2, s);
    auto swap = Automorphism::from_images(
        f.f2, {f.f2->parse("y"), f.f2->parse("x")},
        {f.f2->parse("y"), f.f2->parse("x")});
    f.slope10 = f.slope01->transported(swap);
    // the arc dual to the slope(0,1) curve: cutting along it leaves the
    // annulus around y, so the base is <y> and the stable letter is x
    Splitting::HnnSpec a;
    a.base_letters = {"y"};
    a.stable_letter = "x";
    a.h0 = make_trivial_subgroup(f.f2);
    a.h1 = make_trivial_subgroup(f.f2);
    f.arc = Splitting::make_hnn(f.f2, a);
  }
  f.f3 = GroupPresentation::free_group({"x", "y", "z"});
  {
    Splitting::AmalgamSpec s;
    s.letters_a = {"x"};
    s.letters_b = {"y", "z"};
    s.edge = make_trivial_subgroup(f.f3);
    f.f3a = Splitting::make_amalgam(f.f3, s);
    Splitting::AmalgamSpec s2;
    s2.letters_a = {"x", "y"};
    s2.letters_b = {"z"};
    s2.edge = make_trivial_subgroup(f.f3);
    f.f3b = Splitting::make_amalgam(f.f3, s2);
  }
  return f;
}

const Fixture& fx() {
  static Fixture f = make_fixture();
  return f;
}

}  // namespace

TEST_CASE("double coset representatives") {
  auto& f = fx();
  // H = K = G (cyclic generating Z): a single double coset
  auto whole = make_cyclic_subgroup(f.z, f.z->parse("t"));
  auto reps1 = double_coset_reps(f.z, *whole, *whole, 3);
  REQUIRE(reps1.size() == 1);
  CHECK(reps1[0].empty());

  // trivial subgroups in Z: every element is its own class
  auto triv = make_trivial_subgroup(f.z);
  auto reps2 = double_coset_reps(f.z, *triv, *triv, 2);
  CHECK(reps2.size() == 5);

  // F2 with H = K = <x>: dedupe under two-sided x-multiplication; oracle by
  // brute-force union-find over products h g k
  auto hx = make_cyclic_subgroup(f.f2, f.f2->parse("x"));
  auto reps3 = double_coset_reps(f.f2, *hx, *hx, 2);
  auto words = group_ball(*f.f2, 2);
  auto hball = hx->ball(8);
  std::vector<int> parent(words.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  std::unordered_map<std::string, int> index;
  for (size_t i = 0; i < words.size(); ++i) index[word_key(words[i])] = static_cast<int>(i);
  for (size_t i = 0; i < words.size(); ++i)
    for (const Word& h : hball)
      for (const Word& k : hball) {
        Word p = f.f2->canon(h * words[i] * k);
        auto it = index.find(word_key(p));
        if (it != index.end()) parent[find(static_cast<int>(i))] = find(it->second);
      }
  std::set<int> classes;
  for (size_t i = 0; i < words.size(); ++i) classes.insert(find(static_cast<int>(i)));
  CHECK(reps3.size() == classes.size());

  // key constancy under sampled two-sided multiplication
  std::mt19937 rng(9);
  for (const Word& w : words) {
    Word key = double_coset_key(f.f2, *hx, *hx, w);
    for (int i = 0; i < 4; ++i) {
      Word h = hball[rng() % hball.size()], k = hball[rng() % hball.size()];
      CHECK(double_coset_key(f.f2, *hx, *hx, f.f2->canon(h * w * k)) == key);
    }
  }
}

TEST_CASE("smallness verdict examples in Z") {
  auto& f = fx();
  auto triv = make_trivial_subgroup(f.z);
  auto in_x = [&](const Word& w) { return f.z_split->side_X(w); };
  auto in_tx = [&](const Word& w) {
    return f.z_split->half_space_member(f.z->parse("t"), false, w);
  };
  auto in_tx_star = [&](const Word& w) { return !in_tx(w); };
  auto in_x_star = [&](const Word& w) { return !in_x(w); };
  // X n X* is empty
  CHECK(smallness_verdict(f.z, in_x, in_x_star, *triv, 8).certified_true());
  // X n tX* = {t}
  CHECK(smallness_verdict(f.z, in_x, in_tx_star, *triv, 8).certified_true());
  // X n tX = {t^n : n >= 2} grows linearly
  CHECK(smallness_verdict(f.z, in_x, in_tx, *triv, 8).certified_false());
}

TEST_CASE("crossing verdicts") {
  auto& f = fx();
  // translates of one splitting never cross
  HalfSpace x01{f.slope01, Word{}, StdVariant::X};
  HalfSpace x01t{f.slope01, f.f2->parse("x y"), StdVariant::X};
  CHECK(crosses(x01, x01t, 8).certified_false());
  CHECK(crosses(x01, x01, 8).certified_false());

  // slope(0,1) vs slope(1,0) cross at the identity coset
  HalfSpace y10{f.slope10, Word{}, StdVariant::X};
  CHECK(crosses(x01, y10, 9).certified_true());

  // the two F3 splittings are compatible: nothing crosses (exact route)
  HalfSpace a{f.f3a, Word{}, StdVariant::X};
  HalfSpace b{f.f3b, Word{}, StdVariant::X};
  CHECK(crosses(a, b, 6).certified_false());
  for (const Word& g : group_ball(*f.f3, 3)) {
    HalfSpace ag{f.f3a, g, StdVariant::X};
    CHECK(crosses(ag, b, 6).certified_false());
  }
}

TEST_CASE("strong crossing and the curve/arc asymmetry") {
  auto& f = fx();
  HalfSpace curve{f.slope01, Word{}, StdVariant::X};
  HalfSpace arc{f.arc, Word{}, StdVariant::X};
  // the curve crosses the arc strongly, the arc does not cross the curve
  // strongly: its coboundary is finite
  Verdict c_a = crosses_strongly(curve, arc, 9);
  CHECK(c_a.certified_true());
  Verdict a_c = crosses_strongly(arc, curve, 9);
  CHECK(a_c.certified_false());
  // contrapositive: non-crossing translates never cross strongly
  HalfSpace x01t{f.slope01, f.f2->parse("x y"), StdVariant::X};
  CHECK(crosses_strongly(curve, x01t, 8).certified_false());
  // slope pair crosses strongly both ways
  HalfSpace y10{f.slope10, Word{}, StdVariant::X};
  CHECK(crosses_strongly(curve, y10, 9).certified_true());
  CHECK(crosses_strongly(y10, curve, 9).certified_true());
}

TEST_CASE("intersection numbers: self, slope pair, compatible pair") {
  auto& f = fx();
  for (auto sp : {f.z_split, f.slope01, f.arc, f.f3a}) {
    CountReport self = intersection_number(*sp, *sp, 6);
    CHECK(self.count == 0);
    CHECK(self.exact);
  }
  CountReport slope_pair = intersection_number(*f.slope01, *f.slope10, 9);
  CHECK(slope_pair.count == 1);
  CHECK(slope_pair.exact);
  CountReport rev = intersection_number(*f.slope10, *f.slope01, 9);
  CHECK(rev.count == 1);  // symmetry

  CountReport compat = intersection_number(*f.f3a, *f.f3b, 7);
  CHECK(compat.count == 0);
  CHECK(compat.exact);
}

TEST_CASE("intersection number is conjugation and variant invariant") {
  auto& f = fx();
  // conjugating either input leaves the slope-pair count at 1
  for (const char* c : {"x", "y", "x y", "y' x"}) {
    auto conj = f.slope10->conjugated(f.f2->parse(c));
    CountReport r = intersection_number(*f.slope01, *conj, 9);
    CHECK(r.count == 1);
  }
  // all 16 variant choices agree on the F3 pair
  for (StdVariant vs : {StdVariant::X, StdVariant::XunionH, StdVariant::Xstar,
                        StdVariant::XstarMinusH})
    for (StdVariant vt : {StdVariant::X, StdVariant::XunionH, StdVariant::Xstar,
                          StdVariant::XstarMinusH}) {
      PairOptions opt;
      opt.variant_s = vs;
      opt.variant_t = vt;
      CountReport r = intersection_number(*f.f3a, *f.f3b, 6, opt);
      CHECK(r.count == 0);
      CHECK(r.exact);
    }
}

TEST_CASE("strong intersection numbers") {
  auto& f = fx();
  CountReport self = strong_intersection_number(*f.slope01, *f.slope01, 6);
  CHECK(self.count == 0);
  CHECK(self.exact);
  CountReport slope_pair = strong_intersection_number(*f.slope01, *f.slope10, 9);
  CHECK(slope_pair.count == 1);
  CountReport weak_pair = intersection_number(*f.slope01, *f.slope10, 9);
  CHECK(slope_pair.count <= weak_pair.count);
  // curve/arc: one direction only
  CountReport ca = strong_intersection_number(*f.slope01, *f.arc, 9);
  CHECK(ca.count == 1);
  CountReport ac = strong_intersection_number(*f.arc, *f.slope01, 9);
  CHECK(ac.count == 0);
  // ordinary intersection number of the pair is 1 in both orders
  CHECK(intersection_number(*f.slope01, *f.arc, 9).count == 1);
  CHECK(intersection_number(*f.arc, *f.slope01, 9).count == 1);
}

TEST_CASE("two-sided invariance") {
  auto& f = fx();
  auto triv = make_trivial_subgroup(f.z);
  CHECK(two_sided_invariance_check(
            f.z, [&](const Word& w) { return f.z_split->side_X(w); }, *triv, 6)
            .certified_true());

  auto hx = make_cyclic_subgroup(f.f2, f.f2->parse("x"));
  auto in_x = [&](const Word& w) { return f.slope01->side_X(w); };
  CHECK(two_sided_invariance_check(f.f2, in_x, *hx, 7).certified_true());
  // perturb the set by one element: a witness must appear
  Word bad = f.f2->parse("y x");
  auto perturbed = [&](const Word& w) {
    if (f.f2->canon(w) == f.f2->canon(bad)) return !in_x(w);
    return in_x(w);
  };
  Verdict v = two_sided_invariance_check(f.f2, perturbed, *hx, 7);
  CHECK(v.certified_false());
  CHECK(v.witness.has_value());
}
