#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "splitkit/presentation.hpp"
#include "splitkit/subgroup.hpp"
#include "splitkit/word.hpp"

using namespace splitkit;

namespace {

Word random_word(const GroupPresentation& g, std::mt19937& rng, int maxlen) {
  std::uniform_int_distribution<int> len(0, maxlen);
  std::uniform_int_distribution<int> gen(1, g.alphabet.size());
  std::uniform_int_distribution<int> sign(0, 1);
  Word w;
  int n = len(rng);
  for (int i = 0; i < n; ++i) {
    int gi = gen(rng);
    w.append(sign(rng) ? gi : -gi);
  }
  return w;
}

// brute-force least element of Hw over an explicit H-ball
Word brute_coset_min(const GroupPresentation& g, const std::vector<Word>& hball,
                     const Word& w) {
  Word best = g.canon(w);
  for (const Word& h : hball) {
    Word cand = g.mul(h, w);
    if (shortlex_less(cand, best)) best = cand;
  }
  return best;
}

}  // namespace

TEST_CASE("free_reduce examples") {
  auto f2 = GroupPresentation::free_group({"x", "y"});
  CHECK(f2->format(free_reduce(f2->parse("x x' y"))) == "y");
  CHECK(free_reduce(f2->parse("")).empty());
  CHECK(f2->format(free_reduce(f2->parse("x y y' x"))) == "x x");
  // idempotence on random words
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    Word w = random_word(*f2, rng, 12);
    CHECK(free_reduce(free_reduce(w)) == free_reduce(w));
  }
}

TEST_CASE("unknown generator symbol rejected") {
  auto f2 = GroupPresentation::free_group({"x", "y"});
  CHECK_THROWS_AS(f2->parse("x z"), BadInput);
}

TEST_CASE("word_equals across strategies") {
  auto f2 = GroupPresentation::free_group({"x", "y"});
  CHECK_FALSE(f2->equal(f2->parse("x y"), f2->parse("y x")));

  auto z2 = GroupPresentation::cyclic_table("a", 2);
  CHECK(z2->equal(z2->parse("a a a"), z2->parse("a")));

  auto g2 = GroupPresentation::from_relators({"a", "b", "c", "d"},
                                             {"a c b d a' c' b' d'"});
  CHECK(g2->is_identity(g2->parse("a c b d a' c' b' d'")));
  CHECK_FALSE(g2->is_identity(g2->parse("a c b d")));
}

TEST_CASE("word_equals is an equivalence and translation-invariant") {
  auto g = GroupPresentation::from_relators({"a", "b"},
                                            {"a a a a", "b b b b", "a a b' b'"});
  std::mt19937 rng(11);
  std::vector<Word> sample;
  for (int i = 0; i < 30; ++i) sample.push_back(random_word(*g, rng, 8));
  for (const Word& w : sample) CHECK(g->equal(w, w));
  for (int i = 0; i < 30; ++i) {
    Word a = sample[i % sample.size()], b = sample[(i * 7 + 3) % sample.size()];
    CHECK(g->equal(a, b) == g->equal(b, a));
    if (g->equal(a, b)) {
      Word t = random_word(*g, rng, 5);
      CHECK(g->equal(t * a, t * b));
      CHECK(g->equal(a * t, b * t));
    }
  }
}

TEST_CASE("knuth-bendix rejects when bounds hit") {
  KbOptions tight;
  tight.max_lhs_len = 10;
  tight.max_equations = 200;
  CHECK_THROWS_AS(GroupPresentation::from_relators(
                      {"a", "b", "c", "d"}, {"a b a' b' c d c' d'"}, tight),
                  BadInput);
}

TEST_CASE("canonical forms are shortlex-least on enumerated classes") {
  auto g = GroupPresentation::from_relators({"a", "b"}, {"a a", "b b"});
  // enumerate all words of length <= 6 and group them by canon; the canon
  // must be the shortlex-least member of every class it represents
  std::vector<Word> all;
  std::function<void(Word&, int)> rec = [&](Word& w, int depth) {
    all.push_back(w);
    if (depth == 6) return;
    for (int gi = 1; gi <= 2; ++gi)
      for (int s : {gi, -gi}) {
        w.append(static_cast<Letter>(s));
        rec(w, depth + 1);
        w.letters.pop_back();
      }
  };
  Word w;
  rec(w, 0);
  for (const Word& u : all) {
    Word c = g->canon(u);
    CHECK(!shortlex_less(u, c));
    CHECK(g->equal(u, c));
  }
}

TEST_CASE("subgroup_ball examples") {
  auto z = GroupPresentation::free_group({"t"});
  auto triv = make_trivial_subgroup(z);
  CHECK(triv->ball(5).size() == 1);

  auto zt = make_cyclic_subgroup(z, z->parse("t"));
  auto b2 = zt->ball(2);
  REQUIRE(b2.size() == 5);  // t^-2 .. t^2
  CHECK(zt->contains(z->parse("t t t")));

  auto f2 = GroupPresentation::free_group({"x", "y"});
  auto hxy = make_cyclic_subgroup(f2, f2->parse("x y"));
  auto b4 = hxy->ball(4);
  // oracle: direct power enumeration
  std::vector<Word> expect;
  for (int n = -2; n <= 2; ++n) expect.push_back(f2->canon(f2->parse("x y").pow(n)));
  std::sort(expect.begin(), expect.end(), shortlex_less);
  REQUIRE(b4.size() == expect.size());
  for (size_t i = 0; i < b4.size(); ++i) CHECK(b4[i] == expect[i]);
  CHECK_FALSE(hxy->contains(f2->parse("x")));
  CHECK(hxy->contains(f2->parse("x y x y")));
}

TEST_CASE("finite-enumeration subgroup closure validated") {
  auto g = GroupPresentation::from_relators({"a", "b"},
                                            {"a a a a", "b b b b", "a a b' b'"});
  auto h = make_finite_subgroup(g, {g->parse(""), g->parse("a a")});
  CHECK(h->contains(g->parse("b b")));
  CHECK_FALSE(h->contains(g->parse("a")));
  CHECK_THROWS_AS(make_finite_subgroup(g, {g->parse(""), g->parse("a")}),
                  BadInput);
}

TEST_CASE("coset_canonical examples and invariance") {
  auto f2 = GroupPresentation::free_group({"x", "y"});
  auto triv = make_trivial_subgroup(f2);
  CHECK(triv->coset_canonical(f2->parse("x x' y")) == f2->parse("y"));

  auto z = GroupPresentation::free_group({"t"});
  auto zt = make_cyclic_subgroup(z, z->parse("t"));
  CHECK(zt->coset_canonical(z->parse("t t t")).empty());

  auto hx = make_cyclic_subgroup(f2, f2->parse("x"));
  CHECK(f2->format(hx->coset_canonical(f2->parse("x y"))) == "y");

  // invariance: canonical(w) == canonical(h w), and idempotence; brute oracle
  std::mt19937 rng(3);
  auto hball = hx->ball(8);
  for (int i = 0; i < 200; ++i) {
    Word w = random_word(*f2, rng, 6);
    Word c = hx->coset_canonical(w);
    CHECK(c == hx->coset_canonical(c));
    for (int k = 0; k < 3; ++k) {
      Word h = hball[rng() % hball.size()];
      CHECK(hx->coset_canonical(f2->canon(h * w)) == c);
    }
    CHECK(c == brute_coset_min(*f2, hball, w));
  }
}

TEST_CASE("coset_canonical in a rewriting group") {
  auto g2 = GroupPresentation::from_relators({"a", "b", "c", "d"},
                                             {"a c b d a' c' b' d'"});
  auto h = make_cyclic_subgroup(g2, g2->parse("d b c"));
  auto hball = h->ball(9);
  CHECK(hball.size() == 7);  // powers -3..3 have lengths 0,3,6,9
  std::mt19937 rng(5);
  for (int i = 0; i < 60; ++i) {
    Word w = random_word(*g2, rng, 5);
    Word c = h->coset_canonical(w);
    CHECK(c == h->coset_canonical(c));
    CHECK(c == brute_coset_min(*g2, hball, w));
  }
}

TEST_CASE("cyclic subgroup in table group has finite order") {
  auto z4 = GroupPresentation::cyclic_table("a", 4);
  auto h = make_cyclic_subgroup(z4, z4->parse("a"));
  CHECK(h->contains(z4->parse("a a a")));
  CHECK(h->ball(10).size() == 4);
}
