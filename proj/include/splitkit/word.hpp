#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace splitkit {

// A letter is a signed generator index: +k for generator k, -k for its
// inverse (1-based, so 0 never appears).
using Letter = int32_t;

inline Letter inverse(Letter l) { return -l; }

// Words are plain letter sequences over some alphabet. Reduction and
// canonical forms live in GroupPresentation; a Word by itself is free-monoid
// data.
struct Word {
  std::vector<Letter> letters;

  Word() = default;
  explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

  bool empty() const { return letters.empty(); }
  size_t size() const { return letters.size(); }
  Letter operator[](size_t i) const { return letters[i]; }

  Word inverse() const {
    Word r;
    r.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
      r.letters.push_back(-*it);
    return r;
  }

  Word& append(Letter l) {
    letters.push_back(l);
    return *this;
  }

  Word& append(const Word& w) {
    letters.insert(letters.end(), w.letters.begin(), w.letters.end());
    return *this;
  }

  friend Word operator*(const Word& a, const Word& b) {
    Word r = a;
    r.append(b);
    return r;
  }

  Word pow(int n) const {
    Word base = n >= 0 ? *this : inverse();
    Word r;
    int k = n >= 0 ? n : -n;
    for (int i = 0; i < k; ++i) r.append(base);
    return r;
  }

  bool operator==(const Word& o) const { return letters == o.letters; }
  bool operator!=(const Word& o) const { return letters != o.letters; }
};

// Rank used for the shortlex order: generators in declared order, each
// generator immediately followed by its inverse (a < a' < b < b' < ...).
inline int letter_rank(Letter l) {
  int g = l > 0 ? l : -l;
  return 2 * (g - 1) + (l < 0 ? 1 : 0);
}

// Shortlex: length first, then lexicographic by letter_rank.
inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i) {
    int ra = letter_rank(a[i]), rb = letter_rank(b[i]);
    if (ra != rb) return ra < rb;
  }
  return false;
}

// Free reduction: delete adjacent inverse pairs until none remain.
Word free_reduce(const Word& w);

// Cyclic reduction in the free group: returns (u, c) with w = u c u^{-1}
// freely and c cyclically reduced.
struct CyclicForm {
  Word conjugator;
  Word core;
};
CyclicForm cyclic_reduce(const Word& w);

// Packed key for hashing words.
std::string word_key(const Word& w);

}  // namespace splitkit
