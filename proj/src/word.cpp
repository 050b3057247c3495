#include "splitkit/word.hpp"

#include <cstring>

namespace splitkit {

Word free_reduce(const Word& w) {
  Word out;
  out.letters.reserve(w.size());
  for (Letter l : w.letters) {
    if (!out.letters.empty() && out.letters.back() == -l)
      out.letters.pop_back();
    else
      out.letters.push_back(l);
  }
  return out;
}

CyclicForm cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  size_t i = 0, j = r.size();
  while (j >= i + 2 && r.letters[i] == -r.letters[j - 1]) {
    ++i;
    --j;
  }
  CyclicForm cf;
  cf.conjugator.letters.assign(r.letters.begin(), r.letters.begin() + i);
  cf.core.letters.assign(r.letters.begin() + i, r.letters.begin() + j);
  return cf;
}

std::string word_key(const Word& w) {
  std::string s;
  s.resize(w.size() * sizeof(Letter));
  if (!w.empty())
    std::memcpy(s.data(), w.letters.data(), w.size() * sizeof(Letter));
  return s;
}

}  // namespace splitkit
