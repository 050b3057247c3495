#include "splitkit/presentation.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace splitkit {

int Alphabet::add(const std::string& name) {
  if (name.empty() || name.back() == '\'')
    throw BadInput("bad generator name: '" + name + "'");
  if (index_.count(name)) throw BadInput("duplicate generator: " + name);
  names_.push_back(name);
  index_[name] = static_cast<int>(names_.size());
  return static_cast<int>(names_.size());
}

int Alphabet::index_of(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? 0 : it->second;
}

Word Alphabet::parse(const std::string& text) const {
  Word w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    bool inv = false;
    if (tok.size() > 1 && tok.back() == '\'') {
      inv = true;
      tok.pop_back();
    }
    int g = index_of(tok);
    if (g == 0) throw BadInput("unknown generator symbol: " + tok);
    w.append(inv ? -g : g);
  }
  return w;
}

std::string Alphabet::format(const Word& w) const {
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    Letter l = w[i];
    out += name(l > 0 ? l : -l);
    if (l < 0) out += '\'';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Knuth-Bendix completion
// ---------------------------------------------------------------------------

namespace {

using Vec = std::vector<Letter>;

bool vec_shortlex_less(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i) {
    int ra = letter_rank(a[i]), rb = letter_rank(b[i]);
    if (ra != rb) return ra < rb;
  }
  return false;
}

}  // namespace

class KnuthBendixRun {
 public:
  KnuthBendixRun(int num_gens, const KbOptions& opts) : opts_(opts) {
    rs_.num_gens_ = num_gens;
  }

  void add_equation(Vec a, Vec b) { agenda_.emplace_back(std::move(a), std::move(b)); }

  bool run(std::string* why) {
    size_t processed = 0;
    while (!agenda_.empty()) {
      if (++processed > opts_.max_equations) {
        if (why) *why = "equation budget exceeded";
        return false;
      }
      auto [a, b] = agenda_.front();
      agenda_.pop_front();
      a = normalize(a);
      b = normalize(b);
      if (a == b) continue;
      if (vec_shortlex_less(a, b)) std::swap(a, b);
      if (a.size() > opts_.max_lhs_len) {
        if (why) *why = "rule length bound exceeded";
        return false;
      }
      add_rule(std::move(a), std::move(b));
      if (active_count_ > opts_.max_rules) {
        if (why) *why = "rule count bound exceeded";
        return false;
      }
    }
    compact();
    return true;
  }

  RewriteSystem take() { return std::move(rs_); }

 private:
  Vec normalize(Vec w) const {
    // Stack-based suffix rewriting; the stack below the last push is always
    // suffix-irreducible, so checking at each push suffices.
    Vec out;
    out.reserve(w.size());
    Vec input(w.rbegin(), w.rend());
    while (!input.empty()) {
      out.push_back(input.back());
      input.pop_back();
      for (const Rule& r : rs_.rules_) {
        if (!r.active) continue;
        size_t n = r.lhs.size();
        if (out.size() < n) continue;
        if (std::equal(r.lhs.begin(), r.lhs.end(), out.end() - n)) {
          out.resize(out.size() - n);
          input.insert(input.end(), r.rhs.rbegin(), r.rhs.rend());
          break;
        }
      }
    }
    return out;
  }

  void add_rule(Vec lhs, Vec rhs) {
    size_t idx = rs_.rules_.size();
    rs_.rules_.push_back(Rule{lhs, rhs, true});
    ++active_count_;
    // Interreduce: deactivate rules whose lhs contains the new lhs.
    for (size_t i = 0; i < idx; ++i) {
      Rule& r = rs_.rules_[i];
      if (!r.active) continue;
      if (contains(r.lhs, lhs)) {
        r.active = false;
        --active_count_;
        agenda_.emplace_back(r.lhs, r.rhs);
      } else if (contains(r.rhs, lhs)) {
        agenda_.emplace_back(r.lhs, r.rhs);
        r.active = false;
        --active_count_;
      }
    }
    // Critical pairs with all active rules (both orders, incl. self).
    for (size_t i = 0; i < rs_.rules_.size(); ++i) {
      if (!rs_.rules_[i].active) continue;
      overlap_pairs(rs_.rules_[i], rs_.rules_[idx]);
      if (i != idx) overlap_pairs(rs_.rules_[idx], rs_.rules_[i]);
    }
  }

  static bool contains(const Vec& hay, const Vec& needle) {
    if (needle.size() > hay.size()) return false;
    for (size_t p = 0; p + needle.size() <= hay.size(); ++p)
      if (std::equal(needle.begin(), needle.end(), hay.begin() + p)) return true;
    return false;
  }

  void overlap_pairs(const Rule& r1, const Rule& r2) {
    const Vec &l1 = r1.lhs, &l2 = r2.lhs;
    // proper overlap: suffix of l1 == prefix of l2
    size_t maxt = std::min(l1.size(), l2.size()) - 1;
    for (size_t t = 1; t <= maxt; ++t) {
      if (std::equal(l2.begin(), l2.begin() + t, l1.end() - t)) {
        Vec left = r1.rhs;
        left.insert(left.end(), l2.begin() + t, l2.end());
        Vec right(l1.begin(), l1.end() - t);
        right.insert(right.end(), r2.rhs.begin(), r2.rhs.end());
        agenda_.emplace_back(std::move(left), std::move(right));
      }
    }
    // containment: l2 a proper factor of l1
    if (l2.size() < l1.size()) {
      for (size_t p = 0; p + l2.size() <= l1.size(); ++p) {
        if (std::equal(l2.begin(), l2.end(), l1.begin() + p)) {
          Vec right(l1.begin(), l1.begin() + p);
          right.insert(right.end(), r2.rhs.begin(), r2.rhs.end());
          right.insert(right.end(), l1.begin() + p + l2.size(), l1.end());
          agenda_.emplace_back(r1.rhs, std::move(right));
        }
      }
    }
  }

  void compact() {
    std::vector<Rule> keep;
    for (auto& r : rs_.rules_)
      if (r.active) keep.push_back(std::move(r));
    std::sort(keep.begin(), keep.end(), [](const Rule& a, const Rule& b) {
      return vec_shortlex_less(a.lhs, b.lhs);
    });
    rs_.rules_ = std::move(keep);
  }

  KbOptions opts_;
  RewriteSystem rs_;
  std::deque<std::pair<Vec, Vec>> agenda_;
  size_t active_count_ = 0;
};

RewriteSystem RewriteSystem::complete(int num_gens,
                                      const std::vector<Word>& relators,
                                      const KbOptions& opts,
                                      std::string* fail_reason) {
  KnuthBendixRun run(num_gens, opts);
  for (int g = 1; g <= num_gens; ++g) {
    run.add_equation({static_cast<Letter>(g), static_cast<Letter>(-g)}, {});
    run.add_equation({static_cast<Letter>(-g), static_cast<Letter>(g)}, {});
  }
  for (const Word& r : relators) {
    Word rr = free_reduce(r);
    run.add_equation(rr.letters, {});
  }
  if (!run.run(fail_reason)) return RewriteSystem{};
  RewriteSystem rs = run.take();
  std::string why;
  if (!rs.validate_confluent(&why)) {
    if (fail_reason) *fail_reason = "post-completion confluence check failed: " + why;
    return RewriteSystem{};
  }
  rs.confluent_ = true;
  rs.build_matcher();
  return rs;
}

size_t RewriteSystem::rule_count() const {
  size_t n = 0;
  for (auto& r : rules_)
    if (r.active) ++n;
  return n;
}

bool RewriteSystem::validate_confluent(std::string* why) const {
  auto norm = [this](std::vector<Letter> w) {
    // plain fixpoint rewriting
    bool again = true;
    while (again) {
      again = false;
      for (const Rule& r : rules_) {
        if (!r.active) continue;
        size_t n = r.lhs.size();
        if (w.size() < n) continue;
        for (size_t p = 0; p + n <= w.size(); ++p) {
          if (std::equal(r.lhs.begin(), r.lhs.end(), w.begin() + p)) {
            std::vector<Letter> next(w.begin(), w.begin() + p);
            next.insert(next.end(), r.rhs.begin(), r.rhs.end());
            next.insert(next.end(), w.begin() + p + n, w.end());
            w = std::move(next);
            again = true;
            break;
          }
        }
        if (again) break;
      }
    }
    return w;
  };
  for (const Rule& r1 : rules_) {
    if (!r1.active) continue;
    for (const Rule& r2 : rules_) {
      if (!r2.active) continue;
      const auto &l1 = r1.lhs, &l2 = r2.lhs;
      size_t maxt = std::min(l1.size(), l2.size()) - 1;
      for (size_t t = 1; t <= maxt; ++t) {
        if (!std::equal(l2.begin(), l2.begin() + t, l1.end() - t)) continue;
        std::vector<Letter> left = r1.rhs;
        left.insert(left.end(), l2.begin() + t, l2.end());
        std::vector<Letter> right(l1.begin(), l1.end() - t);
        right.insert(right.end(), r2.rhs.begin(), r2.rhs.end());
        if (norm(left) != norm(right)) {
          if (why) *why = "unresolved overlap";
          return false;
        }
      }
      if (l2.size() < l1.size()) {
        for (size_t p = 0; p + l2.size() <= l1.size(); ++p) {
          if (!std::equal(l2.begin(), l2.end(), l1.begin() + p)) continue;
          std::vector<Letter> right(l1.begin(), l1.begin() + p);
          right.insert(right.end(), r2.rhs.begin(), r2.rhs.end());
          right.insert(right.end(), l1.begin() + p + l2.size(), l1.end());
          if (norm(r1.rhs) != norm(right)) {
            if (why) *why = "unresolved containment";
            return false;
          }
        }
      }
    }
  }
  return true;
}

void RewriteSystem::build_matcher() {
  int width = 2 * num_gens_;
  ac_next_.assign(1, std::vector<int>(width, 0));
  ac_out_.assign(1, -1);
  // trie
  for (size_t ri = 0; ri < rules_.size(); ++ri) {
    if (!rules_[ri].active) continue;
    int s = 0;
    for (Letter l : rules_[ri].lhs) {
      int c = letter_slot(l);
      if (ac_next_[s][c] == 0) {
        ac_next_.push_back(std::vector<int>(width, 0));
        ac_out_.push_back(-1);
        ac_next_[s][c] = static_cast<int>(ac_next_.size()) - 1;
      }
      s = ac_next_[s][c];
    }
    ac_out_[s] = static_cast<int>(ri);
  }
  // BFS fail links folded into goto
  std::vector<int> fail(ac_next_.size(), 0);
  std::deque<int> q;
  for (int c = 0; c < width; ++c) {
    int v = ac_next_[0][c];
    if (v) {
      fail[v] = 0;
      q.push_back(v);
    }
  }
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    if (ac_out_[u] < 0 && ac_out_[fail[u]] >= 0) ac_out_[u] = ac_out_[fail[u]];
    for (int c = 0; c < width; ++c) {
      int v = ac_next_[u][c];
      if (v) {
        fail[v] = ac_next_[fail[u]][c];
        q.push_back(v);
      } else {
        ac_next_[u][c] = ac_next_[fail[u]][c];
      }
    }
  }
}

int RewriteSystem::step_state(int state, Letter l) const {
  return ac_next_[state][letter_slot(l)];
}

int RewriteSystem::match_at(int state) const { return ac_out_[state]; }

Word RewriteSystem::normalize(const Word& w) const {
  std::vector<Letter> stack;
  std::vector<int> states;
  stack.reserve(w.size());
  states.reserve(w.size() + 1);
  states.push_back(0);
  std::vector<Letter> input(w.letters.rbegin(), w.letters.rend());
  while (!input.empty()) {
    Letter l = input.back();
    input.pop_back();
    int s = step_state(states.back(), l);
    stack.push_back(l);
    states.push_back(s);
    int m = match_at(s);
    if (m >= 0) {
      const Rule& r = rules_[m];
      for (size_t i = 0; i < r.lhs.size(); ++i) {
        stack.pop_back();
        states.pop_back();
      }
      for (auto it = r.rhs.rbegin(); it != r.rhs.rend(); ++it)
        input.push_back(*it);
    }
  }
  Word out;
  out.letters = std::move(stack);
  return out;
}

// ---------------------------------------------------------------------------
// TableData
// ---------------------------------------------------------------------------

int TableData::element_of(const Word& w) const {
  int e = identity;
  for (Letter l : w.letters) {
    int ge = gen_elem.at((l > 0 ? l : -l) - 1);
    e = mul[e][l > 0 ? ge : inv[ge]];
  }
  return e;
}

// ---------------------------------------------------------------------------
// GroupPresentation
// ---------------------------------------------------------------------------

std::shared_ptr<GroupPresentation> GroupPresentation::free_group(
    const std::vector<std::string>& gens) {
  auto g = std::make_shared<GroupPresentation>();
  for (auto& n : gens) g->alphabet.add(n);
  g->strategy = Strategy::Free;
  return g;
}

std::shared_ptr<GroupPresentation> GroupPresentation::from_table(
    const std::vector<std::string>& gens, TableData table) {
  auto g = std::make_shared<GroupPresentation>();
  for (auto& n : gens) g->alphabet.add(n);
  g->strategy = Strategy::Table;
  int n = table.n;
  if (static_cast<int>(table.mul.size()) != n)
    throw BadInput("multiplication table size mismatch");
  for (auto& row : table.mul)
    if (static_cast<int>(row.size()) != n)
      throw BadInput("multiplication table row size mismatch");
  // derive inverses, verify group axioms lightly (identity + inverses)
  table.inv.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (table.mul[table.identity][i] != i || table.mul[i][table.identity] != i)
      throw BadInput("table identity is not an identity");
    for (int j = 0; j < n; ++j)
      if (table.mul[i][j] == table.identity) table.inv[i] = j;
    if (table.inv[i] < 0) throw BadInput("table element without inverse");
  }
  // canonical words by shortlex BFS
  table.canon_word.assign(n, Word{});
  std::vector<bool> seen(n, false);
  seen[table.identity] = true;
  std::deque<int> q{table.identity};
  std::vector<Letter> letters;
  for (int gi = 1; gi <= g->alphabet.size(); ++gi) {
    letters.push_back(gi);
    letters.push_back(-gi);
  }
  std::sort(letters.begin(), letters.end(),
            [](Letter a, Letter b) { return letter_rank(a) < letter_rank(b); });
  while (!q.empty()) {
    int e = q.front();
    q.pop_front();
    for (Letter l : letters) {
      int ge = table.gen_elem.at((l > 0 ? l : -l) - 1);
      int to = table.mul[e][l > 0 ? ge : table.inv[ge]];
      if (!seen[to]) {
        seen[to] = true;
        table.canon_word[to] = table.canon_word[e];
        table.canon_word[to].append(l);
        q.push_back(to);
      }
    }
  }
  for (int i = 0; i < n; ++i)
    if (!seen[i]) throw BadInput("table group not generated by declared generators");
  g->table_ = std::move(table);
  return g;
}

std::shared_ptr<GroupPresentation> GroupPresentation::from_relators(
    const std::vector<std::string>& gens,
    const std::vector<std::string>& relator_texts, KbOptions opts) {
  auto g = std::make_shared<GroupPresentation>();
  for (auto& n : gens) g->alphabet.add(n);
  g->strategy = Strategy::Rewriting;
  for (auto& t : relator_texts) g->relators.push_back(g->alphabet.parse(t));
  std::string why;
  g->rw_ = RewriteSystem::complete(g->alphabet.size(), g->relators, opts, &why);
  if (!g->rw_.confluent_checked())
    throw BadInput("rewriting strategy rejected (not validated confluent): " + why);
  return g;
}

std::shared_ptr<GroupPresentation> GroupPresentation::cyclic_table(
    const std::string& gen, int order) {
  TableData t;
  t.n = order;
  t.identity = 0;
  t.mul.assign(order, std::vector<int>(order, 0));
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) t.mul[i][j] = (i + j) % order;
  t.gen_elem = {1 % order};
  return from_table({gen}, std::move(t));
}

Word GroupPresentation::canon(const Word& w) const {
  switch (strategy) {
    case Strategy::Free:
      return free_reduce(w);
    case Strategy::Rewriting:
      return rw_.normalize(w);
    case Strategy::Table:
      return table_.canon_word[table_.element_of(w)];
  }
  return w;
}

bool GroupPresentation::equal(const Word& a, const Word& b) const {
  if (strategy == Strategy::Table)
    return table_.element_of(a) == table_.element_of(b);
  return canon(a) == canon(b);
}

}  // namespace splitkit
