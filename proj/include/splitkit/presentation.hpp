#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "splitkit/word.hpp"

namespace splitkit {

class BadInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Alphabet {
 public:
  int add(const std::string& name);
  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int gen) const { return names_.at(gen - 1); }
  // 0 when absent.
  int index_of(const std::string& name) const;

  // Words serialize as whitespace-separated symbols, ' marks an inverse:
  // "a b' a".
  Word parse(const std::string& text) const;
  std::string format(const Word& w) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
};

struct KbOptions {
  size_t max_rules = 4000;
  size_t max_lhs_len = 60;
  size_t max_equations = 400000;
};

struct Rule {
  std::vector<Letter> lhs, rhs;
  bool active = true;
};

// Shortlex-oriented string rewriting over signed letters. Only systems that
// pass the critical-pair check are used for word problems; such a system
// rewrites every word to the shortlex-least representative of its class.
class RewriteSystem {
 public:
  static RewriteSystem complete(int num_gens, const std::vector<Word>& relators,
                                const KbOptions& opts, std::string* fail_reason);

  Word normalize(const Word& w) const;
  bool confluent_checked() const { return confluent_; }
  size_t rule_count() const;
  const std::vector<Rule>& rules() const { return rules_; }

  // Re-runs the critical-pair check; fills `why` on failure.
  bool validate_confluent(std::string* why) const;

  // Incremental interface used by streaming enumerators: rewriting states
  // index nodes of the pattern automaton.
  int root_state() const { return 0; }
  int step_state(int state, Letter l) const;
  // >= 0: a rule lhs ends here.
  int match_at(int state) const;

  void build_matcher();

 private:
  friend class KnuthBendixRun;
  std::vector<Rule> rules_;
  int num_gens_ = 0;
  bool confluent_ = false;

  // Aho-Corasick over active lhs patterns.
  std::vector<std::vector<int>> ac_next_;
  std::vector<int> ac_out_;

  int letter_slot(Letter l) const { return letter_rank(l); }
};

enum class Strategy { Free, Table, Rewriting };

struct TableData {
  int n = 0;                           // element count
  std::vector<std::vector<int>> mul;   // n x n
  std::vector<int> inv;                // per element
  std::vector<int> gen_elem;           // per generator (1-based index -> id)
  std::vector<Word> canon_word;        // shortlex-least word per element
  int identity = 0;

  int element_of(const Word& w) const;
};

// A finitely generated group with a decidable word problem, one of three
// strategies. canon() returns the shortlex-least representative word.
class GroupPresentation {
 public:
  Alphabet alphabet;
  Strategy strategy = Strategy::Free;
  std::vector<Word> relators;

  static std::shared_ptr<GroupPresentation> free_group(
      const std::vector<std::string>& gens);
  static std::shared_ptr<GroupPresentation> from_table(
      const std::vector<std::string>& gens, TableData table);
  // Runs Knuth-Bendix and rejects presentations whose completion does not
  // confluently terminate within bounds.
  static std::shared_ptr<GroupPresentation> from_relators(
      const std::vector<std::string>& gens,
      const std::vector<std::string>& relator_texts, KbOptions opts = {});
  // Convenience: Z_n multiplication table on one generator.
  static std::shared_ptr<GroupPresentation> cyclic_table(const std::string& gen,
                                                         int order);

  Word canon(const Word& w) const;
  bool equal(const Word& a, const Word& b) const;
  bool is_identity(const Word& w) const { return canon(w).empty(); }
  Word mul(const Word& a, const Word& b) const { return canon(a * b); }
  Word conj(const Word& g, const Word& w) const {
    return canon(g * w * g.inverse());
  }

  const RewriteSystem& rewrite_system() const { return rw_; }
  const TableData& table() const { return table_; }

  Word parse(const std::string& s) const { return alphabet.parse(s); }
  std::string format(const Word& w) const { return alphabet.format(w); }

 private:
  RewriteSystem rw_;
  TableData table_;
};

using GroupPtr = std::shared_ptr<const GroupPresentation>;

}  // namespace splitkit
