#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "splitkit/subgroup.hpp"
#include "splitkit/verdict.hpp"

namespace splitkit {

// An automorphism of G given by generator images together with the images of
// the inverse map; validated to compose to the identity on generators.
class Automorphism {
 public:
  static Automorphism identity(GroupPtr g);
  static Automorphism from_images(GroupPtr g, std::vector<Word> images,
                                  std::vector<Word> inverse_images);
  // w -> c w c^{-1}
  static Automorphism inner(GroupPtr g, const Word& c);

  Word apply(const Word& w) const;
  Word apply_inverse(const Word& w) const;
  // this after other: (this*other)(w) = this(other(w))
  Automorphism compose(const Automorphism& other) const;
  bool is_identity_map() const { return identity_; }
  const GroupPresentation& group() const { return *g_; }

 private:
  Automorphism() = default;
  GroupPtr g_;
  std::vector<Word> images_, inv_images_;
  bool identity_ = true;
};

enum class SideTag { A, B };
enum class StdVariant { X, XunionH, Xstar, XstarMinusH };

inline const char* variant_name(StdVariant v) {
  switch (v) {
    case StdVariant::X:
      return "X";
    case StdVariant::XunionH:
      return "X+H";
    case StdVariant::Xstar:
      return "X*";
    default:
      return "X*-H";
  }
}

// Unique syllable decomposition. Amalgam: alternating nontrivial transversal
// representatives with a tail in H (the paper's padded a_1 b_1 ... b_n h form
// is a view of this). HNN: a_1 t^{e_1} ... a_n t^{e_n} a_{n+1}.
struct NormalForm {
  struct Syllable {
    Word rep;      // transversal representative (amalgam: nontrivial)
    SideTag side;  // amalgam only
    int eps = 0;   // hnn only: +1 / -1
    bool rep_in_edge = false;  // hnn only: rep's coset is the trivial one
  };
  bool hnn = false;
  std::vector<Syllable> syllables;
  Word tail;  // amalgam: h in H; hnn: trailing base element

  std::string key() const;
  bool operator==(const NormalForm& o) const { return key() == o.key(); }
};

// Occupancy of the four quadrants X^(s) n hX^(s) as subsets of G, computed
// exactly. occupied[i][j]: i = in X?, j = in hX? (index 0 = yes, 1 = no).
struct QuadrantPattern {
  bool occupied[2][2] = {{false, false}, {false, false}};
  bool empty_xy() const { return !occupied[0][0]; }      // X n hX
  bool empty_xys() const { return !occupied[0][1]; }     // X n hX*
  bool empty_xsy() const { return !occupied[1][0]; }     // X* n hX
  bool empty_xsys() const { return !occupied[1][1]; }    // X* n hX*
  int empty_count() const {
    return empty_xy() + empty_xys() + empty_xsy() + empty_xsys();
  }
};

class Splitting;
using SplittingPtr = std::shared_ptr<const Splitting>;

// One-edge decomposition of G: amalgam A *_H B over a letter partition, or
// HNN extension with base letters and a stable letter. Splittings obtained
// from automorphisms or conjugation carry a transport map and delegate to
// the base combinatorics.
class Splitting {
 public:
  enum class Kind { Amalgam, Hnn };

  struct AmalgamSpec {
    std::vector<std::string> letters_a, letters_b;
    SubgroupPtr edge;
    // 0 = shortlex default, 1 = shortlex-second alternate (tests)
    int transversal_choice = 0;
  };
  struct HnnSpec {
    std::vector<std::string> base_letters;
    std::string stable_letter;
    SubgroupPtr h0, h1;            // alpha_1(H), alpha_2(H), both <= A
    std::vector<Word> iso_images;  // image in H1 of each H0 generator
    int transversal_choice = 0;
  };

  static SplittingPtr make_amalgam(GroupPtr g, AmalgamSpec spec);
  static SplittingPtr make_hnn(GroupPtr g, HnnSpec spec);

  SplittingPtr transported(const Automorphism& tau) const;
  SplittingPtr conjugated(const Word& c) const;

  Kind kind() const { return kind_; }
  const GroupPresentation& group() const { return *g_; }
  GroupPtr group_ptr() const { return g_; }
  // Stabilizer of X in current coordinates (amalgam: H; hnn: alpha_1(H)).
  SubgroupPtr edge_subgroup() const { return edge_current_; }
  const Automorphism& transport() const { return *tau_; }
  bool has_transport() const { return !tau_->is_identity_map(); }
  const Word& stable_letter_word() const { return stable_current_; }

  // --- core operations (current coordinates) ---
  NormalForm normal_form(const Word& w) const;
  Word reassemble(const NormalForm& nf) const;
  bool in_edge_subgroup(const Word& w) const;
  bool side_X(const Word& w) const;
  bool member(const Word& w, StdVariant v) const;
  bool half_space_member(const Word& translate, bool star, const Word& w) const;

  // Exact emptiness of the four sets X^(s) n hX^(s).
  QuadrantPattern quadrant_pattern(const Word& h) const;

  // Incremental membership cursor: maintains the normal form of
  // seed * w as letters of w are pushed/popped.
  class Cursor {
   public:
    void push(Letter l);
    void pop();
    bool side_X() const;
    bool in_edge() const;
    bool member(StdVariant v) const;
    size_t depth() const { return marks_.size(); }

   private:
    friend class Splitting;
    struct Undo {
      bool pushed = false;
      bool popped = false;
      NormalForm::Syllable popped_syll;
      Word old_tail;
    };
    struct RepEntry {
      bool in_edge = false;
      bool trivial_coset = false;
      Word rep, carry;
    };
    const Splitting* s_ = nullptr;
    std::vector<NormalForm::Syllable> stack_;
    Word tail_;
    std::vector<Undo> undos_;
    std::vector<size_t> marks_;  // undo count per current-coordinate letter
    std::unordered_map<std::string, RepEntry> rep_cache_;
    void push_base(Letter l);
  };
  Cursor cursor(const Word& seed = Word{}) const;

  // Distinct transversal representatives of word length <= radius, current
  // coordinates (amalgam: cosets of H in the side; hnn: side A = cosets of
  // H0, side B = cosets of H1, both in the base group).
  std::vector<Word> transversal_reps(SideTag side, int radius) const;

  // Structure data used by the tree machinery.
  struct IndexInfo {
    // 1, 2 or 3 (3 means ">= 3"); amalgam: index of H in A / B;
    // hnn: index of H0 / H1 in the base.
    int idx_a = 3, idx_b = 3;
    // up to two vertex-group elements in distinct nontrivial cosets, per side
    std::vector<Word> samples_a, samples_b;
  };
  const IndexInfo& index_info() const { return idx_; }

  std::string describe() const;

 private:
  Splitting() = default;
  friend SplittingPtr
  make_transported(const Splitting& base, const Automorphism& tau);

  void validate_amalgam();
  void validate_hnn();
  void compute_indices();
  Word transversal_rep(SideTag side, const Word& v) const;  // amalgam
  Word hnn_rep(int eps, const Word& v) const;
  Word iso_forward(const Word& h0_elt) const;   // phi: H0 -> H1
  Word iso_backward(const Word& h1_elt) const;  // phi^{-1}
  Word to_base(const Word& w) const;
  const Subgroup& h0() const { return *h0_; }
  const Subgroup& h1() const { return *h1_; }

  Kind kind_ = Kind::Amalgam;
  GroupPtr g_;
  std::shared_ptr<const Automorphism> tau_;  // current <- base
  // base combinatorics
  std::vector<int> letter_side_;  // per generator: 0 = A/base, 1 = B, 2 = stable
  int stable_ = 0;                // generator id (hnn, base coords)
  SubgroupPtr edge_base_;         // amalgam H / hnn H0, base coords
  SubgroupPtr h0_, h1_;           // hnn only, base coords
  std::vector<Word> iso_img_, iso_pre_;  // generator images of phi / phi^{-1}
  long iso_exp_ = 1;  // cyclic case: iso image as a power of H1's generator
  SubgroupPtr edge_current_;      // edge subgroup in current coords
  Word stable_current_;
  int transversal_choice_ = 0;
  IndexInfo idx_;
  // sticky pointer to the untransported combinatorial base
  std::shared_ptr<const Splitting> base_;
};

// Certified equivalence: same edge subgroup (oracle) and the four standard
// sets agree pointwise on the radius-r ball.
Verdict splittings_equivalent(const Splitting& s1, const Splitting& s2, int r);

// Searches conjugators c in the radius-search ball with
// splittings_equivalent(s1, s2^c) certified; returns the witness.
struct ConjugacyResult {
  Verdict verdict;
  Word conjugator;
};
ConjugacyResult splittings_conjugate(const Splitting& s1, const Splitting& s2,
                                     int agree_radius, int search_radius);

}  // namespace splitkit
