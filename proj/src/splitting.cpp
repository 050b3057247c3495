#include "splitkit/splitting.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "splitkit/cayley.hpp"

namespace splitkit {

// ---------------------------------------------------------------------------
// Automorphism
// ---------------------------------------------------------------------------

Automorphism Automorphism::identity(GroupPtr g) {
  Automorphism a;
  a.g_ = std::move(g);
  for (int i = 1; i <= a.g_->alphabet.size(); ++i) {
    a.images_.push_back(Word{{static_cast<Letter>(i)}});
    a.inv_images_.push_back(Word{{static_cast<Letter>(i)}});
  }
  a.identity_ = true;
  return a;
}

Automorphism Automorphism::from_images(GroupPtr g, std::vector<Word> images,
                                       std::vector<Word> inverse_images) {
  Automorphism a;
  a.g_ = std::move(g);
  a.images_ = std::move(images);
  a.inv_images_ = std::move(inverse_images);
  int n = a.g_->alphabet.size();
  if (static_cast<int>(a.images_.size()) != n ||
      static_cast<int>(a.inv_images_.size()) != n)
    throw BadInput("automorphism image count mismatch");
  a.identity_ = true;
  for (int i = 1; i <= n; ++i) {
    Word gen{{static_cast<Letter>(i)}};
    if (!a.g_->equal(a.apply(a.apply_inverse(gen)), gen) ||
        !a.g_->equal(a.apply_inverse(a.apply(gen)), gen))
      throw BadInput("automorphism images do not invert each other");
    if (!(a.images_[i - 1].size() == 1 && a.images_[i - 1][0] == i))
      a.identity_ = false;
  }
  return a;
}

Automorphism Automorphism::inner(GroupPtr g, const Word& c) {
  Automorphism a;
  a.g_ = g;
  Word cc = g->canon(c);
  for (int i = 1; i <= g->alphabet.size(); ++i) {
    Word gen{{static_cast<Letter>(i)}};
    a.images_.push_back(g->canon(cc * gen * cc.inverse()));
    a.inv_images_.push_back(g->canon(cc.inverse() * gen * cc));
  }
  a.identity_ = cc.empty();
  return a;
}

namespace {
Word substitute(const GroupPresentation& g, const std::vector<Word>& images,
                const Word& w) {
  Word out;
  for (Letter l : w.letters) {
    const Word& img = images[(l > 0 ? l : -l) - 1];
    if (l > 0)
      out.append(img);
    else
      out.append(img.inverse());
  }
  return g.canon(out);
}
}  // namespace

Word Automorphism::apply(const Word& w) const {
  if (identity_) return g_->canon(w);
  return substitute(*g_, images_, w);
}

Word Automorphism::apply_inverse(const Word& w) const {
  if (identity_) return g_->canon(w);
  return substitute(*g_, inv_images_, w);
}

Automorphism Automorphism::compose(const Automorphism& other) const {
  Automorphism a;
  a.g_ = g_;
  for (int i = 1; i <= g_->alphabet.size(); ++i) {
    Word gen{{static_cast<Letter>(i)}};
    a.images_.push_back(apply(other.apply(gen)));
    a.inv_images_.push_back(other.apply_inverse(apply_inverse(gen)));
  }
  a.identity_ = true;
  for (int i = 1; i <= g_->alphabet.size(); ++i)
    if (!(a.images_[i - 1].size() == 1 && a.images_[i - 1][0] == i))
      a.identity_ = false;
  return a;
}

// ---------------------------------------------------------------------------
// NormalForm
// ---------------------------------------------------------------------------

std::string NormalForm::key() const {
  std::string k(hnn ? "h|" : "a|");
  for (const auto& s : syllables) {
    k += hnn ? (s.eps > 0 ? '+' : '-') : (s.side == SideTag::A ? 'A' : 'B');
    k += word_key(s.rep);
    k += '\x01';
  }
  k += '|';
  k += word_key(tail);
  return k;
}

// ---------------------------------------------------------------------------
// Subgroup transport
// ---------------------------------------------------------------------------

namespace {
SubgroupPtr transport_subgroup(const SubgroupPtr& h, const Automorphism& tau,
                               GroupPtr g) {
  if (tau.is_identity_map()) return h;
  switch (h->kind()) {
    case MembershipKind::Trivial:
      return make_trivial_subgroup(g);
    case MembershipKind::CyclicPowers:
      return make_cyclic_subgroup(g, tau.apply(h->generators()[0]));
    case MembershipKind::FiniteEnum: {
      std::vector<Word> elems;
      for (const Word& e : h->generators()) elems.push_back(tau.apply(e));
      return make_finite_subgroup(g, elems);
    }
    default:
      throw BadInput("cannot transport syllable-criterion subgroup");
  }
}
}  // namespace

// ---------------------------------------------------------------------------
// Splitting construction & validation
// ---------------------------------------------------------------------------

SplittingPtr Splitting::make_amalgam(GroupPtr g, AmalgamSpec spec) {
  auto s = std::shared_ptr<Splitting>(new Splitting());
  s->kind_ = Kind::Amalgam;
  s->g_ = g;
  s->tau_ = std::make_shared<Automorphism>(Automorphism::identity(g));
  s->letter_side_.assign(g->alphabet.size() + 1, -1);
  for (auto& n : spec.letters_a) {
    int gi = g->alphabet.index_of(n);
    if (!gi) throw BadInput("unknown generator in vertex group A: " + n);
    s->letter_side_[gi] = 0;
  }
  for (auto& n : spec.letters_b) {
    int gi = g->alphabet.index_of(n);
    if (!gi) throw BadInput("unknown generator in vertex group B: " + n);
    if (s->letter_side_[gi] == 0)
      throw BadInput("generator on both sides: " + n);
    s->letter_side_[gi] = 1;
  }
  for (int gi = 1; gi <= g->alphabet.size(); ++gi)
    if (s->letter_side_[gi] < 0)
      throw BadInput("generator assigned to no side: " + g->alphabet.name(gi));
  if (spec.letters_a.empty() || spec.letters_b.empty())
    throw BadInput("amalgam requires nonempty vertex letter sets");
  s->edge_base_ = spec.edge ? spec.edge : make_trivial_subgroup(g);
  s->transversal_choice_ = spec.transversal_choice;
  s->edge_current_ = s->edge_base_;
  s->validate_amalgam();
  s->compute_indices();
  return s;
}

SplittingPtr Splitting::make_hnn(GroupPtr g, HnnSpec spec) {
  auto s = std::shared_ptr<Splitting>(new Splitting());
  s->kind_ = Kind::Hnn;
  s->g_ = g;
  s->tau_ = std::make_shared<Automorphism>(Automorphism::identity(g));
  s->letter_side_.assign(g->alphabet.size() + 1, -1);
  int st = g->alphabet.index_of(spec.stable_letter);
  if (!st) throw BadInput("unknown stable letter: " + spec.stable_letter);
  s->stable_ = st;
  s->letter_side_[st] = 2;
  for (auto& n : spec.base_letters) {
    int gi = g->alphabet.index_of(n);
    if (!gi) throw BadInput("unknown base generator: " + n);
    if (gi == st) throw BadInput("stable letter cannot be a base letter");
    s->letter_side_[gi] = 0;
  }
  for (int gi = 1; gi <= g->alphabet.size(); ++gi)
    if (s->letter_side_[gi] < 0)
      throw BadInput("generator assigned to no side: " + g->alphabet.name(gi));
  s->h0_ = spec.h0 ? spec.h0 : make_trivial_subgroup(g);
  s->h1_ = spec.h1 ? spec.h1 : make_trivial_subgroup(g);
  s->edge_base_ = s->h0_;
  s->iso_img_ = spec.iso_images;
  s->transversal_choice_ = spec.transversal_choice;
  s->edge_current_ = s->edge_base_;
  s->stable_current_ = Word{{static_cast<Letter>(st)}};
  s->validate_hnn();
  s->compute_indices();
  return s;
}

void Splitting::validate_amalgam() {
  const auto& g = *g_;
  // A != H != B: some letter of each side must fall outside H.
  bool a_proper = false, b_proper = false;
  for (int gi = 1; gi <= g.alphabet.size(); ++gi) {
    Word w{{static_cast<Letter>(gi)}};
    if (letter_side_[gi] == 0 && !edge_base_->contains(w)) a_proper = true;
    if (letter_side_[gi] == 1 && !edge_base_->contains(w)) b_proper = true;
  }
  if (!a_proper || !b_proper)
    throw BadInput("degenerate splitting: vertex group equals edge subgroup");
  // Each edge generator must be expressible inside both vertex groups.
  for (const Word& h : edge_base_->generators()) {
    Word hc = g.canon(h);
    for (int side = 0; side < 2; ++side) {
      std::vector<Letter> letters;
      for (int gi = 1; gi <= g.alphabet.size(); ++gi)
        if (letter_side_[gi] == side) {
          letters.push_back(gi);
          letters.push_back(-gi);
        }
      int radius = static_cast<int>(hc.size()) + 2;
      std::unordered_set<std::string> seen;
      std::deque<Word> q{Word{}};
      seen.insert(word_key(Word{}));
      bool found = hc.empty();
      for (int d = 0; d < radius && !found && !q.empty(); ++d) {
        std::deque<Word> next;
        for (auto& w : q) {
          for (Letter l : letters) {
            Word w2 = g.canon(w * Word{{l}});
            if (w2 == hc) {
              found = true;
              break;
            }
            if (seen.insert(word_key(w2)).second && w2.size() <= hc.size() + 2)
              next.push_back(w2);
          }
          if (found) break;
        }
        q = std::move(next);
      }
      if (!found)
        throw BadInput("edge generator '" + g.format(h) +
                       "' not found in vertex group " +
                       (side == 0 ? "A" : "B") + " (sampled search)");
    }
  }
}

void Splitting::validate_hnn() {
  const auto& g = *g_;
  if (h0_->kind() != h1_->kind())
    throw BadInput("HNN edge subgroup kinds differ");
  auto gens0 = h0_->generators();
  if (h0_->kind() != MembershipKind::Trivial) {
    if (iso_img_.size() != gens0.size())
      throw BadInput("HNN isomorphism image count mismatch");
    Word t{{static_cast<Letter>(stable_)}};
    for (size_t i = 0; i < gens0.size(); ++i) {
      if (!h1_->contains(iso_img_[i]))
        throw BadInput("HNN isomorphism image not in H1");
      // the defining relation t^{-1} a1(h) t = a2(h)
      if (!g.equal(t.inverse() * gens0[i] * t, iso_img_[i]))
        throw BadInput("HNN isomorphism not realized by the stable letter: t' " +
                       g.format(gens0[i]) + " t != " + g.format(iso_img_[i]));
    }
    if (h0_->kind() == MembershipKind::FiniteEnum &&
        h0_->generators().size() != h1_->generators().size())
      throw BadInput("HNN finite edge subgroups of different sizes");
    if (h0_->kind() == MembershipKind::CyclicPowers) {
      auto m = h1_->express_power(iso_img_[0]);
      if (!m || (*m != 1 && *m != -1))
        throw BadInput("HNN isomorphism image does not generate H1");
      iso_exp_ = *m;
    }
  }
}

void Splitting::compute_indices() {
  const auto& g = *g_;
  auto side_letters = [&](int side) {
    std::vector<Word> gens;
    for (int gi = 1; gi <= g.alphabet.size(); ++gi) {
      int want = kind_ == Kind::Amalgam ? side : 0;
      if (letter_side_[gi] == want) {
        gens.push_back(Word{{static_cast<Letter>(gi)}});
        gens.push_back(Word{{static_cast<Letter>(-gi)}});
      }
    }
    if (kind_ == Kind::Hnn) {
      for (auto& w : h0_->generators()) {
        gens.push_back(w);
        gens.push_back(w.inverse());
      }
      for (auto& w : h1_->generators()) {
        gens.push_back(w);
        gens.push_back(w.inverse());
      }
    } else {
      for (auto& w : edge_base_->generators()) {
        gens.push_back(w);
        gens.push_back(w.inverse());
      }
    }
    return gens;
  };
  auto count_side = [&](int side, const Subgroup& h, int* idx,
                        std::vector<Word>* samples) {
    auto gens = side_letters(side);
    std::unordered_set<std::string> elems;
    std::unordered_set<std::string> cosets;
    std::deque<Word> q{Word{}};
    elems.insert(word_key(Word{}));
    cosets.insert(word_key(Word{}));
    size_t node_cap = 4000;
    int depth_cap = 6;
    for (int d = 0; d < depth_cap && !q.empty(); ++d) {
      std::deque<Word> next;
      for (auto& w : q) {
        for (const Word& s : gens) {
          Word w2 = g.canon(w * s);
          if (!elems.insert(word_key(w2)).second) continue;
          // right-coset key: least element of w2 H
          Word rep = h.coset_canonical(w2.inverse()).inverse();
          rep = g.canon(rep);
          if (cosets.insert(word_key(rep)).second && !rep.empty() &&
              samples->size() < 2) {
            bool dup = false;
            for (auto& s2 : *samples)
              if (g.equal(s2, rep)) dup = true;
            if (!dup) samples->push_back(rep);
          }
          if (cosets.size() >= 3 || elems.size() > node_cap) break;
          next.push_back(w2);
        }
        if (cosets.size() >= 3 || elems.size() > node_cap) break;
      }
      if (cosets.size() >= 3 || elems.size() > node_cap) break;
      q = std::move(next);
    }
    *idx = static_cast<int>(std::min<size_t>(cosets.size(), 3));
  };
  if (kind_ == Kind::Amalgam) {
    count_side(0, *edge_base_, &idx_.idx_a, &idx_.samples_a);
    count_side(1, *edge_base_, &idx_.idx_b, &idx_.samples_b);
  } else {
    count_side(0, *h0_, &idx_.idx_a, &idx_.samples_a);
    count_side(0, *h1_, &idx_.idx_b, &idx_.samples_b);
  }
}

SplittingPtr make_transported(const Splitting& base, const Automorphism& tau) {
  auto s = std::shared_ptr<Splitting>(new Splitting(base));
  s->tau_ = std::make_shared<Automorphism>(tau);
  s->edge_current_ = transport_subgroup(s->edge_base_, tau, s->g_);
  if (s->kind_ == Splitting::Kind::Hnn)
    s->stable_current_ = tau.apply(Word{{static_cast<Letter>(s->stable_)}});
  return s;
}

SplittingPtr Splitting::transported(const Automorphism& tau) const {
  return make_transported(*this, tau.compose(*tau_));
}

SplittingPtr Splitting::conjugated(const Word& c) const {
  return transported(Automorphism::inner(g_, c));
}

// ---------------------------------------------------------------------------
// Transversals and the HNN isomorphism
// ---------------------------------------------------------------------------

namespace {
// first and second shortlex-least candidates
struct Best2 {
  std::optional<Word> first, second;
  void offer(const Word& w) {
    if (!first) {
      first = w;
      return;
    }
    if (w == *first) return;
    if (shortlex_less(w, *first)) {
      second = first;
      first = w;
    } else if (!second || shortlex_less(w, *second)) {
      if (w != *first) second = w;
    }
  }
};
}  // namespace

// Shortlex-least (or second-least, for the alternate-transversal test hook)
// element of the right coset vH.
static Word coset_rep_over(const GroupPresentation& g, const Subgroup& h,
                           const Word& v, int choice) {
  Word vc = g.canon(v);
  Best2 best;
  switch (h.kind()) {
    case MembershipKind::Trivial:
      return vc;
    case MembershipKind::FiniteEnum: {
      for (const Word& e : h.generators()) best.offer(g.mul(vc, e));
      break;
    }
    case MembershipKind::CyclicPowers: {
      // free groups: |c^n| is strictly monotone beyond n = 1, so a single
      // length overflow ends the scan
      long slack = g.strategy == Strategy::Free
                       ? 1
                       : 2 * static_cast<long>(h.generators()[0].size()) + 8;
      best.offer(vc);
      for (int sgn : {1, -1}) {
        long grace = slack;
        for (long n = 1; grace > 0 && n < 4096; ++n) {
          Word p = h.power_word(sgn * n);
          if (n > 1 && p.empty()) break;  // finite order: full cycle seen
          if (static_cast<long>(p.size()) >
              static_cast<long>(vc.size() + best.first->size())) {
            --grace;
            continue;
          }
          best.offer(g.mul(vc, p));
        }
      }
      break;
    }
    default:
      throw BadInput("transversal over syllable-criterion subgroup");
  }
  if (choice == 1 && best.second) return *best.second;
  return *best.first;
}

Word Splitting::transversal_rep(SideTag, const Word& v) const {
  return coset_rep_over(*g_, *edge_base_, v, transversal_choice_);
}

Word Splitting::hnn_rep(int eps, const Word& v) const {
  return coset_rep_over(*g_, eps > 0 ? *h0_ : *h1_, v, transversal_choice_);
}

Word Splitting::iso_forward(const Word& h0_elt) const {
  switch (h0_->kind()) {
    case MembershipKind::Trivial:
      return Word{};
    case MembershipKind::CyclicPowers: {
      auto n = h0_->express_power(h0_elt);
      if (!n) throw BadInput("iso_forward: element not in H0");
      return h1_->power_word(iso_exp_ * *n);
    }
    case MembershipKind::FiniteEnum: {
      Word c = g_->canon(h0_elt);
      auto gens = h0_->generators();
      for (size_t i = 0; i < gens.size(); ++i)
        if (gens[i] == c) return g_->canon(iso_img_[i]);
      throw BadInput("iso_forward: element not in H0");
    }
    default:
      throw BadInput("iso_forward: unsupported subgroup kind");
  }
}

Word Splitting::iso_backward(const Word& h1_elt) const {
  switch (h1_->kind()) {
    case MembershipKind::Trivial:
      return Word{};
    case MembershipKind::CyclicPowers: {
      auto n = h1_->express_power(h1_elt);
      if (!n) throw BadInput("iso_backward: element not in H1");
      return h0_->power_word(iso_exp_ * *n);
    }
    case MembershipKind::FiniteEnum: {
      Word c = g_->canon(h1_elt);
      auto gens = h0_->generators();
      for (size_t i = 0; i < gens.size(); ++i)
        if (g_->equal(iso_img_[i], c)) return g_->canon(gens[i]);
      throw BadInput("iso_backward: element not in H1");
    }
    default:
      throw BadInput("iso_backward: unsupported subgroup kind");
  }
}

Word Splitting::to_base(const Word& w) const { return tau_->apply_inverse(w); }

// ---------------------------------------------------------------------------
// Cursor
// ---------------------------------------------------------------------------

Splitting::Cursor Splitting::cursor(const Word& seed) const {
  Cursor c;
  c.s_ = this;
  Word sb = to_base(seed);
  for (Letter l : sb.letters) c.push_base(l);
  c.undos_.clear();  // seed is a floor; pops never cross it
  return c;
}

void Splitting::Cursor::push(Letter l) {
  const Splitting& s = *s_;
  marks_.push_back(undos_.size());
  if (s.tau_->is_identity_map()) {
    push_base(l);
  } else {
    Word gen{{l}};
    Word base = s.tau_->apply_inverse(gen);
    for (Letter b : base.letters) push_base(b);
  }
}

void Splitting::Cursor::pop() {
  size_t mark = marks_.back();
  marks_.pop_back();
  while (undos_.size() > mark) {
    Undo& u = undos_.back();
    if (u.pushed) stack_.pop_back();
    if (u.popped) stack_.push_back(u.popped_syll);
    tail_ = u.old_tail;
    undos_.pop_back();
  }
}

void Splitting::Cursor::push_base(Letter l) {
  const Splitting& s = *s_;
  const GroupPresentation& g = *s.g_;
  Undo u;
  u.old_tail = tail_;
  int gen = l > 0 ? l : -l;
  if (rep_cache_.size() > 300000) rep_cache_.clear();
  if (s.kind_ == Splitting::Kind::Amalgam) {
    SideTag side = s.letter_side_[gen] == 0 ? SideTag::A : SideTag::B;
    Word v = tail_ * Word{{l}};
    if (!stack_.empty() && stack_.back().side == side) {
      v = stack_.back().rep * v;
      u.popped = true;
      u.popped_syll = stack_.back();
      stack_.pop_back();
    }
    Word vc = g.canon(v);
    std::string ck = (side == SideTag::A ? "A" : "B") + word_key(vc);
    auto it = rep_cache_.find(ck);
    if (it == rep_cache_.end()) {
      RepEntry e;
      e.in_edge = s.edge_base_->contains(vc);
      if (!e.in_edge) {
        e.rep = s.transversal_rep(side, vc);
        e.carry = g.canon(e.rep.inverse() * vc);
      }
      it = rep_cache_.emplace(std::move(ck), std::move(e)).first;
    }
    const RepEntry& e = it->second;
    if (e.in_edge) {
      tail_ = vc;
    } else {
      stack_.push_back({e.rep, side, 0});
      u.pushed = true;
      tail_ = e.carry;
    }
  } else {
    if (gen == s.stable_) {
      int eps = l > 0 ? 1 : -1;
      Word acc = g.canon(tail_);
      std::string ck = (eps > 0 ? "+" : "-") + word_key(acc);
      auto it = rep_cache_.find(ck);
      if (it == rep_cache_.end()) {
        RepEntry e;
        const Subgroup& side_sub = eps > 0 ? *s.h0_ : *s.h1_;
        e.trivial_coset = side_sub.contains(acc);
        e.rep = s.hnn_rep(eps, acc);
        Word h = g.canon(e.rep.inverse() * acc);
        e.carry = eps > 0 ? s.iso_forward(h) : s.iso_backward(h);
        it = rep_cache_.emplace(std::move(ck), std::move(e)).first;
      }
      const RepEntry& e = it->second;
      if (!stack_.empty() && stack_.back().eps == -eps && e.trivial_coset) {
        Word img = eps > 0 ? s.iso_forward(acc) : s.iso_backward(acc);
        u.popped = true;
        u.popped_syll = stack_.back();
        tail_ = g.canon(stack_.back().rep * img);
        stack_.pop_back();
      } else {
        stack_.push_back({e.rep, SideTag::A, eps, e.trivial_coset});
        u.pushed = true;
        tail_ = e.carry;
      }
    } else {
      tail_ = g.canon(tail_ * Word{{l}});
    }
  }
  undos_.push_back(std::move(u));
}

bool Splitting::Cursor::side_X() const {
  if (stack_.empty()) return false;
  const auto& f = stack_.front();
  if (s_->kind_ == Splitting::Kind::Amalgam) return f.side == SideTag::A;
  return f.eps == 1 && f.rep_in_edge;
}

bool Splitting::Cursor::in_edge() const {
  if (!stack_.empty()) return false;
  if (s_->kind_ == Splitting::Kind::Amalgam) return true;
  return s_->h0_->contains(tail_);
}

bool Splitting::Cursor::member(StdVariant v) const {
  bool side = side_X();
  switch (v) {
    case StdVariant::X:
      return side;
    case StdVariant::XunionH:
      return side || in_edge();
    case StdVariant::Xstar:
      return !side;
    case StdVariant::XstarMinusH:
      return !side && !in_edge();
  }
  return side;
}

// ---------------------------------------------------------------------------
// Splitting operations
// ---------------------------------------------------------------------------

NormalForm Splitting::normal_form(const Word& w) const {
  Cursor c;
  c.s_ = this;
  Word wb = to_base(w);
  for (Letter l : wb.letters) c.push_base(l);
  NormalForm nf;
  nf.hnn = kind_ == Kind::Hnn;
  nf.syllables = std::move(c.stack_);
  nf.tail = c.tail_;
  if (has_transport()) {
    for (auto& s : nf.syllables) s.rep = tau_->apply(s.rep);
    nf.tail = tau_->apply(nf.tail);
  }
  return nf;
}

Word Splitting::reassemble(const NormalForm& nf) const {
  Word out;
  for (const auto& s : nf.syllables) {
    out.append(s.rep);
    if (nf.hnn)
      out.append(s.eps > 0 ? stable_current_ : stable_current_.inverse());
  }
  out.append(nf.tail);
  return g_->canon(out);
}

bool Splitting::in_edge_subgroup(const Word& w) const {
  Cursor c;
  c.s_ = this;
  Word wb = to_base(w);
  for (Letter l : wb.letters) c.push_base(l);
  return c.in_edge();
}

bool Splitting::side_X(const Word& w) const {
  Cursor c;
  c.s_ = this;
  Word wb = to_base(w);
  for (Letter l : wb.letters) c.push_base(l);
  return c.side_X();
}

bool Splitting::member(const Word& w, StdVariant v) const {
  Cursor c;
  c.s_ = this;
  Word wb = to_base(w);
  for (Letter l : wb.letters) c.push_base(l);
  return c.member(v);
}

bool Splitting::half_space_member(const Word& translate, bool star,
                                  const Word& w) const {
  bool side = side_X(g_->canon(translate.inverse() * w));
  return star ? !side : side;
}

// ---------------------------------------------------------------------------
// Exact quadrant pattern
// ---------------------------------------------------------------------------

QuadrantPattern Splitting::quadrant_pattern(const Word& h) const {
  const GroupPresentation& g = *g_;
  Word hb = to_base(h);
  // side evaluation in base coordinates
  auto base_side = [&](const Word& w) {
    Cursor c;
    c.s_ = this;
    for (Letter l : w.letters) c.push_base(l);
    return c.side_X();
  };
  auto base_in_edge = [&](const Word& w) {
    Cursor c;
    c.s_ = this;
    for (Letter l : w.letters) c.push_base(l);
    return c.in_edge();
  };

  QuadrantPattern pat;
  if (base_in_edge(hb)) {
    // hX = X
    pat.occupied[0][0] = true;
    pat.occupied[1][1] = true;
    return pat;
  }

  // Normal form of h in base coordinates.
  Cursor c;
  c.s_ = this;
  for (Letter l : hb.letters) c.push_base(l);
  const auto sylls = c.stack_;

  // Witness family: path prefixes, divergence stubs at every level,
  // extensions past h, and sign/trivial-coset controls. Each witness is a
  // real group element evaluated exactly; the family meets every class of
  // elements distinguishable by (side_X(w), side_X(h^{-1}w)).
  std::vector<Word> stubs;
  stubs.push_back(Word{});  // stop
  if (kind_ == Kind::Amalgam) {
    for (const Word& s : idx_.samples_a) stubs.push_back(s);
    for (const Word& s : idx_.samples_b) stubs.push_back(s);
  } else {
    Word t{{static_cast<Letter>(stable_)}};
    std::vector<Word> reps{Word{}};
    for (const Word& s : idx_.samples_a) reps.push_back(s);
    for (const Word& s : idx_.samples_b) reps.push_back(s);
    for (const Word& r : reps) {
      stubs.push_back(g.canon(r * t));
      stubs.push_back(g.canon(r * t.inverse()));
    }
  }

  std::vector<Word> prefixes;
  Word acc;
  prefixes.push_back(acc);
  for (const auto& s : sylls) {
    acc.append(s.rep);
    if (kind_ == Kind::Hnn)
      acc.append(s.eps > 0 ? Word{{static_cast<Letter>(stable_)}}
                           : Word{{static_cast<Letter>(-stable_)}});
    prefixes.push_back(acc);
  }
  prefixes.push_back(hb);

  Word hb_inv = hb.inverse();
  auto mark = [&](const Word& w) {
    bool x1 = base_side(w);
    bool x2 = base_side(g.canon(hb_inv * w));
    pat.occupied[x1 ? 0 : 1][x2 ? 0 : 1] = true;
  };
  for (const Word& p : prefixes) {
    mark(p);
    for (const Word& s : stubs)
      if (!s.empty()) mark(g.canon(p * s));
  }
  return pat;
}

// ---------------------------------------------------------------------------
// Equivalence
// ---------------------------------------------------------------------------

std::vector<Word> Splitting::transversal_reps(SideTag side, int radius) const {
  const auto& g = *g_;
  std::vector<Word> gens;
  for (int gi = 1; gi <= g.alphabet.size(); ++gi) {
    int want = kind_ == Kind::Amalgam ? (side == SideTag::A ? 0 : 1) : 0;
    if (letter_side_[gi] == want) {
      gens.push_back(Word{{static_cast<Letter>(gi)}});
      gens.push_back(Word{{static_cast<Letter>(-gi)}});
    }
  }
  const Subgroup& h = kind_ == Kind::Amalgam
                          ? *edge_base_
                          : (side == SideTag::A ? *h0_ : *h1_);
  if (kind_ == Kind::Hnn) {
    for (auto& w : h0_->generators()) {
      gens.push_back(w);
      gens.push_back(w.inverse());
    }
    for (auto& w : h1_->generators()) {
      gens.push_back(w);
      gens.push_back(w.inverse());
    }
  } else {
    for (auto& w : edge_base_->generators()) {
      gens.push_back(w);
      gens.push_back(w.inverse());
    }
  }
  std::unordered_set<std::string> seen_elems, seen_reps;
  std::vector<Word> reps;
  std::deque<Word> q{Word{}};
  seen_elems.insert(word_key(Word{}));
  auto consider = [&](const Word& v) {
    Word rep = coset_rep_over(g, h, v, transversal_choice_);
    if (static_cast<int>(rep.size()) <= radius &&
        seen_reps.insert(word_key(rep)).second)
      reps.push_back(rep);
  };
  consider(Word{});
  size_t cap = 200000;
  for (int d = 0; d < radius + 2 && !q.empty(); ++d) {
    std::deque<Word> next;
    for (auto& w : q) {
      for (const Word& s : gens) {
        Word w2 = g.canon(w * s);
        if (w2.size() > static_cast<size_t>(radius) + 2) continue;
        if (!seen_elems.insert(word_key(w2)).second) continue;
        if (seen_elems.size() > cap)
          throw BadInput("transversal enumeration budget exceeded");
        consider(w2);
        next.push_back(w2);
      }
    }
    q = std::move(next);
  }
  std::sort(reps.begin(), reps.end(), shortlex_less);
  if (has_transport()) {
    for (auto& r : reps) r = tau_->apply(r);
  }
  return reps;
}

std::string Splitting::describe() const {
  std::string k = kind_ == Kind::Amalgam ? "amalgam" : "hnn";
  k += " over ";
  k += edge_current_->describe();
  if (has_transport()) k += " (transported)";
  return k;
}

Verdict splittings_equivalent(const Splitting& s1, const Splitting& s2, int r) {
  if (&s1.group() != &s2.group()) {
    if (s1.group().alphabet.size() != s2.group().alphabet.size())
      return Verdict::no(0, "different ambient groups");
  }
  if (!s1.edge_subgroup()->same_subgroup(*s2.edge_subgroup()))
    return Verdict::no(0, "edge subgroups differ");
  auto ball_words = group_ball(s1.group(), r);
  bool match_plain = true, match_swap = true;
  std::string witness_plain, witness_swap;
  for (const Word& w : ball_words) {
    bool m1 = s1.member(w, StdVariant::X);
    if (match_plain && m1 != s2.member(w, StdVariant::X)) {
      match_plain = false;
      witness_plain = s1.group().format(w);
    }
    if (match_swap && m1 != s2.member(w, StdVariant::XstarMinusH)) {
      match_swap = false;
      witness_swap = s1.group().format(w);
    }
    if (!match_plain && !match_swap) break;
  }
  if (match_plain || match_swap) return Verdict::yes(r);
  return Verdict::no(r, witness_plain.empty() ? witness_swap : witness_plain);
}

ConjugacyResult splittings_conjugate(const Splitting& s1, const Splitting& s2,
                                     int agree_radius, int search_radius) {
  auto candidates = group_ball(s1.group(), search_radius);
  for (const Word& c : candidates) {
    auto sc = s2.conjugated(c);
    Verdict v = splittings_equivalent(s1, *sc, agree_radius);
    if (v.certified_true()) return {v, c};
  }
  return {Verdict::unresolved(search_radius, "no conjugator in ball"), Word{}};
}

}  // namespace splitkit
