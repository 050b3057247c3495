#include "splitkit/subgroup.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace splitkit {

bool Subgroup::same_subgroup(const Subgroup& other) const {
  for (const Word& w : other.generators())
    if (!contains(w)) return false;
  for (const Word& w : generators())
    if (!other.contains(w)) return false;
  return true;
}

namespace {

class TrivialSubgroup final : public Subgroup {
 public:
  using Subgroup::Subgroup;
  MembershipKind kind() const override { return MembershipKind::Trivial; }
  bool contains(const Word& w) const override { return group_->is_identity(w); }
  Word coset_canonical(const Word& w) const override { return group_->canon(w); }
  std::vector<Word> ball(int) const override { return {Word{}}; }
  std::vector<Word> generators() const override { return {}; }
  std::string describe() const override { return "trivial"; }
};

class FiniteSubgroup final : public Subgroup {
 public:
  FiniteSubgroup(GroupPtr g, const std::vector<Word>& elements) : Subgroup(g) {
    std::unordered_set<std::string> seen;
    for (const Word& w : elements) {
      Word c = group_->canon(w);
      if (seen.insert(word_key(c)).second) elems_.push_back(c);
    }
    bool has_id = false;
    for (auto& e : elems_) has_id |= e.empty();
    if (!has_id) elems_.push_back(Word{});
    for (auto& e : elems_) keys_.insert(word_key(e));
    for (auto& x : elems_) {
      if (!keys_.count(word_key(group_->canon(x.inverse()))))
        throw BadInput("finite-enumeration subgroup not closed under inverse");
      for (auto& y : elems_)
        if (!keys_.count(word_key(group_->mul(x, y))))
          throw BadInput("finite-enumeration subgroup not closed under product");
    }
    std::sort(elems_.begin(), elems_.end(), shortlex_less);
  }
  MembershipKind kind() const override { return MembershipKind::FiniteEnum; }
  bool contains(const Word& w) const override {
    return keys_.count(word_key(group_->canon(w))) > 0;
  }
  Word coset_canonical(const Word& w) const override {
    Word best = group_->canon(w);
    for (const Word& h : elems_) {
      Word cand = group_->mul(h, w);
      if (shortlex_less(cand, best)) best = cand;
    }
    return best;
  }
  std::vector<Word> ball(int r) const override {
    std::vector<Word> out;
    for (const Word& h : elems_)
      if (static_cast<int>(h.size()) <= r) out.push_back(h);
    return out;
  }
  std::vector<Word> generators() const override { return elems_; }
  std::string describe() const override {
    return "finite-enumeration(" + std::to_string(elems_.size()) + ")";
  }

 private:
  std::vector<Word> elems_;
  std::unordered_set<std::string> keys_;
};

class CyclicSubgroup final : public Subgroup {
 public:
  CyclicSubgroup(GroupPtr g, const Word& c) : Subgroup(g) {
    gen_ = group_->canon(c);
    if (gen_.empty()) throw BadInput("cyclic-powers generator is trivial");
    // Detect finite order; sustained length growth ends the scan.
    Word p = gen_;
    size_t growth_cap = 4 * gen_.size() + 48;
    for (int n = 2; n <= 512 && p.size() <= growth_cap; ++n) {
      p = group_->mul(p, gen_);
      if (p.empty()) {
        order_ = n;
        break;
      }
    }
    // Fixed power cache, filled once so that lookups are thread-safe.
    long span = order_ ? *order_ : 160;
    power_plus_.push_back(Word{});
    power_minus_.push_back(Word{});
    for (long n = 1; n <= span; ++n) {
      power_plus_.push_back(group_->mul(power_plus_.back(), gen_));
      power_minus_.push_back(
          group_->mul(power_minus_.back(), group_->canon(gen_.inverse())));
    }
  }

  MembershipKind kind() const override { return MembershipKind::CyclicPowers; }

  Word power(long n) const {
    if (order_) n = ((n % *order_) + *order_) % *order_;
    const auto& cache = n >= 0 ? power_plus_ : power_minus_;
    size_t k = static_cast<size_t>(n >= 0 ? n : -n);
    if (k < cache.size()) return cache[k];
    Word p = cache.back();
    const Word step =
        n >= 0 ? gen_ : group_->canon(gen_.inverse());
    for (size_t i = cache.size() - 1; i < k; ++i) p = group_->mul(p, step);
    return p;
  }

  std::optional<long> express_power(const Word& w) const override {
    return express(w);
  }
  Word power_word(long n) const override { return power(n); }

  bool contains(const Word& w) const override { return express(w).has_value(); }

  std::optional<long> express(const Word& w) const {
    Word wc = group_->canon(w);
    if (wc.empty()) return 0;
    if (order_) {
      for (long n = 1; n < *order_; ++n)
        if (power(n) == wc) return n;
      return std::nullopt;
    }
    // Infinite order: |c^n| - |w| <= |c^n w| forces a finite scan. A slack
    // window guards against non-monotone canonical lengths.
    long limit_grace = slack();
    for (int sgn : {1, -1}) {
      long grace = limit_grace;
      for (long n = 1; grace > 0; ++n) {
        const Word p = power(sgn * n);
        if (p == wc) return sgn * n;
        if (static_cast<long>(p.size()) > static_cast<long>(wc.size()))
          --grace;
        if (n > 4096) break;
      }
    }
    return std::nullopt;
  }

  Word coset_canonical(const Word& w) const override {
    Word best = group_->canon(w);
    if (order_) {
      for (long n = 1; n < *order_; ++n) {
        Word cand = group_->mul(power(n), w);
        if (shortlex_less(cand, best)) best = cand;
      }
      return best;
    }
    const Word orig = best;
    long wlen = static_cast<long>(orig.size());
    for (int sgn : {1, -1}) {
      long grace = slack();
      for (long n = 1; grace > 0; ++n) {
        const Word p = power(sgn * n);
        if (static_cast<long>(p.size()) - wlen > static_cast<long>(best.size())) {
          --grace;
        } else {
          Word cand = group_->mul(p, orig);
          if (shortlex_less(cand, best)) best = cand;
        }
        if (n > 4096) break;
      }
    }
    return best;
  }

  std::vector<Word> ball(int r) const override {
    std::vector<Word> out{Word{}};
    if (order_) {
      for (long n = 1; n < *order_; ++n)
        if (static_cast<int>(power(n).size()) <= r) out.push_back(power(n));
    } else {
      for (int sgn : {1, -1}) {
        long grace = slack();
        for (long n = 1; grace > 0; ++n) {
          const Word p = power(sgn * n);
          if (static_cast<int>(p.size()) <= r)
            out.push_back(p);
          else
            --grace;
          if (n > 4096) break;
        }
      }
    }
    std::sort(out.begin(), out.end(), shortlex_less);
    return out;
  }

  std::vector<Word> generators() const override { return {gen_}; }
  std::string describe() const override {
    return "cyclic-powers<" + group_->format(gen_) + ">" +
           (order_ ? " order " + std::to_string(*order_) : "");
  }

 private:
  long slack() const {
    // free groups have strictly monotone power lengths
    if (group_->strategy == Strategy::Free) return 1;
    return 2 * static_cast<long>(gen_.size()) + 8;
  }

  Word gen_;
  std::optional<long> order_;
  std::vector<Word> power_plus_, power_minus_;
};

}  // namespace

SubgroupPtr make_trivial_subgroup(GroupPtr g) {
  return std::make_shared<TrivialSubgroup>(std::move(g));
}

SubgroupPtr make_cyclic_subgroup(GroupPtr g, const Word& c) {
  return std::make_shared<CyclicSubgroup>(std::move(g), c);
}

SubgroupPtr make_finite_subgroup(GroupPtr g, const std::vector<Word>& elements) {
  return std::make_shared<FiniteSubgroup>(std::move(g), elements);
}

std::optional<long> cyclic_express(GroupPtr g, const Word& c, const Word& w) {
  CyclicSubgroup sub(std::move(g), c);
  return sub.express(w);
}

}  // namespace splitkit
