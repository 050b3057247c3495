#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "splitkit/presentation.hpp"

namespace splitkit {

enum class MembershipKind { Trivial, CyclicPowers, FiniteEnum, Syllable };

// A distinguished subgroup of a GroupPresentation with a sound and complete
// membership oracle for its declared class, canonical left-coset
// representatives (least of Hw), and terminating ball enumeration.
class Subgroup {
 public:
  explicit Subgroup(GroupPtr g) : group_(std::move(g)) {}
  virtual ~Subgroup() = default;

  virtual MembershipKind kind() const = 0;
  virtual bool contains(const Word& w) const = 0;
  // The shortlex-least word w' with Hw' = Hw; idempotent, constant on cosets.
  virtual Word coset_canonical(const Word& w) const = 0;
  // All subgroup elements with canonical length <= r, shortlex-sorted.
  virtual std::vector<Word> ball(int r) const = 0;
  virtual std::vector<Word> generators() const = 0;
  virtual std::string describe() const = 0;

  // Cyclic subgroups: n with w = c^n, and conversely c^n. Other kinds
  // return nullopt / throw.
  virtual std::optional<long> express_power(const Word&) const {
    return std::nullopt;
  }
  virtual Word power_word(long) const {
    throw BadInput("power_word on a non-cyclic subgroup");
  }

  const GroupPresentation& group() const { return *group_; }
  GroupPtr group_ptr() const { return group_; }

  bool is_trivial_kind() const { return kind() == MembershipKind::Trivial; }

  // true iff the generators of `other` all lie here and vice versa.
  bool same_subgroup(const Subgroup& other) const;

 protected:
  GroupPtr group_;
};

using SubgroupPtr = std::shared_ptr<const Subgroup>;

SubgroupPtr make_trivial_subgroup(GroupPtr g);
// Infinite or finite cyclic <c>; membership by exact power search with
// triangle-inequality pruning.
SubgroupPtr make_cyclic_subgroup(GroupPtr g, const Word& c);
// Explicit element list; validated closed under product and inverse.
SubgroupPtr make_finite_subgroup(GroupPtr g, const std::vector<Word>& elements);

// Cyclic helper shared by splitting code: n with w = c^n, if any.
std::optional<long> cyclic_express(GroupPtr g, const Word& c, const Word& w);

}  // namespace splitkit
