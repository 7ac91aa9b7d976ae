#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <ranges>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "nielsen/error.hpp"

namespace nielsen {

/// Index of a group element. The identity is always index 0.
using Element = std::uint32_t;

inline constexpr Element kIdentity = 0;

/// Upper bound on the candidate image tuples `enumerate_homs` will try.
inline constexpr std::size_t kDefaultHomBudget = std::size_t{1} << 22;

namespace detail {
struct Trusted {};
}  // namespace detail

/// A finite group given by its multiplication table.
///
/// Cheap to copy: the table is shared and immutable after construction, so
/// instances may be read concurrently without synchronization.
class FiniteGroup {
 public:
  /// The trivial group.
  FiniteGroup() : FiniteGroup(detail::Trusted{}, 1, {0}) {}

  FiniteGroup(detail::Trusted, std::size_t order, std::vector<Element> table) {
    auto data = std::make_shared<Data>(Data{order, std::move(table), std::vector<Element>(order, 0)});
    for (std::size_t a = 0; a < order; ++a) {
      for (std::size_t b = 0; b < order; ++b) {
        if (data->table[a * order + b] == kIdentity) {
          data->inverse[a] = static_cast<Element>(b);
          break;
        }
      }
    }
    data_ = std::move(data);
  }

  std::size_t order() const noexcept { return data_->order; }

  Element mul(Element a, Element b) const noexcept { return data_->table[a * data_->order + b]; }
  Element inv(Element a) const noexcept { return data_->inverse[a]; }
  /// g·x·g⁻¹
  Element conj(Element g, Element x) const noexcept { return mul(mul(g, x), inv(g)); }

  bool contains(std::uint64_t index) const noexcept { return index < order(); }

  std::span<const Element> row(Element a) const noexcept {
    return std::span<const Element>(data_->table).subspan(a * order(), order());
  }

  auto elements() const { return std::views::iota(Element{0}, static_cast<Element>(order())); }

  bool is_abelian() const {
    for (Element a : elements())
      for (Element b : elements())
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  std::vector<std::vector<Element>> table() const {
    std::vector<std::vector<Element>> rows;
    for (Element a : elements()) rows.emplace_back(row(a).begin(), row(a).end());
    return rows;
  }

  friend bool operator==(const FiniteGroup& lhs, const FiniteGroup& rhs) {
    return lhs.data_ == rhs.data_ ||
           (lhs.order() == rhs.order() && lhs.data_->table == rhs.data_->table);
  }

 private:
  struct Data {
    std::size_t order;
    std::vector<Element> table;
    std::vector<Element> inverse;
  };
  std::shared_ptr<const Data> data_;
};

/// Validates a multiplication table and builds the group.
///
/// Checks run in a fixed order (closure, identity, inverses, associativity)
/// and the error names the first offending indices.
inline FiniteGroup make_group(const std::vector<std::vector<Element>>& table) {
  const std::size_t n = table.size();
  if (n == 0) throw Error(ErrorKind::Malformed, "empty multiplication table");
  std::vector<Element> flat;
  flat.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) {
      std::ostringstream msg;
      msg << "row " << i << " has " << table[i].size() << " entries, expected " << n;
      throw Error(ErrorKind::Malformed, msg.str());
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (table[i][j] >= n) {
        std::ostringstream msg;
        msg << "entry (" << i << ", " << j << ") = " << table[i][j] << " is not below order " << n;
        throw Error(ErrorKind::NotClosed, msg.str());
      }
      flat.push_back(table[i][j]);
    }
  }
  auto at = [&](std::size_t a, std::size_t b) { return flat[a * n + b]; };
  for (std::size_t j = 0; j < n; ++j) {
    if (at(0, j) != j || at(j, 0) != j) {
      std::ostringstream msg;
      msg << "index 0 is not a two-sided identity at element " << j;
      throw Error(ErrorKind::NoIdentityAtZero, msg.str());
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    bool found = false;
    for (std::size_t b = 0; b < n && !found; ++b) found = at(a, b) == 0 && at(b, a) == 0;
    if (!found) {
      std::ostringstream msg;
      msg << "element " << a << " has no two-sided inverse";
      throw Error(ErrorKind::NoInverse, msg.str());
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (at(at(a, b), c) != at(a, at(b, c))) {
          std::ostringstream msg;
          msg << "(" << a << "*" << b << ")*" << c << " != " << a << "*(" << b << "*" << c << ")";
          throw Error(ErrorKind::NotAssociative, msg.str());
        }
  return FiniteGroup(detail::Trusted{}, n, std::move(flat));
}

/// A subgroup, stored as a sorted member list plus a membership mask.
class Subgroup {
 public:
  Subgroup(detail::Trusted, FiniteGroup parent, std::vector<Element> members)
      : parent_(std::move(parent)), members_(std::move(members)), mask_(parent_.order(), false) {
    std::ranges::sort(members_);
    for (Element m : members_) mask_[m] = true;
  }

  const FiniteGroup& parent() const noexcept { return parent_; }
  std::span<const Element> members() const noexcept { return members_; }
  std::size_t order() const noexcept { return members_.size(); }
  std::size_t index() const noexcept { return parent_.order() / members_.size(); }
  bool contains(Element e) const noexcept { return e < mask_.size() && mask_[e]; }
  bool is_whole() const noexcept { return order() == parent_.order(); }
  bool is_trivial() const noexcept { return order() == 1; }

  friend bool operator==(const Subgroup& lhs, const Subgroup& rhs) {
    return lhs.members_ == rhs.members_ && lhs.parent_ == rhs.parent_;
  }

 private:
  FiniteGroup parent_;
  std::vector<Element> members_;
  std::vector<bool> mask_;
};

/// Smallest subgroup containing `gens`.
inline Subgroup subgroup_closure(const FiniteGroup& group, std::span<const Element> gens) {
  std::vector<bool> in(group.order(), false);
  std::vector<Element> members{kIdentity};
  in[kIdentity] = true;
  for (Element g : gens) {
    if (!group.contains(g)) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "generator " + std::to_string(g) + " outside group of order " +
                      std::to_string(group.order()));
    }
    if (!in[g]) {
      in[g] = true;
      members.push_back(g);
    }
  }
  // In a finite group closure under products already yields inverses.
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      for (Element p : {group.mul(members[i], members[j]), group.mul(members[j], members[i])}) {
        if (!in[p]) {
          in[p] = true;
          members.push_back(p);
        }
      }
    }
  }
  return Subgroup(detail::Trusted{}, group, std::move(members));
}

inline Subgroup subgroup_closure(const FiniteGroup& group, std::initializer_list<Element> gens) {
  return subgroup_closure(group, std::span<const Element>(gens.begin(), gens.size()));
}

inline Subgroup whole_group(const FiniteGroup& group) {
  std::vector<Element> all(group.elements().begin(), group.elements().end());
  return Subgroup(detail::Trusted{}, group, std::move(all));
}

inline Subgroup trivial_subgroup(const FiniteGroup& group) {
  return Subgroup(detail::Trusted{}, group, {kIdentity});
}

/// Checks that `members` is already a subgroup (no closure is taken).
inline Subgroup make_subgroup(const FiniteGroup& group, std::span<const Element> members) {
  for (Element m : members) {
    if (!group.contains(m)) {
      throw Error(ErrorKind::IndexOutOfRange, "subgroup member " + std::to_string(m) +
                                                  " outside group of order " +
                                                  std::to_string(group.order()));
    }
  }
  Subgroup closed = subgroup_closure(group, members);
  std::set<Element> given(members.begin(), members.end());
  if (!given.contains(kIdentity)) throw Error(ErrorKind::NotClosed, "subgroup lacks the identity 0");
  if (given.size() != closed.order()) {
    for (Element e : closed.members()) {
      if (!given.contains(e)) {
        throw Error(ErrorKind::NotClosed,
                    "member set is not closed; missing " + std::to_string(e));
      }
    }
  }
  return closed;
}

inline bool is_normal(const FiniteGroup& group, const Subgroup& sub) {
  for (Element g : group.elements())
    for (Element s : sub.members())
      if (!sub.contains(group.conj(g, s))) return false;
  return true;
}

inline Subgroup center(const FiniteGroup& group) {
  std::vector<Element> members;
  for (Element z : group.elements()) {
    bool central = true;
    for (Element g : group.elements()) {
      if (group.mul(z, g) != group.mul(g, z)) {
        central = false;
        break;
      }
    }
    if (central) members.push_back(z);
  }
  return Subgroup(detail::Trusted{}, group, std::move(members));
}

/// Every subgroup of `group`, ordered by (order, members).
inline std::vector<Subgroup> all_subgroups(const FiniteGroup& group) {
  std::set<std::vector<Element>> seen;
  std::vector<Subgroup> found;
  auto record = [&](Subgroup s) {
    std::vector<Element> key(s.members().begin(), s.members().end());
    if (seen.insert(key).second) found.push_back(std::move(s));
  };
  record(trivial_subgroup(group));
  // Joining each known subgroup with one more element reaches every subgroup.
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (Element g : group.elements()) {
      if (found[i].contains(g)) continue;
      std::vector<Element> gens(found[i].members().begin(), found[i].members().end());
      gens.push_back(g);
      record(subgroup_closure(group, gens));
    }
  }
  std::ranges::sort(found, [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return std::ranges::lexicographical_compare(a.members(), b.members());
  });
  return found;
}

inline std::vector<Subgroup> normal_subgroups(const FiniteGroup& group) {
  std::vector<Subgroup> normal;
  for (auto& s : all_subgroups(group))
    if (is_normal(group, s)) normal.push_back(std::move(s));
  return normal;
}

/// Greedy generating set: each element not yet reached, in index order.
inline std::vector<Element> generating_set(const FiniteGroup& group) {
  std::vector<Element> gens;
  Subgroup reached = trivial_subgroup(group);
  for (Element g : group.elements()) {
    if (reached.contains(g)) continue;
    gens.push_back(g);
    reached = subgroup_closure(group, gens);
  }
  return gens;
}

/// A validated group homomorphism.
class Homomorphism {
 public:
  Homomorphism(detail::Trusted, FiniteGroup source, FiniteGroup target, std::vector<Element> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {}

  const FiniteGroup& source() const noexcept { return source_; }
  const FiniteGroup& target() const noexcept { return target_; }
  std::span<const Element> images() const noexcept { return images_; }

  Element operator()(Element a) const noexcept { return images_[a]; }

  Subgroup kernel() const {
    std::vector<Element> members;
    for (Element a : source_.elements())
      if (images_[a] == kIdentity) members.push_back(a);
    return Subgroup(detail::Trusted{}, source_, std::move(members));
  }

  Subgroup image() const {
    std::set<Element> values(images_.begin(), images_.end());
    return Subgroup(detail::Trusted{}, target_, {values.begin(), values.end()});
  }

  /// φ(S) as a subgroup of the target.
  Subgroup image_of(const Subgroup& sub) const {
    std::set<Element> values;
    for (Element s : sub.members()) values.insert(images_[s]);
    return Subgroup(detail::Trusted{}, target_, {values.begin(), values.end()});
  }

  bool is_trivial() const {
    return std::ranges::all_of(images_, [](Element e) { return e == kIdentity; });
  }

  friend bool operator==(const Homomorphism& lhs, const Homomorphism& rhs) {
    return lhs.images_ == rhs.images_ && lhs.source_ == rhs.source_ && lhs.target_ == rhs.target_;
  }

 private:
  FiniteGroup source_;
  FiniteGroup target_;
  std::vector<Element> images_;
};

inline Homomorphism make_hom(const FiniteGroup& source, const FiniteGroup& target,
                             std::vector<Element> images) {
  if (images.size() != source.order()) {
    throw Error(ErrorKind::Malformed, "expected " + std::to_string(source.order()) +
                                          " images, got " + std::to_string(images.size()));
  }
  for (std::size_t a = 0; a < images.size(); ++a) {
    if (!target.contains(images[a])) {
      throw Error(ErrorKind::IndexOutOfRange, "image of " + std::to_string(a) + " is " +
                                                  std::to_string(images[a]) +
                                                  ", outside target of order " +
                                                  std::to_string(target.order()));
    }
  }
  if (images[kIdentity] != kIdentity) {
    throw Error(ErrorKind::IdentityNotPreserved,
                "identity maps to " + std::to_string(images[kIdentity]));
  }
  for (Element a : source.elements())
    for (Element b : source.elements())
      if (images[source.mul(a, b)] != target.mul(images[a], images[b])) {
        std::ostringstream msg;
        msg << "h(" << a << "*" << b << ") != h(" << a << ")*h(" << b << ")";
        throw Error(ErrorKind::NotAHomomorphism, msg.str());
      }
  return Homomorphism(detail::Trusted{}, source, target, std::move(images));
}

inline Homomorphism identity_hom(const FiniteGroup& group) {
  std::vector<Element> images(group.elements().begin(), group.elements().end());
  return Homomorphism(detail::Trusted{}, group, group, std::move(images));
}

/// The homomorphism induced by a constant map.
inline Homomorphism trivial_hom(const FiniteGroup& source, const FiniteGroup& target) {
  return Homomorphism(detail::Trusted{}, source, target,
                      std::vector<Element>(source.order(), kIdentity));
}

/// outer ∘ inner
inline Homomorphism compose(const Homomorphism& outer, const Homomorphism& inner) {
  if (!(inner.target() == outer.source()))
    throw Error(ErrorKind::MismatchedDomains, "cannot compose: target/source differ");
  std::vector<Element> images;
  images.reserve(inner.source().order());
  for (Element a : inner.source().elements()) images.push_back(outer(inner(a)));
  return Homomorphism(detail::Trusted{}, inner.source(), outer.target(), std::move(images));
}

/// All homomorphisms source → target, sorted lexicographically by image array.
///
/// Candidates are assignments of images to a generating set, extended along
/// words and then validated in full.
inline std::vector<Homomorphism> enumerate_homs(const FiniteGroup& source,
                                                const FiniteGroup& target,
                                                std::size_t budget = kDefaultHomBudget) {
  const auto gens = generating_set(source);
  std::size_t candidates = 1;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (candidates > budget / target.order()) {
      throw Error(ErrorKind::BudgetExceeded, "more than " + std::to_string(budget) +
                                                 " candidate homomorphisms");
    }
    candidates *= target.order();
  }

  constexpr Element kUnset = static_cast<Element>(-1);
  std::vector<std::vector<Element>> found;
  std::vector<Element> choice(gens.size(), 0);
  for (std::size_t c = 0; c < candidates; ++c) {
    std::vector<Element> images(source.order(), kUnset);
    images[kIdentity] = kIdentity;
    std::vector<Element> frontier{kIdentity};
    bool consistent = true;
    for (std::size_t head = 0; head < frontier.size() && consistent; ++head) {
      Element x = frontier[head];
      for (std::size_t i = 0; i < gens.size(); ++i) {
        Element y = source.mul(x, gens[i]);
        Element value = target.mul(images[x], choice[i]);
        if (images[y] == kUnset) {
          images[y] = value;
          frontier.push_back(y);
        } else if (images[y] != value) {
          consistent = false;
          break;
        }
      }
    }
    if (consistent) {
      bool hom = true;
      for (Element a : source.elements())
        for (Element b : source.elements())
          hom = hom && images[source.mul(a, b)] == target.mul(images[a], images[b]);
      if (hom) found.push_back(std::move(images));
    }
    for (std::size_t i = 0; i < choice.size(); ++i) {
      if (++choice[i] < target.order()) break;
      choice[i] = 0;
    }
  }
  std::ranges::sort(found);
  std::vector<Homomorphism> homs;
  homs.reserve(found.size());
  for (auto& images : found) homs.emplace_back(detail::Trusted{}, source, target, std::move(images));
  return homs;
}

/// {γ : φ(γ) = ψ(γ)}
inline Subgroup equalizer(const Homomorphism& phi, const Homomorphism& psi) {
  if (!(phi.source() == psi.source()) || !(phi.target() == psi.target()))
    throw Error(ErrorKind::MismatchedDomains, "equalizer needs a common source and target");
  std::vector<Element> members;
  for (Element g : phi.source().elements())
    if (phi(g) == psi(g)) members.push_back(g);
  return Subgroup(detail::Trusted{}, phi.source(), std::move(members));
}

/// {γ : ψ(γ)·α = α·φ(γ)}, the stabilizer of α under γ·α = ψ(γ)·α·φ(γ)⁻¹.
inline Subgroup twisted_equalizer(const Homomorphism& phi, const Homomorphism& psi, Element twist) {
  if (!(phi.source() == psi.source()) || !(phi.target() == psi.target()))
    throw Error(ErrorKind::MismatchedDomains, "twisted equalizer needs a common source and target");
  const FiniteGroup& n = phi.target();
  if (!n.contains(twist)) {
    throw Error(ErrorKind::IndexOutOfRange,
                "twist " + std::to_string(twist) + " outside target of order " +
                    std::to_string(n.order()));
  }
  std::vector<Element> members;
  for (Element g : phi.source().elements())
    if (n.mul(psi(g), twist) == n.mul(twist, phi(g))) members.push_back(g);
  return Subgroup(detail::Trusted{}, phi.source(), std::move(members));
}

/// G/K on canonical coset representatives, with the projection G → G/K.
struct QuotientGroup {
  FiniteGroup group;
  Homomorphism projection;
  /// Minimal-index representative of each coset, indexed by quotient element.
  std::vector<Element> representatives;
};

inline QuotientGroup quotient(const FiniteGroup& group, const Subgroup& sub) {
  if (!(sub.parent() == group)) throw Error(ErrorKind::MismatchedDomains, "subgroup of another group");
  if (!is_normal(group, sub)) throw Error(ErrorKind::NotNormal, "cannot form quotient by non-normal subgroup");
  constexpr Element kUnset = static_cast<Element>(-1);
  std::vector<Element> coset_of(group.order(), kUnset);
  std::vector<Element> reps;
  // Scanning in index order makes every representative the minimal index of its coset.
  for (Element g : group.elements()) {
    if (coset_of[g] != kUnset) continue;
    const auto id = static_cast<Element>(reps.size());
    reps.push_back(g);
    for (Element k : sub.members()) coset_of[group.mul(g, k)] = id;
  }
  const std::size_t m = reps.size();
  std::vector<Element> table(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) table[a * m + b] = coset_of[group.mul(reps[a], reps[b])];
  FiniteGroup q(detail::Trusted{}, m, std::move(table));
  Homomorphism projection(detail::Trusted{}, group, q, std::move(coset_of));
  return QuotientGroup{std::move(q), std::move(projection), std::move(reps)};
}

/// A homomorphism into {+1, −1}; its kernel is the orientation-preserving subgroup.
class OrientationCharacter {
 public:
  OrientationCharacter(detail::Trusted, FiniteGroup group, std::vector<int> signs)
      : group_(std::move(group)), signs_(std::move(signs)) {}

  const FiniteGroup& group() const noexcept { return group_; }
  std::span<const int> signs() const noexcept { return signs_; }
  int operator()(Element a) const noexcept { return signs_[a]; }

  bool is_trivial() const {
    return std::ranges::all_of(signs_, [](int s) { return s == 1; });
  }

  Subgroup kernel() const {
    std::vector<Element> members;
    for (Element a : group_.elements())
      if (signs_[a] == 1) members.push_back(a);
    return Subgroup(detail::Trusted{}, group_, std::move(members));
  }

  friend bool operator==(const OrientationCharacter& lhs, const OrientationCharacter& rhs) {
    return lhs.signs_ == rhs.signs_ && lhs.group_ == rhs.group_;
  }

 private:
  FiniteGroup group_;
  std::vector<int> signs_;
};

inline OrientationCharacter make_character(const FiniteGroup& group, std::vector<int> signs) {
  if (signs.size() != group.order()) {
    throw Error(ErrorKind::Malformed, "expected " + std::to_string(group.order()) +
                                          " signs, got " + std::to_string(signs.size()));
  }
  for (std::size_t a = 0; a < signs.size(); ++a) {
    if (signs[a] != 1 && signs[a] != -1)
      throw Error(ErrorKind::Malformed, "sign of " + std::to_string(a) + " is not +1 or -1");
  }
  if (signs[kIdentity] != 1) throw Error(ErrorKind::IdentityNotPositive, "identity has sign -1");
  for (Element a : group.elements())
    for (Element b : group.elements())
      if (signs[group.mul(a, b)] != signs[a] * signs[b]) {
        std::ostringstream msg;
        msg << "w(" << a << "*" << b << ") != w(" << a << ")*w(" << b << ")";
        throw Error(ErrorKind::NotMultiplicative, msg.str());
      }
  return OrientationCharacter(detail::Trusted{}, group, std::move(signs));
}

inline OrientationCharacter trivial_character(const FiniteGroup& group) {
  return OrientationCharacter(detail::Trusted{}, group, std::vector<int>(group.order(), 1));
}

/// w ∘ h, a character on h's source.
inline OrientationCharacter pullback(const OrientationCharacter& w, const Homomorphism& h) {
  if (!(h.target() == w.group()))
    throw Error(ErrorKind::MismatchedDomains, "character is not on the homomorphism's target");
  std::vector<int> signs;
  signs.reserve(h.source().order());
  for (Element a : h.source().elements()) signs.push_back(w(h(a)));
  return OrientationCharacter(detail::Trusted{}, h.source(), std::move(signs));
}

inline OrientationCharacter operator*(const OrientationCharacter& lhs,
                                      const OrientationCharacter& rhs) {
  if (!(lhs.group() == rhs.group()))
    throw Error(ErrorKind::MismatchedDomains, "characters live on different groups");
  std::vector<int> signs;
  signs.reserve(lhs.group().order());
  for (Element a : lhs.group().elements()) signs.push_back(lhs(a) * rhs(a));
  return OrientationCharacter(detail::Trusted{}, lhs.group(), std::move(signs));
}

/// Every character of `group`, trivial first, then in lexicographic order of
/// the kernel index-2 subgroups.
inline std::vector<OrientationCharacter> enumerate_characters(const FiniteGroup& group) {
  std::vector<OrientationCharacter> chars{trivial_character(group)};
  for (const auto& sub : normal_subgroups(group)) {
    if (sub.index() != 2) continue;
    std::vector<int> signs(group.order(), -1);
    for (Element k : sub.members()) signs[k] = 1;
    chars.emplace_back(detail::Trusted{}, group, std::move(signs));
  }
  return chars;
}

}  // namespace nielsen
