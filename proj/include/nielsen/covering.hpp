#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "nielsen/classes.hpp"
#include "nielsen/semi_index.hpp"

namespace nielsen {

/// Finite regular coverings p: M̃ → M and q: Ñ → N, given by the normal
/// subgroups K_M = p#(π₁(M̃)) and K_N = q#(π₁(Ñ)). The deck groups are the
/// quotients G/K_M and N/K_N; the identity covering is K = whole group.
struct RegularCovering {
  Subgroup source_kernel;
  Subgroup target_kernel;
  QuotientGroup source_deck;
  QuotientGroup target_deck;
};

/// Validates that f and g lift through the coverings: f(K_M) ⊆ K_N and g(K_M) ⊆ K_N.
inline RegularCovering check_liftable(const CoincidencePair& pair, const Subgroup& source_kernel,
                                      const Subgroup& target_kernel) {
  if (!(source_kernel.parent() == pair.source()) || !(target_kernel.parent() == pair.target()))
    throw Error(ErrorKind::MismatchedDomains, "covering subgroups belong to the wrong groups");
  if (!is_normal(pair.source(), source_kernel))
    throw Error(ErrorKind::NotNormal, "source covering subgroup is not normal");
  if (!is_normal(pair.target(), target_kernel))
    throw Error(ErrorKind::NotNormal, "target covering subgroup is not normal");
  for (const auto* which : {&pair.f, &pair.g}) {
    for (Element k : source_kernel.members()) {
      if (!target_kernel.contains((*which)(k))) {
        throw Error(ErrorKind::NotLiftable,
                    std::string(which == &pair.f ? "f" : "g") + " maps covering element " +
                        std::to_string(k) + " to " + std::to_string((*which)(k)) +
                        ", outside the target covering subgroup");
      }
    }
  }
  return RegularCovering{source_kernel, target_kernel, quotient(pair.source(), source_kernel),
                         quotient(pair.target(), target_kernel)};
}

namespace detail {

inline Homomorphism induce(const Homomorphism& h, const RegularCovering& cov) {
  const auto& down = cov.source_deck;
  const auto& up = cov.target_deck;
  std::vector<Element> images;
  for (Element rep : down.representatives) images.push_back(up.projection(h(rep)));
  for (Element gamma : h.source().elements()) {
    if (images[down.projection(gamma)] != up.projection(h(gamma)))
      throw std::logic_error("induced deck map is not well defined; covering is not liftable");
  }
  return make_hom(down.group, up.group, std::move(images));
}

}  // namespace detail

/// The deck-level maps f̃*, g̃* : G/K_M → N/K_N with f̃*(j_M(γ)) = j_N(f(γ)).
/// Characters on the deck groups are trivial placeholders; only the maps are used.
inline CoincidencePair induced_pair(const CoincidencePair& pair, const RegularCovering& cov) {
  auto f = detail::induce(pair.f, cov);
  auto g = detail::induce(pair.g, cov);
  return make_coincidence_pair(f, g, trivial_character(f.source()), trivial_character(f.target()));
}

/// Deck elements δ with g̃*(δ)·ᾱ = ᾱ·f̃*(δ), ᾱ the projected class representative.
/// Its order T is the number of lifted coincidences over each point of the class.
inline Subgroup fiber_equalizer(const CoincidencePair& pair, const RegularCovering& cov,
                                const ReidemeisterClass& cls) {
  const auto deck = induced_pair(pair, cov);
  return twisted_equalizer(deck.f, deck.g, cov.target_deck.projection(cls.representative));
}

struct LiftedPartition {
  std::size_t fiber_size;   // T
  std::size_t copies;       // k = #j_M(stabilizer)
  std::size_t class_count;  // T / k
  std::vector<std::vector<Element>> cosets;
};

/// Splits the fiber equalizer into left cosets of j_M(stabilizer); each coset
/// is the basepoint fiber of one lifted class.
inline LiftedPartition lifted_class_partition(const CoincidencePair& pair, const RegularCovering& cov,
                                              const ReidemeisterClass& cls) {
  const auto fiber = fiber_equalizer(pair, cov, cls);
  const auto& deck = cov.source_deck.group;
  const auto projected = cov.source_deck.projection.image_of(cls.stabilizer);
  for (Element d : projected.members()) {
    if (!fiber.contains(d))
      throw std::logic_error("projected stabilizer is not contained in the fiber equalizer");
  }
  LiftedPartition out{fiber.order(), projected.order(), fiber.order() / projected.order(), {}};
  std::vector<bool> assigned(deck.order(), false);
  for (Element d : fiber.members()) {
    if (assigned[d]) continue;
    std::vector<Element> coset;
    for (Element p : projected.members()) {
      coset.push_back(deck.mul(d, p));
      assigned[coset.back()] = true;
    }
    std::ranges::sort(coset);
    out.cosets.push_back(std::move(coset));
  }
  return out;
}

/// A lifted class is defective iff some orientation-reversing stabilizer loop
/// lifts to a closed loop, i.e. lies in K_M.
inline bool upstairs_defective(const CoincidencePair& pair, const RegularCovering& cov,
                               const ReidemeisterClass& cls) {
  const auto c = combined_character(pair);
  return std::ranges::any_of(cls.stabilizer.members(), [&](Element s) {
    return cov.source_kernel.contains(s) && c(s) == -1;
  });
}

/// Semi-index of each lifted class: s·k, reduced mod 2 when the class is defective.
inline std::vector<std::size_t> lift_formula(const CoincidencePair& pair, const RegularCovering& cov,
                                             const ReidemeisterClass& cls,
                                             const ClassConfiguration& config) {
  const auto part = lifted_class_partition(pair, cov, cls);
  const std::size_t s = semi_index(config);
  const std::size_t value = cls.defective ? (s * part.copies) % 2 : s * part.copies;
  return std::vector<std::size_t>(part.class_count, value);
}

/// One lifted class as found by the oracle.
struct OracleClass {
  Element anchor;                        // smallest deck position over the basepoint
  std::vector<Element> basepoint_fiber;  // deck positions over the basepoint
  std::vector<std::size_t> points;       // config positions, one entry per lifted point
  std::vector<Element> labels;           // connecting-path labels from the anchor
  bool defective = false;
  std::size_t semi_index = 0;
};

struct LiftOracle {
  std::vector<Element> basepoint_fiber;            // deck positions of lifted coincidences
  std::vector<std::vector<Element>> point_fibers;  // per config point
  std::vector<OracleClass> classes;                // ordered by anchor
  std::vector<std::string> violations;

  std::vector<std::size_t> values() const {
    std::vector<std::size_t> out;
    for (const auto& c : classes) out.push_back(c.semi_index);
    return out;
  }
};

/// Builds the lifted coincidence set explicitly and classifies it by lifting
/// every downstairs Nielsen path.
///
/// Node (p, ε) is the lift over point p (p = 0 is the class basepoint, p = i+1
/// is config point i) at deck position ε. Lifting a loop γ from position ε
/// ends at ε·j_M(γ). The downstairs Nielsen paths from p to q are
/// ℓ_p⁻¹·s·ℓ_q for s in the class stabilizer, ℓ the point labels, and each
/// lift keeps its downstairs sign c(ℓ_p⁻¹·s·ℓ_q).
inline LiftOracle lift_oracle(const CoincidencePair& pair, const RegularCovering& cov,
                              const ReidemeisterClass& cls, const ClassConfiguration& config) {
  const FiniteGroup& g_grp = pair.source();
  const FiniteGroup& n_grp = pair.target();
  const FiniteGroup& deck = cov.source_deck.group;
  const Homomorphism& j_m = cov.source_deck.projection;
  const Homomorphism& j_n = cov.target_deck.projection;
  const auto c = combined_character(pair);
  const Element alpha = cls.representative;

  LiftOracle out;

  // Coincidences over the basepoint, straight from the lifted maps at group level.
  std::vector<int> over_base(deck.order(), -1);
  for (Element gamma : g_grp.elements()) {
    const bool coincides = j_n(n_grp.mul(pair.g(gamma), alpha)) == j_n(n_grp.mul(alpha, pair.f(gamma)));
    int& slot = over_base[j_m(gamma)];
    if (slot != -1 && slot != static_cast<int>(coincides))
      out.violations.push_back("lifted coincidence condition depends on the loop, not its deck class");
    slot = coincides ? 1 : 0;
  }
  for (Element d : deck.elements())
    if (over_base[d] == 1) out.basepoint_fiber.push_back(d);

  std::vector<Element> stab;
  for (Element gamma : g_grp.elements())
    if (n_grp.mul(pair.g(gamma), alpha) == n_grp.mul(alpha, pair.f(gamma))) stab.push_back(gamma);

  const std::size_t points = config.size() + 1;
  std::vector<Element> label(points, kIdentity);
  for (std::size_t i = 0; i < config.size(); ++i) label[i + 1] = config.labels[i];

  const std::size_t d_order = deck.order();
  auto node = [&](std::size_t p, Element eps) { return p * d_order + eps; };
  const std::size_t nodes = points * d_order;

  std::vector<bool> coincidence(nodes, false);
  for (Element d : out.basepoint_fiber) coincidence[node(0, d)] = true;
  out.point_fibers.resize(config.size());
  for (std::size_t i = 0; i < config.size(); ++i) {
    for (Element d : out.basepoint_fiber) coincidence[node(i + 1, deck.mul(d, j_m(label[i + 1])))] = true;
    for (Element e : deck.elements())
      if (coincidence[node(i + 1, e)]) out.point_fibers[i].push_back(e);
  }

  std::vector<std::size_t> parent(nodes);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  struct Edge {
    std::size_t to;
    Element path;
  };
  std::vector<std::vector<Edge>> adjacency(nodes);
  std::vector<bool> self_reducing(nodes, false);

  for (std::size_t p = 0; p < points; ++p) {
    for (Element eps : deck.elements()) {
      const std::size_t from = node(p, eps);
      if (!coincidence[from]) continue;
      for (std::size_t q = 0; q < points; ++q) {
        for (Element s : stab) {
          const Element path = g_grp.mul(g_grp.mul(g_grp.inv(label[p]), s), label[q]);
          const std::size_t to = node(q, deck.mul(eps, j_m(path)));
          if (!coincidence[to]) {
            out.violations.push_back("a lifted Nielsen path ends off the lifted coincidence set");
            continue;
          }
          adjacency[from].push_back({to, path});
          parent[find(from)] = find(to);
          if (to == from && c(path) == -1) self_reducing[from] = true;
        }
      }
    }
  }

  std::map<std::size_t, std::size_t> class_of_root;
  for (Element d : out.basepoint_fiber) {
    const std::size_t root = find(node(0, d));
    if (!class_of_root.contains(root)) {
      class_of_root.emplace(root, out.classes.size());
      out.classes.push_back(OracleClass{d, {}, {}, {}});
    }
    out.classes[class_of_root.at(root)].basepoint_fiber.push_back(d);
  }

  std::vector<std::optional<Element>> path_label(nodes);
  for (auto& lifted : out.classes) {
    const std::size_t start = node(0, lifted.anchor);
    path_label[start] = kIdentity;
    std::vector<std::size_t> frontier{start};
    bool sign_conflict = false;
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      const std::size_t x = frontier[head];
      lifted.defective = lifted.defective || self_reducing[x];
      for (const auto& edge : adjacency[x]) {
        const Element through = g_grp.mul(*path_label[x], edge.path);
        if (!path_label[edge.to]) {
          path_label[edge.to] = through;
          frontier.push_back(edge.to);
        } else if (c(*path_label[edge.to]) != c(through)) {
          sign_conflict = true;
        }
      }
    }
    // A sign conflict is a closed orientation-reversing lifted loop.
    if (sign_conflict != lifted.defective)
      out.violations.push_back("cycle parity and self-reducing loops disagree on defectiveness");
    std::ranges::sort(frontier);
    for (std::size_t x : frontier) {
      const std::size_t p = x / d_order;
      if (p == 0) continue;
      lifted.points.push_back(p - 1);
      lifted.labels.push_back(*path_label[x]);
    }
    ClassConfiguration up{lifted.anchor, lifted.defective, c, lifted.labels};
    lifted.semi_index = semi_index(up);
  }

  for (std::size_t x = 0; x < nodes; ++x)
    if (coincidence[x] && !path_label[x])
      out.violations.push_back("lifted coincidence not reached from any basepoint lift");

  // Deck transformations carry lifted classes onto lifted classes.
  for (const auto& from_cls : out.classes) {
    for (const auto& to_cls : out.classes) {
      const Element shift = deck.mul(to_cls.anchor, deck.inv(from_cls.anchor));
      const std::size_t target_root = find(node(0, to_cls.anchor));
      for (std::size_t x = 0; x < nodes; ++x) {
        if (!coincidence[x] || find(x) != find(node(0, from_cls.anchor))) continue;
        const std::size_t moved = node(x / d_order, deck.mul(shift, static_cast<Element>(x % d_order)));
        if (!coincidence[moved] || find(moved) != target_root)
          out.violations.push_back("deck translation does not map lifted classes to lifted classes");
      }
    }
  }
  return out;
}

struct DoubleCoverClass {
  Element representative;
  bool defective;
  std::size_t semi_index;
  std::size_t lifted_classes;
  std::vector<std::size_t> formula;
  std::vector<std::size_t> oracle;
  bool as_expected;
};

struct DoubleCoverReport {
  RegularCovering covering;
  std::vector<DoubleCoverClass> classes;
  std::size_t nielsen_down = 0;
  std::size_t nielsen_up = 0;
  bool per_class_ok = true;
  bool up_even = true;
  bool down_bounds_up = true;
  bool zero_up_forces_defective = true;
  bool generic_agrees = true;

  bool passed() const {
    return per_class_ok && up_even && down_bounds_up && zero_up_forces_defective && generic_agrees;
  }
};

/// Orientation double cover of a nonorientable M over an orientable N:
/// K_M = ker w_M, and N is covered by itself.
///
/// `configs` may omit classes; an omitted class has no coincidence points.
inline DoubleCoverReport double_orientable_cover(const CoincidencePair& pair,
                                                 std::span<const ClassConfiguration> configs) {
  if (pair.source_orientation.is_trivial())
    throw Error(ErrorKind::SourceOrientable, "source orientation character is trivial");
  if (!pair.target_orientation.is_trivial())
    throw Error(ErrorKind::TargetNonorientable, "target orientation character is nontrivial");

  DoubleCoverReport report{
      check_liftable(pair, pair.source_orientation.kernel(), whole_group(pair.target())), {}};
  const auto classes = reidemeister_classes(pair);
  const auto c = combined_character(pair);
  for (const auto& cls : classes) {
    ClassConfiguration config{cls.representative, cls.defective, c, {}};
    for (const auto& given : configs)
      if (given.representative == cls.representative) config = given;
    const std::size_t s = semi_index(config);
    const auto part = lifted_class_partition(pair, report.covering, cls);
    DoubleCoverClass row{cls.representative, cls.defective, s, part.class_count,
                         lift_formula(pair, report.covering, cls, config),
                         lift_oracle(pair, report.covering, cls, config).values(), false};
    // Defective classes merge into one lifted class of semi-index 0; the
    // others split into two lifted classes that each keep s.
    const std::vector<std::size_t> expected =
        cls.defective ? std::vector<std::size_t>{0} : std::vector<std::size_t>{s, s};
    row.as_expected = row.lifted_classes == expected.size() && row.oracle == expected;
    report.per_class_ok = report.per_class_ok && row.as_expected;
    report.generic_agrees = report.generic_agrees && row.formula == row.oracle;
    if (s > 0) ++report.nielsen_down;
    for (std::size_t v : row.oracle)
      if (v > 0) ++report.nielsen_up;
    report.classes.push_back(std::move(row));
  }
  report.up_even = report.nielsen_up % 2 == 0;
  report.down_bounds_up = 2 * report.nielsen_down >= report.nielsen_up;
  if (report.nielsen_up == 0) {
    for (const auto& row : report.classes)
      if (row.semi_index > 0 && !row.defective) report.zero_up_forces_defective = false;
  }
  return report;
}

}  // namespace nielsen
