#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "nielsen/covering.hpp"
#include "nielsen/instance.hpp"

namespace nielsen {

struct CheckResult {
  std::string name;
  CheckStatus status;
  std::string detail;
};

inline CheckResult pass(std::string name) { return {std::move(name), CheckStatus::Pass, {}}; }
inline CheckResult not_applicable(std::string name, std::string why) {
  return {std::move(name), CheckStatus::NotApplicable, std::move(why)};
}
inline CheckResult fail(std::string name, std::string why) {
  return {std::move(name), CheckStatus::Fail, std::move(why)};
}

/// Orbits are disjoint and cover the target group.
inline CheckResult check_partition(const CoincidencePair& pair, std::span<const ReidemeisterClass> classes) {
  std::vector<int> hits(pair.target().order(), 0);
  for (const auto& cls : classes)
    for (Element e : cls.orbit) ++hits[e];
  for (Element e : pair.target().elements()) {
    if (hits[e] != 1)
      return fail("partition", "element " + std::to_string(e) + " lies in " + std::to_string(hits[e]) + " classes");
  }
  return pass("partition");
}

/// |orbit|·|stabilizer at α| = |G| for every α in every orbit.
inline CheckResult check_orbit_stabilizer(const CoincidencePair& pair,
                                          std::span<const ReidemeisterClass> classes) {
  for (const auto& cls : classes) {
    for (Element alpha : cls.orbit) {
      const auto stab = twisted_equalizer(pair.f, pair.g, alpha);
      if (cls.orbit.size() * stab.order() != pair.source().order())
        return fail("orbit_stabilizer", "fails at element " + std::to_string(alpha));
    }
  }
  return pass("orbit_stabilizer");
}

/// Defectiveness computed from every representative agrees.
inline CheckResult check_defect_invariance(const CoincidencePair& pair,
                                           std::span<const ReidemeisterClass> classes) {
  for (const auto& cls : classes) {
    for (Element alpha : cls.orbit) {
      if (is_defective_at(pair, alpha) != cls.defective)
        return fail("defect_invariance", "class " + std::to_string(cls.representative) +
                                             " changes at representative " + std::to_string(alpha));
    }
  }
  return pass("defect_invariance");
}

/// On a stabilizer, w_N(f(γ)) = w_N(g(γ)).
inline CheckResult check_stabilizer_signs(const CoincidencePair& pair,
                                          std::span<const ReidemeisterClass> classes) {
  const auto& w = pair.target_orientation;
  for (const auto& cls : classes) {
    for (Element gamma : cls.stabilizer.members()) {
      if (w(pair.f(gamma)) != w(pair.g(gamma)))
        return fail("stabilizer_signs", "class " + std::to_string(cls.representative) + ", element " +
                                            std::to_string(gamma));
    }
  }
  return pass("stabilizer_signs");
}

/// semi-index ≡ #points (mod 2), and equals #points mod 2 on defective classes.
inline CheckResult check_semiindex_parity(std::span<const ClassConfiguration> configs) {
  for (const auto& config : configs) {
    const std::size_t s = semi_index(config);
    if (s % 2 != config.size() % 2 || (config.defective && s != config.size() % 2))
      return fail("semiindex_parity", "class " + std::to_string(config.representative));
  }
  return pass("semiindex_parity");
}

inline constexpr std::size_t kMaxPermutedPoints = 8;

/// The free count does not depend on the order in which points are listed.
inline CheckResult check_permutation_invariance(std::span<const ClassConfiguration> configs) {
  for (const auto& config : configs) {
    if (config.size() > kMaxPermutedPoints) continue;
    const std::size_t expected = semi_index(config);
    std::vector<std::size_t> order(config.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    do {
      ClassConfiguration permuted = config;
      for (std::size_t i = 0; i < order.size(); ++i) permuted.labels[i] = config.labels[order[i]];
      if (semi_index(permuted) != expected)
        return fail("permutation_invariance", "class " + std::to_string(config.representative));
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return pass("permutation_invariance");
}

/// Per-class result of lifting through a covering.
struct LiftRow {
  Element representative;
  LiftedPartition partition;
  bool defective_up;
  std::vector<std::size_t> formula;
  LiftOracle oracle;
};

inline std::vector<LiftRow> lift_rows(const Instance& inst) {
  std::vector<LiftRow> rows;
  if (!inst.covering) return rows;
  for (const auto& cls : inst.classes) {
    const auto config = inst.config_for(cls);
    rows.push_back(LiftRow{cls.representative, lifted_class_partition(inst.pair, *inst.covering, cls),
                           upstairs_defective(inst.pair, *inst.covering, cls),
                           lift_formula(inst.pair, *inst.covering, cls, config),
                           lift_oracle(inst.pair, *inst.covering, cls, config)});
  }
  return rows;
}

/// The closed-form lifted semi-index agrees with the explicit enumeration.
inline CheckResult check_lift_formula(std::span<const LiftRow> rows) {
  if (rows.empty()) return not_applicable("lift_formula", "no covering");
  for (const auto& row : rows) {
    if (!row.oracle.violations.empty())
      return fail("lift_formula", "class " + std::to_string(row.representative) + ": " + row.oracle.violations.front());
    if (row.formula != row.oracle.values())
      return fail("lift_formula", "class " + std::to_string(row.representative) + ": formula and oracle differ");
  }
  return pass("lift_formula");
}

/// Every fiber has T lifted coincidences, split into T/k lifted classes of k
/// copies each; each lifted class holds exactly k copies of every point.
inline CheckResult check_fiber_structure(std::span<const LiftRow> rows, const Instance& inst) {
  if (rows.empty()) return not_applicable("fiber_structure", "no covering");
  for (const auto& row : rows) {
    const auto& part = row.partition;
    const auto& oracle = row.oracle;
    auto bad = [&](const std::string& what) {
      return fail("fiber_structure", "class " + std::to_string(row.representative) + ": " + what);
    };
    if (part.copies * part.class_count != part.fiber_size) return bad("T != k * classes");
    if (oracle.basepoint_fiber.size() != part.fiber_size) return bad("basepoint fiber size != T");
    for (const auto& fiber : oracle.point_fibers)
      if (fiber.size() != part.fiber_size) return bad("point fiber size != T");
    if (oracle.classes.size() != part.class_count) return bad("lifted class count != T/k");
    std::vector<std::vector<Element>> oracle_cosets;
    for (const auto& lifted : oracle.classes) {
      if (lifted.basepoint_fiber.size() != part.copies) return bad("lifted class does not hold k basepoint lifts");
      std::vector<std::size_t> per_point(oracle.point_fibers.size(), 0);
      for (std::size_t p : lifted.points) ++per_point[p];
      if (std::ranges::any_of(per_point, [&](std::size_t n) { return n != part.copies; }))
        return bad("lifted class does not hold k copies of each point");
      oracle_cosets.push_back(lifted.basepoint_fiber);
    }
    std::ranges::sort(oracle_cosets);
    auto cosets = part.cosets;
    std::ranges::sort(cosets);
    if (cosets != oracle_cosets) return bad("oracle classes are not the cosets of j(stabilizer)");
    const auto cls_it = std::ranges::find(inst.classes, row.representative, &ReidemeisterClass::representative);
    if (!cls_it->defective && row.defective_up) return bad("non-defective class has a defective lift");
    for (const auto& lifted : oracle.classes)
      if (lifted.defective != row.defective_up) return bad("oracle and criterion disagree on lifted defectiveness");
  }
  return pass("fiber_structure");
}

inline CheckResult check_root_theorems(const CoincidencePair& pair) {
  if (!pair.g.is_trivial()) return not_applicable("root_theorems", "g is not constant");
  const auto report = verify_root_theorems(pair.f, pair.source_orientation, pair.target_orientation);
  if (!report.passed())
    return fail("root_theorems", "type " + std::string(to_string(report.type)) + " with " +
                                     std::to_string(report.defective_count) + " defective root classes");
  return pass("root_theorems");
}

inline CheckResult check_center_propagation(const CoincidencePair& pair) {
  const auto report = center_propagation_check(pair);
  switch (report.status) {
    case CheckStatus::Pass: return pass("center_propagation");
    case CheckStatus::Fail:
      return fail("center_propagation", std::to_string(report.defective_count) + " of " +
                                            std::to_string(report.class_count) + " classes defective");
    case CheckStatus::NotApplicable: break;
  }
  return not_applicable("center_propagation", "image of f is not central");
}

/// No orientation-true map from a nonorientable to an orientable manifold.
inline CheckResult check_type_consistency(const CoincidencePair& pair) {
  const auto type = orientation_type(pair.f, pair.source_orientation, pair.target_orientation);
  if (pair.source_orientation.is_trivial() && type == MapType::III)
    return fail("type_consistency", "Type III with orientable source");
  if (!pair.source_orientation.is_trivial() && pair.target_orientation.is_trivial() && type == MapType::I)
    return fail("type_consistency", "orientation-true map from nonorientable to orientable");
  return pass("type_consistency");
}

inline std::vector<ClassConfiguration> all_configs(const Instance& inst) {
  std::vector<ClassConfiguration> out;
  for (const auto& cls : inst.classes) out.push_back(inst.config_for(cls));
  return out;
}

inline CheckResult check_double_cover(const Instance& inst) {
  const auto& pair = inst.pair;
  if (pair.source_orientation.is_trivial() || !pair.target_orientation.is_trivial())
    return not_applicable("double_cover", "needs nonorientable source and orientable target");
  const auto configs = all_configs(inst);
  const auto report = double_orientable_cover(pair, configs);
  if (!report.per_class_ok) return fail("double_cover", "lifted classes do not split or merge as expected");
  if (!report.generic_agrees) return fail("double_cover", "formula and oracle differ");
  if (!report.up_even) return fail("double_cover", "upstairs Nielsen number is odd");
  if (!report.down_bounds_up) return fail("double_cover", "N(f,g) < N(lift)/2");
  if (!report.zero_up_forces_defective)
    return fail("double_cover", "upstairs Nielsen number is 0 but an essential class is not defective");
  return pass("double_cover");
}

struct VerifyOptions {
  bool exhaustive = false;  // also run permutation invariance on every config
};

inline std::vector<CheckResult> verify_instance(const Instance& inst, const VerifyOptions& options = {}) {
  const auto configs = all_configs(inst);
  std::vector<CheckResult> results{
      check_partition(inst.pair, inst.classes),
      check_orbit_stabilizer(inst.pair, inst.classes),
      check_defect_invariance(inst.pair, inst.classes),
      check_stabilizer_signs(inst.pair, inst.classes),
      check_type_consistency(inst.pair),
      check_semiindex_parity(configs),
  };
  results.push_back(options.exhaustive ? check_permutation_invariance(configs)
                                       : not_applicable("permutation_invariance", "run with --oracle"));
  const auto rows = lift_rows(inst);
  results.push_back(check_lift_formula(rows));
  results.push_back(check_fiber_structure(rows, inst));
  results.push_back(check_root_theorems(inst.pair));
  results.push_back(check_center_propagation(inst.pair));
  results.push_back(check_double_cover(inst));
  return results;
}

}  // namespace nielsen
