#pragma once

#include <string_view>
#include <vector>

#include "nielsen/group.hpp"

namespace nielsen {

/// A pair of maps f, g: M → N seen through their induced homomorphisms on
/// fundamental groups, plus the orientation characters of M and N.
struct CoincidencePair {
  Homomorphism f;
  Homomorphism g;
  OrientationCharacter source_orientation;
  OrientationCharacter target_orientation;

  const FiniteGroup& source() const noexcept { return f.source(); }
  const FiniteGroup& target() const noexcept { return f.target(); }
};

inline CoincidencePair make_coincidence_pair(Homomorphism f, Homomorphism g, OrientationCharacter w_source,
                                 OrientationCharacter w_target) {
  if (!(f.source() == g.source()) || !(f.target() == g.target()))
    throw Error(ErrorKind::MismatchedDomains, "f and g must share source and target");
  if (!(w_source.group() == f.source()))
    throw Error(ErrorKind::MismatchedDomains, "source character is not on the source group");
  if (!(w_target.group() == f.target()))
    throw Error(ErrorKind::MismatchedDomains, "target character is not on the target group");
  return CoincidencePair{std::move(f), std::move(g), std::move(w_source), std::move(w_target)};
}

/// c(γ) = w_M(γ)·w_N(f(γ)). A loop with c = −1 is graph-orientation-reversing.
inline OrientationCharacter combined_character(const CoincidencePair& pair) {
  return pair.source_orientation * pullback(pair.target_orientation, pair.f);
}

/// One orbit of γ·α = g(γ)·α·f(γ)⁻¹ on the target group.
struct ReidemeisterClass {
  Element representative;  // minimal index in the orbit
  std::vector<Element> orbit;
  Subgroup stabilizer;
  bool defective;
};

/// The image of α under the twisted action of γ.
inline Element twisted_action(const CoincidencePair& pair, Element gamma, Element twist) {
  const FiniteGroup& n = pair.target();
  return n.mul(n.mul(pair.g(gamma), twist), n.inv(pair.f(gamma)));
}

/// Defective iff some stabilizer element at `twist` is graph-orientation-reversing.
inline bool is_defective_at(const CoincidencePair& pair, Element twist) {
  const auto stab = twisted_equalizer(pair.f, pair.g, twist);
  const auto c = combined_character(pair);
  return std::ranges::any_of(stab.members(), [&](Element s) { return c(s) == -1; });
}

inline bool is_defective(const CoincidencePair& pair, const ReidemeisterClass& cls) {
  const auto c = combined_character(pair);
  return std::ranges::any_of(cls.stabilizer.members(), [&](Element s) { return c(s) == -1; });
}

/// Reidemeister classes ordered by canonical representative.
inline std::vector<ReidemeisterClass> reidemeister_classes(const CoincidencePair& pair) {
  const FiniteGroup& n = pair.target();
  std::vector<bool> seen(n.order(), false);
  std::vector<ReidemeisterClass> classes;
  for (Element alpha : n.elements()) {
    if (seen[alpha]) continue;
    std::vector<Element> orbit;
    for (Element gamma : pair.source().elements()) {
      Element beta = twisted_action(pair, gamma, alpha);
      if (!seen[beta]) {
        seen[beta] = true;
        orbit.push_back(beta);
      }
    }
    std::ranges::sort(orbit);
    ReidemeisterClass cls{alpha, std::move(orbit), twisted_equalizer(pair.f, pair.g, alpha), false};
    cls.defective = is_defective(pair, cls);
    classes.push_back(std::move(cls));
  }
  return classes;
}

/// Index into `classes` of the class containing `twist`.
inline std::size_t class_index_of(std::span<const ReidemeisterClass> classes, Element twist) {
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (std::ranges::binary_search(classes[i].orbit, twist)) return i;
  throw Error(ErrorKind::IndexOutOfRange, "element " + std::to_string(twist) + " lies in no class");
}

enum class MapType { I, II, III };

constexpr std::string_view to_string(MapType type) {
  switch (type) {
    case MapType::I: return "I";
    case MapType::II: return "II";
    case MapType::III: return "III";
  }
  return "?";
}

/// Types I and II are the orientable maps.
constexpr bool is_orientable(MapType type) { return type != MapType::III; }

/// Type I: orientation-true. Type III: some orientation-reversing loop maps to
/// the identity. Type II: neither.
inline MapType orientation_type(const Homomorphism& f, const OrientationCharacter& w_source,
                                const OrientationCharacter& w_target) {
  if (!(w_source.group() == f.source()) || !(w_target.group() == f.target()))
    throw Error(ErrorKind::MismatchedDomains, "characters do not match the homomorphism");
  bool orientation_true = true;
  bool reversing_to_identity = false;
  for (Element gamma : f.source().elements()) {
    orientation_true = orientation_true && w_source(gamma) == w_target(f(gamma));
    reversing_to_identity = reversing_to_identity || (f(gamma) == kIdentity && w_source(gamma) == -1);
  }
  if (orientation_true) return MapType::I;
  return reversing_to_identity ? MapType::III : MapType::II;
}

struct RootTheoremReport {
  MapType type;
  std::vector<ReidemeisterClass> root_classes;
  std::size_t defective_count = 0;
  bool orientable_has_none = true;  // orientable ⇒ no defective root class
  bool type3_has_all = true;        // Type III ⇒ every root class defective

  bool passed() const { return orientable_has_none && type3_has_all; }
};

/// Root classes are the classes of (f, constant map).
inline RootTheoremReport verify_root_theorems(const Homomorphism& f,
                                              const OrientationCharacter& w_source,
                                              const OrientationCharacter& w_target) {
  RootTheoremReport report{orientation_type(f, w_source, w_target), {}};
  const auto pair = make_coincidence_pair(f, trivial_hom(f.source(), f.target()), w_source, w_target);
  report.root_classes = reidemeister_classes(pair);
  for (const auto& cls : report.root_classes)
    if (cls.defective) ++report.defective_count;
  if (is_orientable(report.type)) report.orientable_has_none = report.defective_count == 0;
  if (report.type == MapType::III)
    report.type3_has_all = report.defective_count == report.root_classes.size();
  return report;
}

enum class CheckStatus { Pass, Fail, NotApplicable };

constexpr std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::NotApplicable: return "n/a";
  }
  return "?";
}

struct CenterPropagationReport {
  bool image_central = false;
  std::size_t defective_count = 0;
  std::size_t class_count = 0;
  CheckStatus status = CheckStatus::NotApplicable;
};

/// When f lands in the center of the target, defectiveness is all-or-nothing.
inline CenterPropagationReport center_propagation_check(const CoincidencePair& pair) {
  CenterPropagationReport report;
  const auto z = center(pair.target());
  report.image_central =
      std::ranges::all_of(pair.source().elements(), [&](Element a) { return z.contains(pair.f(a)); });
  if (!report.image_central) return report;
  const auto classes = reidemeister_classes(pair);
  report.class_count = classes.size();
  for (const auto& cls : classes)
    if (cls.defective) ++report.defective_count;
  const bool uniform = report.defective_count == 0 || report.defective_count == report.class_count;
  report.status = uniform ? CheckStatus::Pass : CheckStatus::Fail;
  return report;
}

}  // namespace nielsen
