#include <gtest/gtest.h>

#include <set>

#include "nielsen/nielsen.hpp"
#include "oracles.hpp"

namespace nielsen {
namespace {

using catalog::cyclic;
using catalog::dihedral;

OrientationCharacter alternating(const FiniteGroup& g) {
  std::vector<int> signs;
  for (Element a : g.elements()) signs.push_back(a % 2 == 0 ? 1 : -1);
  return make_character(g, signs);
}

Homomorphism mod2() { return make_hom(cyclic(4), cyclic(2), {0, 1, 0, 1}); }

CoincidencePair plain(const Homomorphism& f, const Homomorphism& g) {
  return make_coincidence_pair(f, g, trivial_character(f.source()), trivial_character(f.target()));
}

std::vector<std::size_t> sizes(const std::vector<ReidemeisterClass>& classes) {
  std::vector<std::size_t> out;
  for (const auto& c : classes) out.push_back(c.orbit.size());
  std::ranges::sort(out);
  return out;
}

TEST(CombinedCharacter, Examples) {
  const auto z4 = cyclic(4);
  const auto w = alternating(z4);
  const auto pair = make_coincidence_pair(mod2(), mod2(), w, trivial_character(cyclic(2)));
  EXPECT_EQ(combined_character(pair), w);
  EXPECT_EQ(combined_character(pair)(1), -1);

  const auto s3 = dihedral(3);
  const auto sign = make_character(s3, {1, 1, 1, -1, -1, -1});
  const auto id = identity_hom(s3);
  EXPECT_TRUE(combined_character(make_coincidence_pair(id, id, sign, sign)).is_trivial());
}

TEST(ReidemeisterClasses, Examples) {
  const auto s3 = dihedral(3);
  const auto id = identity_hom(s3);
  EXPECT_EQ(sizes(reidemeister_classes(plain(id, id))), (std::vector<std::size_t>{1, 2, 3}));

  const auto constant = trivial_hom(s3, s3);
  EXPECT_EQ(sizes(reidemeister_classes(plain(constant, constant))), std::vector<std::size_t>(6, 1));

  const auto z4 = cyclic(4);
  const auto classes = reidemeister_classes(plain(identity_hom(z4), make_hom(z4, z4, {0, 3, 2, 1})));
  ASSERT_EQ(classes.size(), 2u);
  EXPECT_EQ(classes[0].orbit, (std::vector<Element>{0, 2}));
  EXPECT_EQ(classes[1].orbit, (std::vector<Element>{1, 3}));
  EXPECT_EQ(class_index_of(classes, 3), 1u);
}

TEST(ReidemeisterClasses, MatchRelationOracleOnCatalogPairs) {
  for (const auto& m : catalog::entries()) {
    if (m.group.order() > 6) continue;
    for (const auto& n : catalog::entries()) {
      if (n.group.order() > 6) continue;
      const auto homs = enumerate_homs(m.group, n.group);
      for (const auto& f : homs)
        for (const auto& g : homs) {
          const auto pair = plain(f, g);
          const auto classes = reidemeister_classes(pair);
          std::vector<std::set<Element>> found;
          for (const auto& c : classes) {
            found.emplace_back(c.orbit.begin(), c.orbit.end());
            EXPECT_EQ(c.representative, c.orbit.front());
            EXPECT_EQ(c.stabilizer, twisted_equalizer(f, g, c.representative));
          }
          EXPECT_EQ(found, oracle::classes_by_relation(pair)) << m.name << " -> " << n.name;
        }
    }
  }
}

TEST(IsDefective, Examples) {
  const auto z4 = cyclic(4);
  const auto pair = make_coincidence_pair(mod2(), mod2(), alternating(z4), trivial_character(cyclic(2)));
  const auto classes = reidemeister_classes(pair);
  ASSERT_EQ(classes[0].representative, 0u);
  EXPECT_TRUE(classes[0].stabilizer.is_whole());
  EXPECT_TRUE(is_defective(pair, classes[0]));

  const auto s3 = dihedral(3);
  const auto sign = make_character(s3, {1, 1, 1, -1, -1, -1});
  const auto id = identity_hom(s3);
  const auto oriented = make_coincidence_pair(id, id, sign, sign);
  for (const auto& cls : reidemeister_classes(oriented)) EXPECT_FALSE(is_defective(oriented, cls));

  for (const auto& cls : reidemeister_classes(plain(id, id))) EXPECT_FALSE(cls.defective);
}

TEST(OrientationType, Examples) {
  const auto s3 = dihedral(3);
  const auto sign = make_character(s3, {1, 1, 1, -1, -1, -1});
  EXPECT_EQ(orientation_type(identity_hom(s3), sign, sign), MapType::I);
  EXPECT_EQ(orientation_type(mod2(), alternating(cyclic(4)), trivial_character(cyclic(2))), MapType::II);
  const auto z2 = cyclic(2);
  EXPECT_EQ(orientation_type(trivial_hom(z2, z2), alternating(z2), trivial_character(z2)), MapType::III);
  EXPECT_EQ(to_string(MapType::III), "III");
}

TEST(RootTheorems, Examples) {
  const auto z2 = cyclic(2);
  const auto type3 = verify_root_theorems(trivial_hom(z2, z2), alternating(z2), trivial_character(z2));
  EXPECT_EQ(type3.type, MapType::III);
  EXPECT_EQ(type3.defective_count, type3.root_classes.size());
  EXPECT_TRUE(type3.passed());

  const auto s3 = dihedral(3);
  const auto plain_root = verify_root_theorems(identity_hom(s3), trivial_character(s3), trivial_character(s3));
  EXPECT_EQ(plain_root.type, MapType::I);
  EXPECT_EQ(plain_root.defective_count, 0u);

  const auto type2 = verify_root_theorems(mod2(), alternating(cyclic(4)), trivial_character(z2));
  EXPECT_EQ(type2.type, MapType::II);
  // f is onto, so there is a single root class
  EXPECT_EQ(type2.root_classes.size(), 1u);
  EXPECT_EQ(type2.defective_count, 0u);
  EXPECT_TRUE(type2.passed());
}

TEST(CenterPropagation, Examples) {
  const auto z4 = cyclic(4);
  const auto abelian = make_coincidence_pair(mod2(), mod2(), alternating(z4), trivial_character(cyclic(2)));
  const auto report = center_propagation_check(abelian);
  EXPECT_EQ(report.status, CheckStatus::Pass);
  EXPECT_EQ(report.defective_count, report.class_count);
  EXPECT_GT(report.defective_count, 0u);

  const auto trivial_target = make_coincidence_pair(trivial_hom(z4, FiniteGroup{}), trivial_hom(z4, FiniteGroup{}),
                                                    alternating(z4), trivial_character(FiniteGroup{}));
  EXPECT_EQ(center_propagation_check(trivial_target).status, CheckStatus::Pass);

  const auto s3 = dihedral(3);
  EXPECT_EQ(center_propagation_check(plain(identity_hom(s3), identity_hom(s3))).status, CheckStatus::NotApplicable);
}

TEST(ClassProperties, HoldOnAllCatalogPairsWithCharacters) {
  for (const auto& m : catalog::entries()) {
    if (m.group.order() > 4) continue;
    for (const auto& n : catalog::entries()) {
      if (n.group.order() > 4) continue;
      const auto homs = enumerate_homs(m.group, n.group);
      for (const auto& f : homs)
        for (const auto& g : homs)
          for (const auto& wm : enumerate_characters(m.group))
            for (const auto& wn : enumerate_characters(n.group)) {
              const auto pair = make_coincidence_pair(f, g, wm, wn);
              const auto classes = reidemeister_classes(pair);
              EXPECT_EQ(check_partition(pair, classes).status, CheckStatus::Pass);
              EXPECT_EQ(check_orbit_stabilizer(pair, classes).status, CheckStatus::Pass);
              EXPECT_EQ(check_defect_invariance(pair, classes).status, CheckStatus::Pass);
              EXPECT_EQ(check_stabilizer_signs(pair, classes).status, CheckStatus::Pass);
              EXPECT_NE(check_center_propagation(pair).status, CheckStatus::Fail);
            }
    }
  }
}

TEST(MakeCoincidencePair, RejectsMismatchedDomains) {
  EXPECT_THROW(make_coincidence_pair(mod2(), identity_hom(cyclic(2)), trivial_character(cyclic(4)),
                                     trivial_character(cyclic(2))),
               Error);
}

}  // namespace
}  // namespace nielsen
