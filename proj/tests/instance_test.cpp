#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "nielsen/nielsen.hpp"

namespace nielsen {
namespace {

std::string read(const std::string& name) {
  std::ifstream in(std::string(NIELSEN_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorKind kind_of(std::string_view text) {
  try {
    parse_instance(text);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::Malformed;
}

std::size_t line_of(std::string_view text) {
  try {
    parse_instance(text);
  } catch (const InstanceError& e) {
    return e.line();
  }
  return 0;
}

constexpr std::string_view kMinimal = R"(group M order 2
table
0 1
1 0
endtable
group N order 2
table
0 1
1 0
endtable
char wM : + -
char wN : + +
hom f : M -> N : 0 1
hom g : M -> N : 0 0
)";

TEST(ParseInstance, MinimalFile) {
  const auto inst = parse_instance(kMinimal);
  EXPECT_EQ(inst.pair.source().order(), 2u);
  EXPECT_EQ(inst.pair.f(1), 1u);
  EXPECT_TRUE(inst.pair.g.is_trivial());
  EXPECT_EQ(inst.pair.source_orientation(1), -1);
  EXPECT_EQ(inst.classes.size(), 1u);
  EXPECT_FALSE(inst.covering);
  EXPECT_FALSE(inst.configs);
}

TEST(ParseInstance, SectionsInAnyOrderWithComments) {
  std::string text(kMinimal);
  const auto split = text.find("char wM");
  const std::string reordered = "# leading comment\n" + text.substr(split) + text.substr(0, split) + "  # trailing\n";
  EXPECT_EQ(emit_instance(parse_instance(reordered)), emit_instance(parse_instance(kMinimal)));
}

TEST(ParseInstance, Errors) {
  std::string no_endtable(kMinimal);
  no_endtable.erase(no_endtable.find("endtable"), 9);
  EXPECT_EQ(kind_of(no_endtable), ErrorKind::SyntaxError);

  std::string bad_image(kMinimal);
  bad_image.replace(bad_image.find("0 1\n", bad_image.find("hom f")), 3, "0 2");
  EXPECT_EQ(kind_of(bad_image), ErrorKind::ValidationError);
  EXPECT_EQ(line_of(bad_image), 13u);

  std::string missing(kMinimal);
  missing.erase(missing.find("hom g"));
  EXPECT_EQ(kind_of(missing), ErrorKind::MissingSection);

  std::string bad_sign(kMinimal);
  bad_sign.replace(bad_sign.find("+ -"), 3, "+ x");
  EXPECT_EQ(kind_of(bad_sign), ErrorKind::SyntaxError);

  std::string not_multiplicative(kMinimal);
  not_multiplicative.replace(not_multiplicative.find("+ +"), 3, "- +");
  EXPECT_EQ(kind_of(not_multiplicative), ErrorKind::ValidationError);

  const std::string duplicate = std::string(kMinimal) + "config\nclass 0 : labels 0\nclass 1 : labels 1\nendconfig\n";
  EXPECT_EQ(kind_of(duplicate), ErrorKind::ValidationError);

  const std::string not_liftable = std::string(kMinimal) + "covering : KM { 0 1 } KN { 0 }\n";
  EXPECT_EQ(kind_of(not_liftable), ErrorKind::ValidationError);
}

TEST(ParseInstance, WorkedFixture) {
  const auto inst = parse_instance(read("worked_z2.inst"));
  ASSERT_TRUE(inst.covering);
  ASSERT_TRUE(inst.configs);
  EXPECT_EQ(inst.covering->source_kernel.order(), 1u);
  EXPECT_EQ(inst.configs->front().labels, (std::vector<Element>{0}));
  EXPECT_TRUE(inst.classes.front().defective);
}

TEST(EmitInstance, RoundTrips) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto text = random_instance(seed, 8);
    const auto once = emit_instance(parse_instance(text));
    EXPECT_EQ(emit_instance(parse_instance(once)), once) << seed;
    EXPECT_EQ(text.substr(text.find('\n') + 1), once) << seed;
  }
  const auto fixture = parse_instance(read("worked_z2.inst"));
  EXPECT_EQ(emit_instance(parse_instance(emit_instance(fixture))), emit_instance(fixture));
}

TEST(RandomInstance, DeterministicAndParseable) {
  EXPECT_EQ(random_instance(1, 8), random_instance(1, 8));
  EXPECT_NE(random_instance(1, 8), random_instance(2, 8));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = parse_instance(random_instance(seed, 8));
    EXPECT_TRUE(inst.covering) << seed;
    ASSERT_TRUE(inst.configs) << seed;
    EXPECT_EQ(inst.configs->size(), inst.classes.size());
    for (const auto& c : *inst.configs) EXPECT_LE(c.size(), kMaxPointsPerClass);
    EXPECT_LE(inst.pair.source().order(), 8u);
    EXPECT_LE(inst.pair.target().order(), 8u);
  }
}

TEST(RandomInstance, SmallOrderBoundIsRespected) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = parse_instance(random_instance(seed, 3));
    EXPECT_LE(inst.pair.source().order(), 3u);
  }
  EXPECT_THROW(random_instance(0, 1), Error);
}

TEST(RandomInstance, ProducesTypeThreeWithinHundredSeeds) {
  bool found = false;
  for (std::uint64_t seed = 0; seed < 100 && !found; ++seed) {
    const auto inst = parse_instance(random_instance(seed, 8));
    found = orientation_type(inst.pair.f, inst.pair.source_orientation, inst.pair.target_orientation) == MapType::III;
  }
  EXPECT_TRUE(found);
}

}  // namespace
}  // namespace nielsen
