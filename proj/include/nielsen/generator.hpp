#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "nielsen/catalog.hpp"
#include "nielsen/instance.hpp"

namespace nielsen {

inline constexpr std::size_t kMaxPointsPerClass = 6;
inline constexpr std::size_t kCoveringAttempts = 16;
inline constexpr std::size_t kSeedRetries = 64;

namespace detail {

// Draws in [0, n). Written out rather than using std::uniform_int_distribution,
// whose output is implementation-defined and would break byte-stable corpora.
inline std::size_t draw(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

template <typename T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& items) {
  return items[draw(rng, items.size())];
}

// splitmix64 step, used to derive the retry seed.
inline std::uint64_t next_seed(std::uint64_t seed) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::optional<Instance> try_generate(std::uint64_t seed, std::size_t max_order) {
  std::mt19937_64 rng(seed);
  std::vector<FiniteGroup> pool;
  for (const auto& e : catalog::entries())
    if (e.group.order() <= max_order) pool.push_back(e.group);
  if (pool.empty())
    throw Error(ErrorKind::Malformed, "no catalog group has order <= " + std::to_string(max_order));

  const FiniteGroup source = pick(rng, pool);
  const FiniteGroup target = pick(rng, pool);
  const auto homs = enumerate_homs(source, target);
  const Homomorphism f = pick(rng, homs);
  const Homomorphism g = pick(rng, homs);
  const auto source_chars = enumerate_characters(source);
  const auto target_chars = enumerate_characters(target);
  const auto w_source = pick(rng, source_chars);
  const auto w_target = pick(rng, target_chars);
  Instance inst{make_coincidence_pair(f, g, w_source, w_target), {}, std::nullopt, std::nullopt};
  inst.classes = reidemeister_classes(inst.pair);

  const auto source_normal = normal_subgroups(source);
  const auto target_normal = normal_subgroups(target);
  for (std::size_t attempt = 0; attempt < kCoveringAttempts && !inst.covering; ++attempt) {
    const Subgroup& km = pick(rng, source_normal);
    const Subgroup& kn = pick(rng, target_normal);
    const bool liftable = std::ranges::all_of(km.members(), [&](Element k) {
      return kn.contains(f(k)) && kn.contains(g(k));
    });
    if (liftable) inst.covering = check_liftable(inst.pair, km, kn);
  }
  if (!inst.covering) return std::nullopt;

  const auto c = combined_character(inst.pair);
  inst.configs.emplace();
  for (const auto& cls : inst.classes) {
    const std::size_t count = draw(rng, kMaxPointsPerClass + 1);
    std::vector<Element> labels;
    for (std::size_t i = 0; i < count; ++i) labels.push_back(static_cast<Element>(draw(rng, source.order())));
    inst.configs->push_back(ClassConfiguration{cls.representative, cls.defective, c, std::move(labels)});
  }
  return inst;
}

}  // namespace detail

/// Deterministic random instance over the built-in catalog: same
/// (seed, max_order) gives byte-identical text. A seed whose covering draws
/// all fail is replaced by its splitmix64 successor.
inline std::string random_instance(std::uint64_t seed, std::size_t max_order) {
  std::uint64_t current = seed;
  for (std::size_t retry = 0; retry < kSeedRetries; ++retry) {
    if (auto inst = detail::try_generate(current, max_order)) {
      return "# gen --seed " + std::to_string(seed) + " --max-order " + std::to_string(max_order) + "\n" +
             emit_instance(*inst);
    }
    current = detail::next_seed(current);
  }
  throw Error(ErrorKind::GenerationExhausted,
              "no liftable covering found for seed " + std::to_string(seed));
}

}  // namespace nielsen
