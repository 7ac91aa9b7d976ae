#pragma once

#include <deque>
#include <set>
#include <utility>
#include <vector>

#include "nielsen/classes.hpp"

namespace nielsen {

/// Coincidence points of one class, each labeled by the G-element of its
/// connecting path from the class basepoint (the basepoint itself has label 0).
///
/// The R-relation between points is decided from `defective` and the signs
/// `combined(label)`: in a defective class all points are related, otherwise
/// exactly the pairs of opposite sign are.
struct ClassConfiguration {
  Element representative;
  bool defective;
  OrientationCharacter combined;
  std::vector<Element> labels;

  std::size_t size() const noexcept { return labels.size(); }
};

inline ClassConfiguration make_configuration(const CoincidencePair& pair, const ReidemeisterClass& cls,
                                             std::vector<Element> labels) {
  for (Element label : labels) {
    if (!pair.source().contains(label)) {
      throw Error(ErrorKind::IndexOutOfRange, "label " + std::to_string(label) +
                                                  " outside source group of order " +
                                                  std::to_string(pair.source().order()));
    }
  }
  return ClassConfiguration{cls.representative, cls.defective, combined_character(pair),
                            std::move(labels)};
}

/// Sign of any connecting path from point i to point j.
inline int relative_sign(const ClassConfiguration& config, std::size_t i, std::size_t j) {
  if (i >= config.size() || j >= config.size()) {
    throw Error(ErrorKind::IndexOutOfRange,
                "position out of range for configuration of size " + std::to_string(config.size()));
  }
  return config.combined(config.labels[i]) * config.combined(config.labels[j]);
}

struct Decomposition {
  std::vector<std::size_t> free;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

/// Pairs off R-related points greedily in input order.
inline Decomposition decompose(const ClassConfiguration& config) {
  Decomposition d;
  if (config.defective) {
    for (std::size_t i = 0; i + 1 < config.size(); i += 2) d.pairs.emplace_back(i, i + 1);
    if (config.size() % 2 == 1) d.free.push_back(config.size() - 1);
    return d;
  }
  std::deque<std::size_t> waiting_positive;
  std::deque<std::size_t> waiting_negative;
  for (std::size_t i = 0; i < config.size(); ++i) {
    const bool positive = config.combined(config.labels[i]) == 1;
    auto& opposite = positive ? waiting_negative : waiting_positive;
    if (opposite.empty()) {
      (positive ? waiting_positive : waiting_negative).push_back(i);
    } else {
      d.pairs.emplace_back(opposite.front(), i);
      opposite.pop_front();
    }
  }
  d.free.assign(waiting_positive.begin(), waiting_positive.end());
  d.free.insert(d.free.end(), waiting_negative.begin(), waiting_negative.end());
  std::ranges::sort(d.free);
  return d;
}

inline std::size_t semi_index(const ClassConfiguration& config) { return decompose(config).free.size(); }

/// Number of essential classes. Each configuration must belong to a different class.
inline std::size_t nielsen_number(std::span<const ClassConfiguration> configs) {
  std::set<Element> reps;
  std::size_t essential = 0;
  for (const auto& config : configs) {
    if (!reps.insert(config.representative).second) {
      throw Error(ErrorKind::DuplicateClass,
                  "two configurations for class " + std::to_string(config.representative));
    }
    if (semi_index(config) > 0) ++essential;
  }
  return essential;
}

}  // namespace nielsen
