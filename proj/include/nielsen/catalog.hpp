#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nielsen/group.hpp"

namespace nielsen::catalog {

/// Z/n with element k standing for k.
inline FiniteGroup cyclic(std::size_t n) {
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a][b] = static_cast<Element>((a + b) % n);
  return make_group(table);
}

/// Symmetries of the regular n-gon, order 2n. Index k + n·f stands for r^k s^f,
/// so rotations come first and r = 1, s = n.
inline FiniteGroup dihedral(std::size_t n) {
  const std::size_t order = 2 * n;
  std::vector<std::vector<Element>> table(order, std::vector<Element>(order));
  for (std::size_t a = 0; a < order; ++a) {
    for (std::size_t b = 0; b < order; ++b) {
      const std::size_t k1 = a % n, f1 = a / n, k2 = b % n, f2 = b / n;
      // r^k1 s^f1 r^k2 s^f2 = r^(k1 ± k2) s^(f1+f2), since s r s = r⁻¹
      const std::size_t k = f1 == 0 ? (k1 + k2) % n : (k1 + n - k2) % n;
      table[a][b] = static_cast<Element>(k + n * ((f1 + f2) % 2));
    }
  }
  return make_group(table);
}

/// Quaternion group. Index order: 1, -1, i, -i, j, -j, k, -k.
inline FiniteGroup quaternion() {
  // unit product table on {1, i, j, k} as (unit, sign)
  constexpr std::array<std::array<std::pair<int, int>, 4>, 4> units{{
      {{{0, 1}, {1, 1}, {2, 1}, {3, 1}}},
      {{{1, 1}, {0, -1}, {3, 1}, {2, -1}}},
      {{{2, 1}, {3, -1}, {0, -1}, {1, 1}}},
      {{{3, 1}, {2, 1}, {1, -1}, {0, -1}}},
  }};
  std::vector<std::vector<Element>> table(8, std::vector<Element>(8));
  for (std::size_t a = 0; a < 8; ++a) {
    for (std::size_t b = 0; b < 8; ++b) {
      const auto [unit, sign] = units[a / 2][b / 2];
      const int total = sign * (a % 2 ? -1 : 1) * (b % 2 ? -1 : 1);
      table[a][b] = static_cast<Element>(2 * unit + (total < 0 ? 1 : 0));
    }
  }
  return make_group(table);
}

/// G × H with (g, h) at index g·|H| + h.
inline FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t n = g.order() * h.order();
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto ga = static_cast<Element>(a / h.order()), ha = static_cast<Element>(a % h.order());
      const auto gb = static_cast<Element>(b / h.order()), hb = static_cast<Element>(b % h.order());
      table[a][b] = static_cast<Element>(g.mul(ga, gb) * h.order() + h.mul(ha, hb));
    }
  return make_group(table);
}

struct Entry {
  std::string name;
  FiniteGroup group;
};

/// The fixed generation catalog. Its order and element encodings are part of
/// the reproducibility contract of the instance generator; do not reorder.
inline const std::vector<Entry>& entries() {
  static const std::vector<Entry> all = [] {
    std::vector<Entry> list;
    list.push_back({"C2", cyclic(2)});
    list.push_back({"C3", cyclic(3)});
    list.push_back({"C4", cyclic(4)});
    list.push_back({"C6", cyclic(6)});
    list.push_back({"C8", cyclic(8)});
    list.push_back({"C2xC2", direct_product(cyclic(2), cyclic(2))});
    list.push_back({"C2xC4", direct_product(cyclic(2), cyclic(4))});
    list.push_back({"S3", dihedral(3)});
    list.push_back({"D4", dihedral(4)});
    list.push_back({"Q8", quaternion()});
    return list;
  }();
  return all;
}

inline std::optional<FiniteGroup> find(std::string_view name) {
  for (const auto& e : entries())
    if (e.name == name) return e.group;
  return std::nullopt;
}

}  // namespace nielsen::catalog
