// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "nielsen/cli.hpp"
#include "nielsen/nielsen.hpp"

namespace {

using namespace nielsen;

// Pinned thresholds. Every comparison below is exact integer equality.
constexpr std::uint64_t kCorpusSeeds = 256;
constexpr std::size_t kCorpusMaxOrder = 16;
constexpr std::size_t kRootMaxOrder = 8;
constexpr std::size_t kParityMaxPoints = 6;
constexpr double kFormulaBudgetSeconds = 60.0;
constexpr double kRootBudgetSeconds = 60.0;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::pair<std::uint64_t, Instance>> build_corpus() {
  std::vector<std::pair<std::uint64_t, Instance>> corpus;
  for (std::uint64_t seed = 0; seed < kCorpusSeeds; ++seed)
    corpus.emplace_back(seed, parse_instance(random_instance(seed, kCorpusMaxOrder)));
  return corpus;
}

std::string at(std::uint64_t seed, Element rep) {
  return "seed " + std::to_string(seed) + ", class " + std::to_string(rep);
}

Outcome parity_table() {
  Outcome o;
  const auto z2 = catalog::cyclic(2);
  const auto c = make_character(z2, {1, -1});
  for (std::size_t n = 1; n <= kParityMaxPoints; ++n) {
    // every labelling of n points by Z/2
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      ClassConfiguration config{0, true, c, {}};
      for (std::size_t i = 0; i < n; ++i) config.labels.push_back(mask >> i & 1);
      o.require(semi_index(config) == n % 2, "n = " + std::to_string(n) + ", mask " + std::to_string(mask));
    }
  }
  o.detail = o.ok ? "n = 1.." + std::to_string(kParityMaxPoints) + ", all labellings" : o.detail;
  return o;
}

Outcome formula_vs_oracle(const std::vector<std::pair<std::uint64_t, Instance>>& corpus, double seconds) {
  Outcome o;
  std::size_t classes = 0, lifted = 0;
  for (const auto& [seed, inst] : corpus) {
    for (const auto& row : lift_rows(inst)) {
      ++classes;
      lifted += row.oracle.classes.size();
      o.require(row.oracle.violations.empty(), at(seed, row.representative) + ": " +
                                                   (row.oracle.violations.empty() ? "" : row.oracle.violations.front()));
      o.require(row.formula == row.oracle.values(), at(seed, row.representative) + ": formula != oracle");
    }
  }
  o.require(seconds < kFormulaBudgetSeconds, "runtime budget exceeded");
  if (o.ok)
    o.detail = std::to_string(corpus.size()) + " instances, " + std::to_string(classes) + " classes, " +
               std::to_string(lifted) + " lifted classes";
  return o;
}

Outcome fiber_structure(const std::vector<std::pair<std::uint64_t, Instance>>& corpus) {
  Outcome o;
  std::size_t fibers = 0;
  for (const auto& [seed, inst] : corpus) {
    const auto rows = lift_rows(inst);
    const auto check = check_fiber_structure(rows, inst);
    o.require(check.status == CheckStatus::Pass, "seed " + std::to_string(seed) + ": " + check.detail);
    for (const auto& row : rows) fibers += row.oracle.point_fibers.size() + 1;
  }
  if (o.ok) o.detail = std::to_string(fibers) + " fibers";
  return o;
}

Outcome root_theorems(double& seconds) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::size_t combos = 0, type3 = 0, orientable = 0;
  for (const auto& m : catalog::entries()) {
    if (m.group.order() > kRootMaxOrder) continue;
    const auto source_chars = enumerate_characters(m.group);
    for (const auto& n : catalog::entries()) {
      if (n.group.order() > kRootMaxOrder) continue;
      const auto target_chars = enumerate_characters(n.group);
      for (const auto& f : enumerate_homs(m.group, n.group))
        for (const auto& wm : source_chars)
          for (const auto& wn : target_chars) {
            const auto report = verify_root_theorems(f, wm, wn);
            ++combos;
            if (report.type == MapType::III) ++type3;
            else ++orientable;
            o.require(report.passed(), m.name + " -> " + n.name + ": type " + std::string(to_string(report.type)) +
                                           ", " + std::to_string(report.defective_count) + " of " +
                                           std::to_string(report.root_classes.size()) + " defective");
          }
    }
  }
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(type3 > 0 && orientable > 0, "one of the two cases never occurs");
  o.require(seconds < kRootBudgetSeconds, "runtime budget exceeded");
  if (o.ok)
    o.detail = std::to_string(combos) + " combinations, " + std::to_string(orientable) + " orientable, " +
               std::to_string(type3) + " Type III";
  return o;
}

Outcome center_propagation(const std::vector<std::pair<std::uint64_t, Instance>>& corpus) {
  Outcome o;
  std::size_t applicable = 0, with_defect = 0;
  for (const auto& [seed, inst] : corpus) {
    const auto report = center_propagation_check(inst.pair);
    if (report.status == CheckStatus::NotApplicable) continue;
    ++applicable;
    if (report.defective_count > 0) ++with_defect;
    o.require(report.status == CheckStatus::Pass, "seed " + std::to_string(seed) + ": " +
                                                      std::to_string(report.defective_count) + " of " +
                                                      std::to_string(report.class_count) + " defective");
  }
  o.require(with_defect > 0, "no applicable instance has a defective class");
  if (o.ok)
    o.detail = std::to_string(applicable) + " applicable instances, " + std::to_string(with_defect) +
               " with defective classes";
  return o;
}

Outcome double_cover(const std::vector<std::pair<std::uint64_t, Instance>>& corpus) {
  Outcome o;
  std::size_t applicable = 0, split = 0, merged = 0;
  for (const auto& [seed, inst] : corpus) {
    if (inst.pair.source_orientation.is_trivial() || !inst.pair.target_orientation.is_trivial()) continue;
    ++applicable;
    const auto configs = all_configs(inst);
    const auto report = double_orientable_cover(inst.pair, configs);
    const std::string where = "seed " + std::to_string(seed);
    for (const auto& row : report.classes) {
      (row.defective ? merged : split) += 1;
      if (row.defective) {
        o.require(row.lifted_classes == 1 && row.oracle == std::vector<std::size_t>{0},
                  at(seed, row.representative) + ": defective class did not merge to semi-index 0");
      } else {
        o.require(row.lifted_classes == 2 && row.oracle == std::vector<std::size_t>(2, row.semi_index),
                  at(seed, row.representative) + ": class did not split into two copies of s");
      }
    }
    o.require(report.generic_agrees, where + ": formula != oracle");
    o.require(report.up_even, where + ": upstairs Nielsen number odd");
    o.require(report.down_bounds_up, where + ": downstairs Nielsen number below half of upstairs");
    o.require(report.zero_up_forces_defective, where + ": upstairs 0 with an essential non-defective class");
  }
  o.require(split > 0 && merged > 0, "corpus lacks split or merged classes");
  if (o.ok)
    o.detail = std::to_string(applicable) + " instances, " + std::to_string(split) + " split, " +
               std::to_string(merged) + " merged";
  return o;
}

Outcome worked_fixture() {
  Outcome o;
  const std::string dir = NIELSEN_TEST_DATA;
  const auto inst = parse_instance(read(dir + "/worked_z2.inst"));
  o.require(inst.classes.size() == 1, "expected one class");
  if (!o.ok) return o;
  const auto& cls = inst.classes.front();
  const auto config = inst.config_for(cls);
  o.require(cls.defective, "downstairs class not defective");
  o.require(semi_index(config) == 1, "downstairs semi-index != 1");
  const auto rows = lift_rows(inst);
  o.require(rows.size() == 1, "expected one lift row");
  if (!o.ok) return o;
  const auto& row = rows.front();
  o.require(row.partition.fiber_size == 2, "T != 2");
  o.require(row.partition.copies == 2, "k != 2");
  o.require(row.partition.class_count == 1, "lifted class count != 1");
  o.require(!row.defective_up, "lifted class defective");
  o.require(row.formula == std::vector<std::size_t>{0}, "formula != 0");
  o.require(row.oracle.values() == std::vector<std::size_t>{0}, "oracle != 0");

  std::ostringstream out, err;
  const int code = cli::run_command({"--machine", "verify", dir + "/worked_z2.inst"}, out, err);
  o.require(code == cli::kOk, "verify exit code " + std::to_string(code));
  o.require(out.str() == read(dir + "/worked_z2.golden"), "report differs from golden file");
  if (o.ok) o.detail = "T = 2, k = 2, formula 0, oracle 0, golden report identical";
  return o;
}

Outcome structural(const std::vector<std::pair<std::uint64_t, Instance>>& corpus) {
  Outcome o;
  std::size_t configs_checked = 0;
  for (const auto& [seed, inst] : corpus) {
    const auto configs = all_configs(inst);
    for (const auto& check :
         {check_orbit_stabilizer(inst.pair, inst.classes), check_partition(inst.pair, inst.classes),
          check_defect_invariance(inst.pair, inst.classes), check_permutation_invariance(configs)}) {
      o.require(check.status == CheckStatus::Pass,
                "seed " + std::to_string(seed) + ": " + check.name + " " + check.detail);
    }
    for (const auto& c : configs) o.require(c.size() <= kMaxPermutedPoints, "config too large to permute");
    configs_checked += configs.size();
  }
  if (o.ok)
    o.detail = std::to_string(corpus.size()) + " instances, " + std::to_string(configs_checked) +
               " configurations under all orderings";
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* name, const Outcome& o) {
    std::printf("%s criterion %d: %s (%s)\n", o.ok ? "PASS" : "FAIL", id, name, o.detail.c_str());
    if (!o.ok) ++failures;
  };
  auto guarded = [](const std::function<Outcome()>& fn) {
    try {
      return fn();
    } catch (const std::exception& e) {
      return Outcome{false, std::string("exception: ") + e.what()};
    }
  };

  report(1, "defective parity table", guarded(parity_table));

  const auto start = std::chrono::steady_clock::now();
  std::vector<std::pair<std::uint64_t, Instance>> corpus;
  const auto built = guarded([&] {
    corpus = build_corpus();
    return Outcome{};
  });
  const Outcome formula = built.ok ? guarded([&] {
    return formula_vs_oracle(corpus, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  })
                                   : built;
  report(2, "lifted semi-index formula equals oracle", formula);
  report(3, "fiber size T and T/k groups of k", built.ok ? guarded([&] { return fiber_structure(corpus); }) : built);
  double root_seconds = 0;
  report(4, "root classes by map type", guarded([&] { return root_theorems(root_seconds); }));
  report(5, "central image gives uniform defectiveness",
         built.ok ? guarded([&] { return center_propagation(corpus); }) : built);
  report(6, "orientation double cover", built.ok ? guarded([&] { return double_cover(corpus); }) : built);
  report(7, "worked Z/2 fixture", guarded(worked_fixture));
  report(8, "structural invariants", built.ok ? guarded([&] { return structural(corpus); }) : built);

  std::printf("%d of 8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}
