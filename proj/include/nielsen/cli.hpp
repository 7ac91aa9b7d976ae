#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "nielsen/generator.hpp"
#include "nielsen/verify.hpp"

namespace nielsen::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kVerificationFailure = 2 };

/// Human-readable text plus stable `key = value` lines.
struct Report {
  std::ostringstream human;
  std::vector<std::pair<std::string, std::string>> machine;
  int exit_code = kOk;

  template <typename T>
  void add(const std::string& key, const T& value) {
    std::ostringstream v;
    v << value;
    machine.emplace_back(key, v.str());
  }

  void write(std::ostream& out, bool with_machine) const {
    out << human.str();
    if (!with_machine) return;
    for (const auto& [key, value] : machine) out << key << " = " << value << "\n";
  }
};

namespace detail {

inline std::string flag(bool b) { return b ? "true" : "false"; }

inline std::string join(std::span<const std::size_t> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? " " : "") + std::to_string(values[i]);
  return out;
}

inline std::string key(const ReidemeisterClass& cls, std::string_view field) {
  return "class." + std::to_string(cls.representative) + "." + std::string(field);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void classes_section(const Instance& inst, Report& r) {
  r.human << "classes: " << inst.classes.size() << "\n";
  for (const auto& cls : inst.classes) {
    r.human << "  class " << cls.representative << ": size " << cls.orbit.size() << ", stabilizer "
            << cls.stabilizer.order() << (cls.defective ? ", defective" : ", not defective") << "\n";
    r.add(key(cls, "size"), cls.orbit.size());
    r.add(key(cls, "stab"), cls.stabilizer.order());
    r.add(key(cls, "defective"), flag(cls.defective));
  }
}

inline void type_section(const Instance& inst, Report& r) {
  const auto type = orientation_type(inst.pair.f, inst.pair.source_orientation, inst.pair.target_orientation);
  r.human << "map type of f: " << to_string(type) << (is_orientable(type) ? " (orientable)" : " (nonorientable)")
          << "\n";
  r.add("pair.type", to_string(type));
}

inline void semiindex_section(const Instance& inst, Report& r) {
  std::size_t essential = 0;
  for (const auto& cls : inst.classes) {
    const auto config = inst.config_for(cls);
    const std::size_t s = semi_index(config);
    if (s > 0) ++essential;
    r.human << "  class " << cls.representative << ": " << config.size() << (config.size() == 1 ? " point" : " points") << ", semi-index " << s << "\n";
    r.add(key(cls, "semiindex"), s);
  }
  r.human << "Nielsen number: " << essential << "\n";
  r.add("nielsen.down", essential);
}

inline void lift_section(const Instance& inst, std::span<const LiftRow> rows, Report& r) {
  const auto& cov = *inst.covering;
  r.human << "covering: deck groups of order " << cov.source_deck.group.order() << " and "
          << cov.target_deck.group.order() << "\n";
  std::size_t up = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& cls = inst.classes[i];
    const auto& row = rows[i];
    const auto oracle = row.oracle.values();
    r.human << "  class " << cls.representative << ": T " << row.partition.fiber_size << ", k "
            << row.partition.copies << ", lifted classes " << row.partition.class_count
            << (row.defective_up ? " (defective)" : "") << ", formula [" << join(row.formula) << "], oracle ["
            << join(oracle) << "]\n";
    r.add(key(cls, "lift.T"), row.partition.fiber_size);
    r.add(key(cls, "lift.k"), row.partition.copies);
    r.add(key(cls, "lift.classes"), row.partition.class_count);
    r.add(key(cls, "lift.defective"), flag(row.defective_up));
    r.add(key(cls, "lift.formula"), join(row.formula));
    r.add(key(cls, "lift.oracle"), join(oracle));
    up += static_cast<std::size_t>(std::ranges::count_if(oracle, [](std::size_t v) { return v > 0; }));
  }
  r.human << "lifted Nielsen number: " << up << "\n";
  r.add("nielsen.up", up);
}

inline void checks_section(std::span<const CheckResult> checks, Report& r) {
  for (const auto& check : checks) {
    r.human << "check " << check.name << ": " << to_string(check.status);
    if (!check.detail.empty()) r.human << " (" << check.detail << ")";
    r.human << "\n";
    r.add("check." + check.name, to_string(check.status));
    if (check.status == CheckStatus::Fail) r.exit_code = kVerificationFailure;
  }
}

inline Report verify_report(const Instance& inst, bool exhaustive) {
  Report r;
  type_section(inst, r);
  classes_section(inst, r);
  semiindex_section(inst, r);
  const auto rows = lift_rows(inst);
  if (inst.covering) lift_section(inst, rows, r);
  checks_section(verify_instance(inst, VerifyOptions{exhaustive}), r);
  r.human << (r.exit_code == kOk ? "verification passed\n" : "verification FAILED\n");
  return r;
}

}  // namespace detail

inline Report command_validate(const Instance& inst) {
  Report r;
  r.human << "ok: M of order " << inst.pair.source().order() << ", N of order " << inst.pair.target().order()
          << ", " << inst.classes.size() << " classes"
          << (inst.covering ? ", covering" : "") << (inst.configs ? ", config" : "") << "\n";
  r.add("valid", "true");
  return r;
}

inline Report command_classes(const Instance& inst) {
  Report r;
  detail::classes_section(inst, r);
  return r;
}

inline Report command_type(const Instance& inst) {
  Report r;
  detail::type_section(inst, r);
  return r;
}

inline Report command_semiindex(const Instance& inst) {
  Report r;
  detail::semiindex_section(inst, r);
  return r;
}

inline Report command_lift(const Instance& inst) {
  if (!inst.covering) throw Error(ErrorKind::MissingSection, "instance has no covering section");
  Report r;
  detail::semiindex_section(inst, r);
  const auto rows = lift_rows(inst);
  detail::lift_section(inst, rows, r);
  std::vector<CheckResult> checks{check_lift_formula(rows), check_fiber_structure(rows, inst)};
  detail::checks_section(checks, r);
  return r;
}

inline Report command_doublecover(const Instance& inst) {
  const auto configs = all_configs(inst);
  const auto report = double_orientable_cover(inst.pair, configs);
  Report r;
  r.human << "orientation double cover: K_M of order " << report.covering.source_kernel.order() << "\n";
  for (const auto& row : report.classes) {
    const std::string base = "class." + std::to_string(row.representative) + ".";
    r.human << "  class " << row.representative << (row.defective ? " (defective)" : "") << ": semi-index "
            << row.semi_index << ", lifted classes " << row.lifted_classes << ", semi-indices ["
            << detail::join(row.oracle) << "]\n";
    r.add(base + "semiindex", row.semi_index);
    r.add(base + "lift.classes", row.lifted_classes);
    r.add(base + "lift.formula", detail::join(row.formula));
    r.add(base + "lift.oracle", detail::join(row.oracle));
  }
  r.human << "Nielsen numbers: " << report.nielsen_down << " below, " << report.nielsen_up << " above\n";
  r.add("nielsen.down", report.nielsen_down);
  r.add("nielsen.up", report.nielsen_up);
  detail::checks_section(std::vector<CheckResult>{check_double_cover(inst)}, r);
  return r;
}

inline Report command_verify(const Instance& inst, bool exhaustive) { return detail::verify_report(inst, exhaustive); }

namespace detail {

struct BatchResult {
  std::string text;
  int exit_code;
};

inline BatchResult verify_file(const std::filesystem::path& path, bool exhaustive, bool machine) {
  std::ostringstream out;
  try {
    const auto report = verify_report(parse_instance(read_file(path.string())), exhaustive);
    report.write(out, machine);
    return {out.str(), report.exit_code};
  } catch (const std::exception& e) {
    out << "error: " << e.what() << "\n";
    return {out.str(), kInputError};
  }
}

inline int verify_batch(const std::string& dir, bool exhaustive, bool machine, std::ostream& out) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".inst") files.push_back(entry.path());
  std::ranges::sort(files);
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  int worst = kOk;
  std::size_t passed = 0;
  for (std::size_t begin = 0; begin < files.size(); begin += workers) {
    std::vector<std::future<BatchResult>> wave;
    for (std::size_t i = begin; i < std::min(files.size(), begin + workers); ++i)
      wave.push_back(std::async(std::launch::async, verify_file, files[i], exhaustive, machine));
    for (std::size_t i = 0; i < wave.size(); ++i) {
      const auto result = wave[i].get();
      out << "== " << files[begin + i].filename().string() << "\n" << result.text;
      worst = std::max(worst, result.exit_code);
      if (result.exit_code == kOk) ++passed;
    }
  }
  out << "batch: " << passed << " of " << files.size() << " files passed\n";
  return worst;
}

}  // namespace detail

/// Runs one command line. `args` excludes the program name.
/// Exit codes: 0 success, 1 input or validation error, 2 verification failure.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nielsen coincidence classes, semi-index and covering lifts over finite groups", "nielsen"};
  app.require_subcommand(1);
  bool machine = false;
  app.add_flag("--machine", machine, "Append stable `key = value` lines");

  std::string file;
  auto with_file = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("file", file, "Instance file")->required();
    return sub;
  };
  auto* validate = with_file("validate", "Parse and validate an instance");
  auto* classes = with_file("classes", "List Reidemeister classes");
  auto* type = with_file("type", "Classify f as Type I, II or III");
  auto* semiindex = with_file("semiindex", "Semi-index of each configured class");
  auto* lift = with_file("lift", "Lift through the instance covering");
  auto* doublecover = with_file("doublecover", "Lift through the orientation double cover of M");

  auto* verify = app.add_subcommand("verify", "Run every applicable check");
  verify->fallthrough();
  bool exhaustive = false;
  std::string batch;
  verify->add_option("file", file, "Instance file");
  verify->add_flag("--oracle", exhaustive, "Also run exhaustive permutation checks");
  verify->add_option("--batch", batch, "Verify every .inst file in a directory");

  auto* gen = app.add_subcommand("gen", "Emit a seeded random instance");
  gen->fallthrough();
  std::uint64_t seed = 0;
  std::size_t max_order = 8;
  gen->add_option("--seed", seed, "Generator seed")->required();
  gen->add_option("--max-order", max_order, "Largest catalog group order")->required();

  std::vector<std::string> storage{"nielsen"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (gen->parsed()) {
      out << random_instance(seed, max_order);
      return kOk;
    }
    if (verify->parsed() && !batch.empty()) {
      if (!file.empty()) {
        err << "error: give either a file or --batch, not both\n";
        return kInputError;
      }
      return detail::verify_batch(batch, exhaustive, machine, out);
    }
    if (file.empty()) {
      err << "error: an instance file is required\n";
      return kInputError;
    }
    const Instance inst = parse_instance(detail::read_file(file));
    Report report;
    if (validate->parsed()) report = command_validate(inst);
    else if (classes->parsed()) report = command_classes(inst);
    else if (type->parsed()) report = command_type(inst);
    else if (semiindex->parsed()) report = command_semiindex(inst);
    else if (lift->parsed()) report = command_lift(inst);
    else if (doublecover->parsed()) report = command_doublecover(inst);
    else report = command_verify(inst, exhaustive);
    report.write(out, machine);
    if (report.exit_code == kVerificationFailure) err << "verification failed\n";
    return report.exit_code;
  } catch (const std::logic_error& e) {
    err << "internal invariant violated: " << e.what() << "\n";
    return kVerificationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace nielsen::cli
