#pragma once

#include <charconv>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nielsen/classes.hpp"
#include "nielsen/covering.hpp"
#include "nielsen/semi_index.hpp"

namespace nielsen {

/// A parse or validation failure tied to a line of the instance text (1-based;
/// 0 when the problem is a missing section).
class InstanceError : public Error {
 public:
  InstanceError(ErrorKind kind, std::size_t line, const std::string& detail)
      : Error(kind, (line ? "line " + std::to_string(line) + ": " : std::string{}) + detail),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A fully validated instance: the pair, its classes, and the optional covering
/// and coincidence configuration.
struct Instance {
  CoincidencePair pair;
  std::vector<ReidemeisterClass> classes;
  std::optional<RegularCovering> covering;
  /// One entry per class listed in the file, in class order.
  std::optional<std::vector<ClassConfiguration>> configs;

  /// The configuration of `cls`, empty when the file does not list it.
  ClassConfiguration config_for(const ReidemeisterClass& cls) const {
    if (configs) {
      for (const auto& c : *configs)
        if (c.representative == cls.representative) return c;
    }
    return ClassConfiguration{cls.representative, cls.defective, combined_character(pair), {}};
  }
};

namespace detail {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string raw(text.substr(pos, end - pos));
    pos = end + 1;
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::string spaced;
    for (char ch : raw) {
      if (ch == '{' || ch == '}' || ch == ':') {
        spaced += ' ';
        spaced += ch;
        spaced += ' ';
      } else {
        spaced += ch;
      }
    }
    std::istringstream in(spaced);
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
  }
  return lines;
}

inline Element parse_index(const std::string& tok, std::size_t line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || value > 0xFFFFFFFFull)
    throw InstanceError(ErrorKind::SyntaxError, line, "expected a non-negative index, got '" + tok + "'");
  return static_cast<Element>(value);
}

inline std::vector<Element> parse_indices(const std::vector<std::string>& toks, std::size_t from,
                                          std::size_t to, std::size_t line) {
  std::vector<Element> out;
  for (std::size_t i = from; i < to; ++i) out.push_back(parse_index(toks[i], line));
  return out;
}

inline void expect(const Line& line, std::size_t at, std::string_view tok) {
  if (at >= line.tokens.size() || line.tokens[at] != tok) {
    throw InstanceError(ErrorKind::SyntaxError, line.number,
                        "expected '" + std::string(tok) + "' at token " + std::to_string(at + 1));
  }
}

struct RawGroup {
  std::size_t line;
  std::size_t order;
  std::vector<Element> entries;
};

struct RawList {
  std::size_t line;
  std::vector<std::string> values;
};

struct RawConfigEntry {
  std::size_t line;
  Element twist;
  std::vector<Element> labels;
};

template <typename F>
auto validated(std::size_t line, F&& build) {
  try {
    return build();
  } catch (const InstanceError&) {
    throw;
  } catch (const Error& e) {
    throw InstanceError(ErrorKind::ValidationError, line, e.what());
  }
}

}  // namespace detail

inline Instance parse_instance(std::string_view text) {
  using namespace detail;
  const auto lines = tokenize(text);

  std::map<std::string, RawGroup> groups;
  std::map<std::string, RawList> chars;
  std::map<std::string, RawList> homs;
  std::optional<std::pair<std::size_t, std::pair<std::vector<Element>, std::vector<Element>>>> covering;
  std::optional<std::vector<RawConfigEntry>> config;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const Line& line = lines[i];
    const auto& t = line.tokens;
    const std::string& head = t[0];
    if (head == "group") {
      if (t.size() != 4 || (t[1] != "M" && t[1] != "N") || t[2] != "order")
        throw InstanceError(ErrorKind::SyntaxError, line.number, "expected 'group M|N order <n>'");
      if (groups.contains(t[1]))
        throw InstanceError(ErrorKind::SyntaxError, line.number, "group " + t[1] + " defined twice");
      RawGroup raw{line.number, parse_index(t[3], line.number), {}};
      if (raw.order == 0) throw InstanceError(ErrorKind::SyntaxError, line.number, "group order must be positive");
      if (++i >= lines.size() || lines[i].tokens != std::vector<std::string>{"table"})
        throw InstanceError(ErrorKind::SyntaxError, i < lines.size() ? lines[i].number : line.number,
                            "expected 'table' after group header");
      bool closed = false;
      while (++i < lines.size()) {
        if (lines[i].tokens[0] == "endtable") {
          if (lines[i].tokens.size() != 1)
            throw InstanceError(ErrorKind::SyntaxError, lines[i].number, "unexpected tokens after 'endtable'");
          if (raw.entries.size() != raw.order * raw.order)
            throw InstanceError(ErrorKind::SyntaxError, lines[i].number,
                                "table has " + std::to_string(raw.entries.size()) + " entries, expected " +
                                    std::to_string(raw.order * raw.order));
          closed = true;
          break;
        }
        auto row = parse_indices(lines[i].tokens, 0, lines[i].tokens.size(), lines[i].number);
        raw.entries.insert(raw.entries.end(), row.begin(), row.end());
      }
      if (!closed) throw InstanceError(ErrorKind::SyntaxError, lines.back().number, "missing 'endtable'");
      groups.emplace(t[1], std::move(raw));
    } else if (head == "char") {
      if (t.size() < 3 || (t[1] != "wM" && t[1] != "wN") || t[2] != ":")
        throw InstanceError(ErrorKind::SyntaxError, line.number, "expected 'char wM|wN : <signs>'");
      if (chars.contains(t[1]))
        throw InstanceError(ErrorKind::SyntaxError, line.number, "character " + t[1] + " defined twice");
      RawList raw{line.number, {}};
      for (std::size_t k = 3; k < t.size(); ++k) {
        for (char ch : t[k]) {
          if (ch != '+' && ch != '-')
            throw InstanceError(ErrorKind::SyntaxError, line.number, "signs must be '+' or '-'");
          raw.values.emplace_back(1, ch);
        }
      }
      chars.emplace(t[1], std::move(raw));
    } else if (head == "hom") {
      if (t.size() < 7 || (t[1] != "f" && t[1] != "g"))
        throw InstanceError(ErrorKind::SyntaxError, line.number, "expected 'hom f|g : M -> N : <images>'");
      expect(line, 2, ":");
      expect(line, 3, "M");
      expect(line, 4, "->");
      expect(line, 5, "N");
      expect(line, 6, ":");
      if (homs.contains(t[1]))
        throw InstanceError(ErrorKind::SyntaxError, line.number, "hom " + t[1] + " defined twice");
      homs.emplace(t[1], RawList{line.number, {t.begin() + 7, t.end()}});
    } else if (head == "covering") {
      if (covering) throw InstanceError(ErrorKind::SyntaxError, line.number, "covering defined twice");
      expect(line, 1, ":");
      expect(line, 2, "KM");
      expect(line, 3, "{");
      std::size_t k = 4;
      while (k < t.size() && t[k] != "}") ++k;
      auto km = parse_indices(t, 4, k, line.number);
      expect(line, k, "}");
      expect(line, k + 1, "KN");
      expect(line, k + 2, "{");
      std::size_t m = k + 3;
      while (m < t.size() && t[m] != "}") ++m;
      auto kn = parse_indices(t, k + 3, m, line.number);
      expect(line, m, "}");
      if (m + 1 != t.size())
        throw InstanceError(ErrorKind::SyntaxError, line.number, "unexpected tokens after covering");
      covering.emplace(line.number, std::make_pair(std::move(km), std::move(kn)));
    } else if (head == "config") {
      if (config) throw InstanceError(ErrorKind::SyntaxError, line.number, "config defined twice");
      if (t.size() != 1) throw InstanceError(ErrorKind::SyntaxError, line.number, "unexpected tokens after 'config'");
      config.emplace();
      bool closed = false;
      while (++i < lines.size()) {
        const Line& entry = lines[i];
        if (entry.tokens[0] == "endconfig") {
          if (entry.tokens.size() != 1)
            throw InstanceError(ErrorKind::SyntaxError, entry.number, "unexpected tokens after 'endconfig'");
          closed = true;
          break;
        }
        expect(entry, 0, "class");
        if (entry.tokens.size() < 4)
          throw InstanceError(ErrorKind::SyntaxError, entry.number, "expected 'class <alpha> : labels ...'");
        Element twist = parse_index(entry.tokens[1], entry.number);
        expect(entry, 2, ":");
        expect(entry, 3, "labels");
        config->push_back(
            {entry.number, twist, parse_indices(entry.tokens, 4, entry.tokens.size(), entry.number)});
      }
      if (!closed) throw InstanceError(ErrorKind::SyntaxError, lines.back().number, "missing 'endconfig'");
    } else {
      throw InstanceError(ErrorKind::SyntaxError, line.number, "unknown section '" + head + "'");
    }
  }

  for (const char* name : {"M", "N"})
    if (!groups.contains(name)) throw InstanceError(ErrorKind::MissingSection, 0, std::string("missing group ") + name);
  for (const char* name : {"wM", "wN"})
    if (!chars.contains(name)) throw InstanceError(ErrorKind::MissingSection, 0, std::string("missing char ") + name);
  for (const char* name : {"f", "g"})
    if (!homs.contains(name)) throw InstanceError(ErrorKind::MissingSection, 0, std::string("missing hom ") + name);

  auto build_group = [](const RawGroup& raw) {
    return validated(raw.line, [&] {
      std::vector<std::vector<Element>> table(raw.order);
      for (std::size_t r = 0; r < raw.order; ++r)
        table[r].assign(raw.entries.begin() + r * raw.order, raw.entries.begin() + (r + 1) * raw.order);
      return make_group(table);
    });
  };
  const FiniteGroup source = build_group(groups.at("M"));
  const FiniteGroup target = build_group(groups.at("N"));

  auto build_char = [](const FiniteGroup& group, const RawList& raw) {
    return validated(raw.line, [&] {
      std::vector<int> signs;
      for (const auto& v : raw.values) signs.push_back(v == "+" ? 1 : -1);
      return make_character(group, std::move(signs));
    });
  };
  auto build_hom = [&](const RawList& raw) {
    auto images = parse_indices(raw.values, 0, raw.values.size(), raw.line);
    return validated(raw.line, [&] { return make_hom(source, target, std::move(images)); });
  };

  Instance inst{make_coincidence_pair(build_hom(homs.at("f")), build_hom(homs.at("g")),
                                      build_char(source, chars.at("wM")), build_char(target, chars.at("wN"))),
                {}, std::nullopt, std::nullopt};
  inst.classes = reidemeister_classes(inst.pair);

  if (covering) {
    const auto& [line, sets] = *covering;
    inst.covering = validated(line, [&] {
      return check_liftable(inst.pair, make_subgroup(source, sets.first), make_subgroup(target, sets.second));
    });
  }

  if (config) {
    std::vector<std::optional<ClassConfiguration>> by_class(inst.classes.size());
    for (const auto& entry : *config) {
      const std::size_t idx = validated(entry.line, [&] {
        if (!target.contains(entry.twist))
          throw Error(ErrorKind::IndexOutOfRange, "class element " + std::to_string(entry.twist) +
                                                      " outside N of order " + std::to_string(target.order()));
        return class_index_of(inst.classes, entry.twist);
      });
      if (by_class[idx])
        throw InstanceError(ErrorKind::ValidationError, entry.line,
                            "DuplicateClass: class " + std::to_string(inst.classes[idx].representative) +
                                " configured twice");
      by_class[idx] = validated(entry.line, [&] {
        return make_configuration(inst.pair, inst.classes[idx], entry.labels);
      });
    }
    inst.configs.emplace();
    for (auto& c : by_class)
      if (c) inst.configs->push_back(std::move(*c));
  }
  return inst;
}

namespace detail {

inline void emit_group(std::ostream& out, std::string_view name, const FiniteGroup& group) {
  out << "group " << name << " order " << group.order() << "\ntable\n";
  for (Element a : group.elements()) {
    const auto row = group.row(a);
    for (std::size_t b = 0; b < row.size(); ++b) out << (b ? " " : "") << row[b];
    out << "\n";
  }
  out << "endtable\n";
}

inline void emit_list(std::ostream& out, std::span<const Element> values) {
  for (Element v : values) out << " " << v;
}

}  // namespace detail

/// Canonical text form; parse_instance(emit_instance(x)) reproduces x.
inline std::string emit_instance(const Instance& inst) {
  std::ostringstream out;
  detail::emit_group(out, "M", inst.pair.source());
  detail::emit_group(out, "N", inst.pair.target());
  for (const auto* ch : {&inst.pair.source_orientation, &inst.pair.target_orientation}) {
    out << "char " << (ch == &inst.pair.source_orientation ? "wM" : "wN") << " :";
    for (int s : ch->signs()) out << (s == 1 ? " +" : " -");
    out << "\n";
  }
  out << "hom f : M -> N :";
  detail::emit_list(out, inst.pair.f.images());
  out << "\nhom g : M -> N :";
  detail::emit_list(out, inst.pair.g.images());
  out << "\n";
  if (inst.covering) {
    out << "covering : KM {";
    detail::emit_list(out, inst.covering->source_kernel.members());
    out << " } KN {";
    detail::emit_list(out, inst.covering->target_kernel.members());
    out << " }\n";
  }
  if (inst.configs) {
    out << "config\n";
    for (const auto& c : *inst.configs) {
      out << "class " << c.representative << " : labels";
      detail::emit_list(out, c.labels);
      out << "\n";
    }
    out << "endconfig\n";
  }
  return out.str();
}

}  // namespace nielsen
