#include "presym/cli/problem.hpp"

#include <charconv>
#include <map>
#include <set>

#include "presym/error.hpp"

namespace presym::cli {

namespace {

std::string trim(std::string_view s) {
  const auto* ws = " \t\r";
  auto begin = s.find_first_not_of(ws);
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(ws);
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::uint64_t parse_count(const std::string& value, int line) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ParseError("expected a non-negative integer, got '" + value + "'", line, 1);
  }
  return out;
}

SurfaceSpec parse_surface(const std::string& value) {
  if (value == "ambient") return {SurfaceSpec::Kind::ambient, {}};
  if (value == "primary") return {SurfaceSpec::Kind::primary, {}};
  if (value == "final") return {SurfaceSpec::Kind::final, {}};
  return {SurfaceSpec::Kind::explicit_list, split(value, ';')};
}

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"system", {"dim", "lagrangian"}},
      {"engine", {"max_generations", "trials", "seed", "rank_policy"}},
      {"transformation", {"map", "source", "target", "valence"}},
      {"presymplectic", {"variables", "omega", "alpha"}},
  };
  return keys;
}

}  // namespace

ProblemFile parse_problem(std::string_view text) {
  ProblemFile out;
  std::string section;
  std::set<std::string> seen;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    std::string_view raw = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;

    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", line_no, 1);
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (known_keys().count(section) == 0U) throw ParseError("unknown section [" + section + "]", line_no, 1);
      if (section == "transformation" && !out.transformation) out.transformation.emplace();
      if (section == "presymplectic" && !out.presymplectic) out.presymplectic.emplace();
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no, 1);
    if (section.empty()) throw ParseError("key outside of a section", line_no, 1);
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (known_keys().at(section).count(key) == 0U) {
      throw ParseError("unknown key '" + key + "' in [" + section + "]", line_no, 1);
    }
    if (!seen.insert(section + "." + key).second) throw ParseError("duplicate key '" + key + "'", line_no, 1);

    if (section == "system") {
      if (key == "dim") {
        out.dim = parse_count(value, line_no);
        if (*out.dim == 0) throw ParseError("dim must be positive", line_no, 1);
      } else {
        out.lagrangian = value;
      }
    } else if (section == "engine") {
      if (key == "rank_policy") {
        if (value == "warn") {
          out.engine.rank_policy = RankPolicy::warn;
        } else if (value == "fail") {
          out.engine.rank_policy = RankPolicy::fail;
        } else {
          throw ParseError("rank_policy must be 'warn' or 'fail'", line_no, 1);
        }
      } else if (key == "seed") {
        out.engine.seed = parse_count(value, line_no);
      } else if (key == "trials") {
        out.engine.trials = parse_count(value, line_no);
      } else {
        out.engine.max_generations = parse_count(value, line_no);
        if (out.engine.max_generations == 0) throw ParseError("max_generations must be positive", line_no, 1);
      }
    } else if (section == "transformation") {
      auto& t = *out.transformation;
      if (key == "map") {
        t.map = split(value, ',');
      } else if (key == "source") {
        t.source = parse_surface(value);
      } else if (key == "target") {
        t.target = parse_surface(value);
      } else if (value != "find") {
        t.valence = value;
      }
    } else {
      auto& pre = *out.presymplectic;
      if (key == "variables") {
        pre.variables = split(value, ',');
      } else if (key == "omega") {
        for (const auto& row : split(value, ';')) pre.omega.push_back(split(row, ','));
      } else {
        pre.alpha = split(value, ',');
      }
    }
  }

  if (out.presymplectic) {
    if (out.lagrangian || out.dim) throw ParseError("[presymplectic] cannot be combined with [system]", 1, 1);
    const auto& pre = *out.presymplectic;
    if (pre.variables.empty() || pre.omega.empty() || pre.alpha.empty()) {
      throw ParseError("[presymplectic] needs variables, omega and alpha", 1, 1);
    }
  } else {
    if (!out.dim) throw ParseError("missing [system] dim", 1, 1);
    if (!out.lagrangian) throw ParseError("missing [system] lagrangian", 1, 1);
  }
  if (out.transformation && out.transformation->map.empty()) {
    throw ParseError("[transformation] needs a map", 1, 1);
  }
  return out;
}

}  // namespace presym::cli
