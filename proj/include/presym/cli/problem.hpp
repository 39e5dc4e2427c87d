#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace presym::cli {

enum class RankPolicy { warn, fail };

struct EngineSettings {
  std::size_t max_generations = 10;
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  RankPolicy rank_policy = RankPolicy::warn;
};

/// Where a constraint set of a transformation comes from: `ambient` (none),
/// `primary`, `final` (the stabilized Hamiltonian chain) or an explicit
/// list of expressions over (q, p).
struct SurfaceSpec {
  enum class Kind { ambient, primary, final, explicit_list };
  Kind kind = Kind::ambient;
  std::vector<std::string> constraints;
};

struct TransformationSpec {
  /// Images of q1..qn, p1..pn.
  std::vector<std::string> map;
  SurfaceSpec source;
  SurfaceSpec target;
  /// Candidate valence; nullopt asks for find_valence only.
  std::optional<std::string> valence;
};

struct PresymplecticSpec {
  std::vector<std::string> variables;
  std::vector<std::vector<std::string>> omega;
  std::vector<std::string> alpha;
};

struct ProblemFile {
  std::optional<std::size_t> dim;
  std::optional<std::string> lagrangian;
  EngineSettings engine;
  std::optional<TransformationSpec> transformation;
  std::optional<PresymplecticSpec> presymplectic;
};

/// Parses the bracket-section key = value format. Throws ParseError with the
/// offending line.
ProblemFile parse_problem(std::string_view text);

}  // namespace presym::cli
