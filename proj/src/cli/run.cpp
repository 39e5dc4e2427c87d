#include "presym/cli/run.hpp"

#include <sstream>

#include "presym/canonical/transformation.hpp"
#include "presym/cli/problem.hpp"
#include "presym/constraints/hamiltonian.hpp"
#include "presym/constraints/lagrangian.hpp"
#include "presym/error.hpp"
#include "presym/evolution/k_operator.hpp"
#include "presym/expr/parse.hpp"

namespace presym::cli {

using Json = nlohmann::ordered_json;

namespace {

struct CommandName {
  Command command;
  const char* name;
};

constexpr CommandName kCommands[] = {
    {Command::analyze, "analyze"},         {Command::hamiltonian, "hamiltonian"},
    {Command::lagrangian, "lagrangian"},   {Command::k_check, "k-check"},
    {Command::canonical_check, "canonical-check"}, {Command::validate, "validate"},
};

/// Analysis stopped without an error but with an unfinished result.
class NotStabilized : public Error {
 public:
  using Error::Error;
};

std::string rational_string(const Rational& r) { return r.get_str(); }

class Reporter {
 public:
  Reporter(Command command, const ProblemFile& problem, const Overrides& overrides)
      : command_(command),
        problem_(problem),
        settings_(problem.engine),
        rng_(0) {
    if (overrides.seed) settings_.seed = *overrides.seed;
    if (overrides.max_generations) settings_.max_generations = *overrides.max_generations;
    if (overrides.trials) settings_.trials = *overrides.trials;
    rng_ = SampleRng(settings_.seed);
  }

  void settings_section(Json& report) const {
    report["settings"] = {{"seed", settings_.seed},
                          {"max_generations", settings_.max_generations},
                          {"trials", settings_.trials},
                          {"rank_policy", settings_.rank_policy == RankPolicy::warn ? "warn" : "fail"}};
  }

  void run(Json& report) {
    if (problem_.presymplectic) {
      run_presymplectic(report);
    } else {
      run_lagrangian(report);
    }
  }

  const std::vector<std::string>& warnings() const { return warnings_; }
  bool unstabilized() const { return unstabilized_; }

 private:
  std::string str(const RationalExpr& e) const { return e.to_string(*names_); }

  Json vec(const RfVector& v) const {
    Json out = Json::array();
    for (const auto& e : v) out.push_back(str(e));
    return out;
  }

  Json mat(const RfMatrix& m) const {
    Json out = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vec(m.row(r)));
    return out;
  }

  Json constraint(const Constraint& c) const {
    return {{"expr", str(c.expr)},
            {"side", to_string(c.side)},
            {"generation", c.generation},
            {"origin", to_string(c.origin)},
            {"class", to_string(c.klass)}};
  }

  Json chain_json(const ConstraintChain& chain, const std::string& multiplier_stem) const {
    Json gens = Json::array();
    for (const auto& gen : chain.generations) {
      Json list = Json::array();
      for (const auto& c : gen) list.push_back(constraint(c));
      gens.push_back(list);
    }
    Json multipliers = Json::array();
    for (std::size_t k = 0; k < chain.multipliers.size(); ++k) {
      const auto& m = chain.multipliers[k];
      multipliers.push_back({{"name", multiplier_stem + std::to_string(k + 1)},
                             {"value", m ? Json(str(*m)) : Json("free")}});
    }
    return {{"stabilized", chain.stabilized},
            {"generations", gens},
            {"multipliers", multipliers},
            {"multiplier_rank_history", chain.multiplier_rank_history}};
  }

  void note_chain(const ConstraintChain& chain, const std::string& what) {
    if (!chain.stabilized) {
      unstabilized_ = true;
      warnings_.push_back(what + " did not stabilize within " + std::to_string(settings_.max_generations) +
                          " generations");
    }
  }

  void rank_check(Json& section, const std::string& what, const RfMatrix& m) {
    auto check = sample_rank_check(m, settings_.trials, rng_);
    Json drops = Json::array();
    for (const auto& drop : check.drops) drops.push_back(drop.rank);
    section[what] = {{"generic_rank", check.generic_rank},
                     {"samples", check.samples},
                     {"rejected_samples", check.rejected},
                     {"sample_rank_drops", drops},
                     {"degeneracy_locus", check.degeneracy_minor ? Json(str(*check.degeneracy_minor)) : Json()},
                     {"constant_rank_evidence", check.constant_rank_evidence()}};
    if (!check.constant_rank_evidence()) {
      std::string message = "rank of " + what + " may drop";
      if (check.degeneracy_minor) message += " on " + str(*check.degeneracy_minor) + " = 0";
      if (settings_.rank_policy == RankPolicy::fail) throw IndeterminateResult(message);
      warnings_.push_back(message);
    }
  }

  void run_lagrangian(Json& report) {
    const std::size_t n = *problem_.dim;
    VarTable vars(n);
    phase_.emplace(vars.with_momenta());
    names_ = &*phase_;
    report["input"] = {{"dim", n}, {"lagrangian", *problem_.lagrangian}};

    auto lagrangian = parse(*problem_.lagrangian, vars);
    auto sys = build_system(vars, lagrangian, n);
    Json system = {{"lagrangian", str(sys.lagrangian)},
                   {"hessian", mat(sys.hessian)},
                   {"affine", vec(sys.affine)},
                   {"potential", str(sys.potential)},
                   {"energy", str(sys.energy)},
                   {"omega_l", mat(sys.omega)},
                   {"alpha", vec(sys.alpha)},
                   {"hessian_rank", sys.hessian_rank},
                   {"omega_rank", sys.omega_rank},
                   {"rank_identity", sys.rank_identity_holds()}};
    Json kernel = Json::array();
    for (const auto& k : kernel_omega(sys)) kernel.push_back(vec(k.components));
    system["kernel_omega_l"] = kernel;
    Json vertical = Json::array();
    for (const auto& g : vertical_kernel(sys)) vertical.push_back(vec(g));
    system["vertical_kernel"] = vertical;
    report["system"] = system;
    if (!sys.rank_identity_holds()) {
      warnings_.push_back("rank omega_L differs from 2 rank W: SODE constraints appear in the first generation");
    }
    Json ranks = Json::object();
    rank_check(ranks, "hessian", sys.hessian);
    rank_check(ranks, "omega_l", sys.omega);
    report["system"]["rank_checks"] = ranks;
    if (command_ == Command::validate) return;

    auto ld = legendre(sys);
    Json momenta = Json::array();
    for (const auto& e : ld.momentum_exprs) momenta.push_back(str(e));
    Json primaries = Json::array();
    for (const auto& e : ld.primary_constraints) primaries.push_back(str(e));
    report["legendre"] = {{"momenta", momenta}, {"primary_constraints", primaries}, {"v_star", vec(ld.v_star)},
                          {"h0", str(ld.h0)}};

    std::optional<ConstraintChain> ham;
    std::optional<ConstraintChain> sode;
    const bool wants_ham = command_ != Command::lagrangian;
    const bool wants_lag = command_ == Command::analyze || command_ == Command::lagrangian ||
                           command_ == Command::k_check;
    if (wants_ham) {
      ham = dirac_run(ld, settings_.max_generations);
      if (ham->stabilized) ham = classify(std::move(*ham), n);
      note_chain(*ham, "Hamiltonian chain");
      report["hamiltonian"] = chain_json(*ham, "lam");
    }
    if (wants_lag) {
      sode = lagrangian_run(sys, true, settings_.max_generations);
      note_chain(*sode, "Lagrangian chain with SODE condition");
      report["lagrangian_sode"] = chain_json(*sode, "acc");
      if (command_ != Command::k_check) {
        auto pchain = lagrangian_run(sys, false, settings_.max_generations);
        note_chain(pchain, "Lagrangian chain without SODE condition");
        report["lagrangian_presymplectic"] = chain_json(pchain, "gauge");
      }
    }
    if (command_ == Command::analyze && ham && sode) {
      Json table = Json::array();
      for (const auto& entry : projectability_report(*sode, *ham, sys, ld)) {
        Json matched = Json::array();
        for (const auto& c : entry.matched) matched.push_back(constraint(c));
        table.push_back({{"constraint", constraint(entry.constraint)},
                         {"representative_projectable", entry.representative_projectable},
                         {"witness", entry.witness ? Json(str(*entry.witness)) : Json()},
                         {"hamiltonian_representative",
                          entry.representative ? Json(str(*entry.representative)) : Json()},
                         {"matched", matched}});
      }
      report["projectability"] = table;
    }
    if ((command_ == Command::analyze || command_ == Command::k_check) && ham && sode) {
      auto k = build_k(sys);
      auto check = verify_k(k, sys, ld);
      report["k_operator"] = {{"qdot", vec(k.qdot)},
                              {"pdot", vec(k.pdot)},
                              {"structural", {{"holds", check.structural()}, {"residual", vec(check.structural_residual)}}},
                              {"dynamical", {{"holds", check.dynamical()}, {"residual", vec(check.dynamical_residual)}}},
                              {"sode", {{"holds", check.sode()}, {"residual", vec(check.sode_residual)}}}};
      auto shift = generation_shift_check(k, sys, ld, *ham, *sode, settings_.trials, rng_);
      Json entries = Json::array();
      for (const auto& e : shift.entries) {
        entries.push_back({{"hamiltonian", constraint(e.hamiltonian)},
                           {"image", str(e.image)},
                           {"zero_image", e.zero_image},
                           {"contained", to_string(e.contained)},
                           {"sampled", e.sampled ? Json(*e.sampled) : Json()},
                           {"image_projectable", e.image_projectable},
                           {"expected_origin", to_string(e.expected_origin)}});
      }
      Json coverage = Json::array();
      for (const auto& c : shift.coverage) {
        coverage.push_back({{"lagrangian_generation", c.lagrangian_generation}, {"covered", to_string(c.covered)}});
      }
      report["generation_shift"] = {{"holds", shift.holds()}, {"entries", entries}, {"coverage", coverage}};
    }
    if (command_ == Command::analyze || command_ == Command::canonical_check) {
      if (problem_.transformation) {
        report["canonical"] = canonical(*problem_.transformation, n, ld, ham);
      } else if (command_ == Command::canonical_check) {
        throw InputError("canonical-check needs a [transformation] section");
      }
    }
  }

  ConstrainedSystem surface_for(const SurfaceSpec& spec, std::size_t n, const LegendreData& ld,
                                const std::optional<ConstraintChain>& ham) const {
    ConstrainedSystem out{ld.chart(), canonical_omega(n), {}};
    switch (spec.kind) {
      case SurfaceSpec::Kind::ambient:
        break;
      case SurfaceSpec::Kind::primary:
        out.constraints = ld.primary_constraints;
        break;
      case SurfaceSpec::Kind::final:
        if (!ham) throw InputError("the final surface needs the Hamiltonian chain");
        out.constraints = ham->expressions();
        break;
      case SurfaceSpec::Kind::explicit_list:
        for (const auto& text : spec.constraints) out.constraints.push_back(parse(text, ld.vars));
        break;
    }
    return out;
  }

  Json canonical(const TransformationSpec& spec, std::size_t n, const LegendreData& ld,
                 const std::optional<ConstraintChain>& ham) {
    if (spec.map.size() != 2 * n) {
      throw InputError("transformation map needs " + std::to_string(2 * n) + " entries");
    }
    TransformationPair tp{surface_for(spec.source, n, ld, ham), surface_for(spec.target, n, ld, ham), {}};
    for (const auto& text : spec.map) tp.map.push_back(parse(text, ld.vars));

    auto compat = check_compatibility(tp);
    Json verdicts = Json::array();
    for (auto v : compat.constraints) verdicts.push_back(to_string(v));
    Json out = {{"map", vec(tp.map)},
                {"source_constraints", vec(tp.source.constraints)},
                {"target_constraints", vec(tp.target.constraints)},
                {"jacobian_rank", compat.jacobian_rank},
                {"compatibility", verdicts},
                {"compatible", compat.holds(2 * n)}};
    auto ranks_json = [&](const ConstrainedSystem& s) {
      auto r = reduced_ranks(s, settings_.trials, rng_);
      if (!r.constant_rank()) warnings_.push_back("restricted form changes rank across surface samples");
      return Json{{"dim_c", r.dim_c},
                  {"rank", r.rank},
                  {"kernel_dim", r.kernel_dim},
                  {"quotient_dim", r.quotient_dim},
                  {"sample_ranks", r.sample_ranks}};
    };
    out["source_ranks"] = ranks_json(tp.source);
    out["target_ranks"] = ranks_json(tp.target);
    if (!compat.holds(2 * n)) throw InputError("transformation is not compatible with the constraint surfaces");

    auto valence = find_valence(tp);
    switch (valence.kind) {
      case Valence::Kind::number:
        out["valence"] = rational_string(valence.value);
        break;
      case Valence::Kind::none:
        out["valence"] = "none";
        break;
      case Valence::Kind::any:
        out["valence"] = "any";
        break;
    }
    if (spec.valence) {
      Rational c = parse(*spec.valence, ld.vars).constant_value();
      auto check = valence_check(tp, c);
      out["candidate_valence"] = {{"value", rational_string(c)}, {"holds", check.holds}, {"residual", mat(check.residual)}};
    }
    auto inv = kernel_invariance(tp, settings_.trials, rng_);
    out["kernel_invariance"] = {{"samples", inv.samples},
                                {"kernel_dim", inv.kernel_dim},
                                {"failures", inv.failures},
                                {"holds", inv.holds()}};
    return out;
  }

  void run_presymplectic(Json& report) {
    const auto& spec = *problem_.presymplectic;
    if (command_ != Command::analyze && command_ != Command::validate) {
      throw InputError(std::string(to_string(command_)) + " needs a [system] section");
    }
    phase_.emplace(VarTable::chart(spec.variables));
    names_ = &*phase_;
    const std::size_t m = spec.variables.size();
    if (spec.omega.size() != m || spec.alpha.size() != m) throw InputError("omega and alpha must match the variables");
    PresymplecticSystem sys{*phase_, phase_->variables(), RfMatrix(m, m), {}};
    for (std::size_t i = 0; i < m; ++i) {
      if (spec.omega[i].size() != m) throw InputError("omega must be square");
      for (std::size_t j = 0; j < m; ++j) sys.omega(i, j) = parse(spec.omega[i][j], *phase_);
      sys.alpha.push_back(parse(spec.alpha[i], *phase_));
    }
    report["input"] = {{"variables", spec.variables}, {"omega", mat(sys.omega)}, {"alpha", vec(sys.alpha)}};
    validate(sys);
    Json ranks = Json::object();
    rank_check(ranks, "omega", sys.omega);
    report["system"] = {{"rank_checks", ranks}};
    if (command_ == Command::validate) return;

    auto result = pca_run(sys, settings_.max_generations);
    Json gens = Json::array();
    for (std::size_t g = 0; g < result.generations.size(); ++g) {
      Json list = Json::array();
      for (const auto& e : result.generations[g]) list.push_back({{"expr", str(e)}, {"generation", g + 1}});
      gens.push_back(list);
    }
    Json gauge = Json::array();
    for (const auto& g : result.gauge_basis) gauge.push_back(vec(g));
    report["presymplectic"] = {{"stabilized", result.stabilized},
                               {"generations", gens},
                               {"particular_solution",
                                result.particular_solution ? vec(*result.particular_solution) : Json()},
                               {"gauge_basis", gauge},
                               {"multiplier_rank_history", result.multiplier_rank_history}};
    if (!result.stabilized) {
      unstabilized_ = true;
      warnings_.push_back("presymplectic algorithm did not stabilize");
    }
  }

  Command command_;
  const ProblemFile& problem_;
  EngineSettings settings_;
  SampleRng rng_;
  std::optional<VarTable> phase_;
  const VarTable* names_ = nullptr;
  std::vector<std::string> warnings_;
  bool unstabilized_ = false;
};

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& c : kCommands) {
    if (name == c.name) return c.command;
  }
  return std::nullopt;
}

const char* to_string(Command command) {
  for (const auto& c : kCommands) {
    if (command == c.command) return c.name;
  }
  return "?";
}

Outcome run(Command command, const std::string& label, std::string_view contents, const Overrides& overrides) {
  Outcome out;
  Json& report = out.report;
  report["file"] = label;
  report["command"] = to_string(command);
  report["conventions"] = {
      "Hamiltonian primary constraints are generation 1; Lagrangian constraints are labelled from generation 2",
      "constraints are printed as primitive numerators with positive leading coefficient"};

  std::string error;
  std::optional<Reporter> reporter;
  try {
    auto problem = parse_problem(contents);
    reporter.emplace(command, problem, overrides);
    reporter->settings_section(report);
    reporter->run(report);
    if (reporter->unstabilized()) out.exit_code = exit_code::indeterminate;
  } catch (const InconsistentDynamics& e) {
    out.exit_code = exit_code::inconsistent;
    error = std::string("inconsistent dynamics: ") + e.what();
  } catch (const IndeterminateResult& e) {
    out.exit_code = exit_code::indeterminate;
    error = std::string("indeterminate: ") + e.what();
  } catch (const InputError& e) {
    out.exit_code = exit_code::input_error;
    error = std::string("input error: ") + e.what();
  }

  Json warnings = Json::array();
  std::ostringstream diag;
  if (reporter) {
    for (const auto& w : reporter->warnings()) {
      warnings.push_back(w);
      diag << label << ": warning: " << w << "\n";
    }
  }
  if (!error.empty()) diag << label << ": " << error << "\n";
  report["warnings"] = warnings;
  report["status"] = {{"exit_code", out.exit_code}, {"error", error.empty() ? Json() : Json(error)}};
  out.diagnostics = diag.str();
  return out;
}

namespace {

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

std::string scalar_text(const Json& j) {
  if (j.is_null()) return "none";
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "yes" : "no";
  return j.dump();
}

bool is_constraint(const Json& j) { return j.is_object() && j.contains("expr"); }

std::string constraint_text(const Json& j) {
  std::string out = j.at("expr").get<std::string>();
  std::vector<std::string> tags;
  for (const auto& [key, value] : j.items()) {
    if (key == "expr" || key == "side") continue;
    tags.push_back(key == "generation" ? "gen " + scalar_text(value) : scalar_text(value));
  }
  if (!tags.empty()) {
    out += "  [";
    for (std::size_t i = 0; i < tags.size(); ++i) out += (i == 0 ? "" : ", ") + tags[i];
    out += "]";
  }
  return out;
}

std::string inline_array(const Json& j) {
  std::string out = "[";
  bool first = true;
  for (const auto& e : j) {
    out += (first ? "" : ", ") + (is_constraint(e) ? constraint_text(e) : scalar_text(e));
    first = false;
  }
  return out + "]";
}

bool all_scalar(const Json& j) {
  for (const auto& e : j) {
    if (!is_scalar(e) || scalar_text(e).find(", ") != std::string::npos) return false;
  }
  return true;
}

void render(std::ostringstream& os, const std::string& key, const Json& value, int indent);

void render_items(std::ostringstream& os, const Json& array, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& e : array) {
    if (is_constraint(e)) {
      os << pad << "- " << constraint_text(e) << "\n";
    } else if (is_scalar(e)) {
      os << pad << "- " << scalar_text(e) << "\n";
    } else if (e.is_array() && all_scalar(e)) {
      os << pad << "- " << inline_array(e) << "\n";
    } else if (e.is_array()) {
      os << pad << "-\n";
      render_items(os, e, indent + 2);
    } else {
      os << pad << "-\n";
      for (const auto& [k, v] : e.items()) render(os, k, v, indent + 2);
    }
  }
}

void render(std::ostringstream& os, const std::string& key, const Json& value, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (is_scalar(value)) {
    os << pad << key << ": " << scalar_text(value) << "\n";
  } else if (is_constraint(value)) {
    os << pad << key << ": " << constraint_text(value) << "\n";
  } else if (value.is_array() && (value.empty() || all_scalar(value))) {
    os << pad << key << ": " << inline_array(value) << "\n";
  } else if (value.is_array()) {
    os << pad << key << ":\n";
    render_items(os, value, indent + 2);
  } else {
    os << pad << key << ":\n";
    for (const auto& [k, v] : value.items()) render(os, k, v, indent + 2);
  }
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, value] : report.items()) {
    if (!is_scalar(value) && !first) os << "\n";
    render(os, key, value, 0);
    first = false;
  }
  return os.str();
}

}  // namespace presym::cli
