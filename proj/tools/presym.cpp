#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "presym/cli/run.hpp"

namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

presym::cli::Outcome process(presym::cli::Command command, const std::string& path,
                             const presym::cli::Overrides& overrides) {
  auto contents = read_file(path);
  if (!contents) {
    presym::cli::Outcome out;
    out.exit_code = presym::cli::exit_code::input_error;
    out.report["file"] = path;
    out.report["command"] = presym::cli::to_string(command);
    out.report["status"] = {{"exit_code", out.exit_code}, {"error", "input error: cannot read file"}};
    out.diagnostics = path + ": input error: cannot read file\n";
    return out;
  }
  return presym::cli::run(command, path, *contents, overrides);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constraint analysis for singular Lagrangian systems"};
  app.require_subcommand(1, 1);

  std::vector<std::string> files;
  std::string json_path;
  presym::cli::Overrides overrides;
  std::size_t jobs = 1;

  for (const char* name : {"analyze", "hamiltonian", "lagrangian", "k-check", "canonical-check", "validate"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("files", files, "Problem files")->required();
    sub->add_option("--json", json_path, "Write the JSON report to PATH");
    sub->add_option("--seed", overrides.seed, "Sampling seed");
    sub->add_option("--max-generations", overrides.max_generations, "Generation cap")->check(CLI::PositiveNumber);
    sub->add_option("--trials", overrides.trials, "Random samples per check")->check(CLI::PositiveNumber);
    sub->add_option("--jobs", jobs, "Files processed in parallel")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : presym::cli::exit_code::input_error;
  }

  auto command = *presym::cli::parse_command(app.get_subcommands().front()->get_name());
  std::vector<presym::cli::Outcome> outcomes(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) outcomes[i] = process(command, files[i], overrides);
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(jobs, files.size()); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  int worst = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (i > 0) std::cout << "\n";
    std::cout << presym::cli::render_text(outcomes[i].report);
    std::cerr << outcomes[i].diagnostics;
    worst = std::max(worst, outcomes[i].exit_code);
  }

  if (!json_path.empty()) {
    nlohmann::ordered_json doc;
    if (outcomes.size() == 1) {
      doc = outcomes.front().report;
    } else {
      doc = nlohmann::ordered_json::array();
      for (const auto& o : outcomes) doc.push_back(o.report);
    }
    std::ofstream out(json_path, std::ios::binary);
    if (!out) {
      std::cerr << json_path << ": cannot write JSON report\n";
      return std::max(worst, static_cast<int>(presym::cli::exit_code::input_error));
    }
    out << doc.dump(2) << "\n";
  }
  return worst;
}
