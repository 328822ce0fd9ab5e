#include "hyplns/external_solver.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "hyplns/errors.hpp"
#include "hyplns/ilp_io.hpp"

namespace hyplns {

namespace {

namespace fs = std::filesystem;

std::string substitute(std::string text, const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  while ((pos = text.find(key, pos)) != std::string::npos) {
    text.replace(pos, key.size(), value);
    pos += value.size();
  }
  return text;
}

std::atomic<std::uint64_t> g_call_counter{0};

}  // namespace

SolveResult external_solve(const IlpInstance& instance,
                           const std::map<std::int32_t, std::uint8_t>& fixed,
                           const SolveBudget& budget, const Assignment& incumbent,
                           const AdapterConfig& config) {
  budget.validate();
  if (incumbent.size() != instance.num_vars)
    throw DimensionError("incumbent length does not match instance");
  if (config.command_template.empty()) throw ParameterError("adapter command template is empty");
  for (const auto& [var, val] : fixed) {
    if (var < 0 || var >= instance.num_vars)
      throw DimensionError("fixed map references variable outside the instance");
    if (val > 1) throw ParameterError("fixed values must be 0 or 1");
  }

  const fs::path dir = config.workdir.empty() ? fs::temp_directory_path() : fs::path(config.workdir);
  fs::create_directories(dir);
  const std::uint64_t id = g_call_counter.fetch_add(1);
  const std::string stem = "hyplns_sub_" + std::to_string(::getpid()) + "_" + std::to_string(id);
  const fs::path mps_path = dir / (stem + ".mps");
  const fs::path sol_path = dir / (stem + ".sol");

  std::vector<std::optional<std::uint8_t>> fix_vec(static_cast<std::size_t>(instance.num_vars));
  for (const auto& [var, val] : fixed) fix_vec[var] = val;
  write_mps(instance, mps_path.string(), fix_vec);

  const double time_limit = budget.wall_time_s ? *budget.wall_time_s : config.default_time_limit_s;
  std::ostringstream tl;
  tl << time_limit;
  std::string cmd = config.command_template;
  cmd = substitute(cmd, "{mps}", mps_path.string());
  cmd = substitute(cmd, "{time_limit}", tl.str());
  cmd = substitute(cmd, "{solution_out}", sol_path.string());
  if (config.quiet) cmd = "( " + cmd + " ) > /dev/null 2>&1";

  const int rc = std::system(cmd.c_str());

  SolveResult result;
  result.status = SolveStatus::FeasibleBudgetExhausted;
  result.best = incumbent;
  result.best_objective = evaluate_objective(instance, incumbent);

  auto cleanup = [&] {
    if (config.keep_files) return;
    std::error_code ec;
    fs::remove(mps_path, ec);
    fs::remove(sol_path, ec);
  };

  std::ifstream sol(sol_path);
  if (!sol || sol.peek() == std::ifstream::traits_type::eof()) {
    // Failure or timeout without output: fall back to the incumbent.
    (void)rc;
    result.warning = true;
    cleanup();
    return result;
  }

  Assignment parsed = incumbent;
  std::string line;
  long line_no = 0;
  try {
    while (std::getline(sol, line)) {
      ++line_no;
      if (line.empty() || line[0] == '#' || line[0] == '*') continue;
      std::istringstream ss(line);
      std::string name;
      double value;
      if (!(ss >> name >> value))
        throw AdapterError("solution line " + std::to_string(line_no) + " is not 'name value'");
      if (name.size() < 2 || name[0] != 'x')
        throw AdapterError("unknown column '" + name + "' in solution file");
      std::int32_t idx;
      try {
        idx = std::stoi(name.substr(1));
      } catch (const std::exception&) {
        throw AdapterError("unknown column '" + name + "' in solution file");
      }
      if (idx < 0 || idx >= instance.num_vars)
        throw AdapterError("solution column '" + name + "' outside the instance");
      if (value < -0.5 || value > 1.5)
        throw AdapterError("solution value for '" + name + "' is not binary");
      parsed.values[idx] = value >= 0.5 ? 1 : 0;
    }
    for (const auto& [var, val] : fixed)
      if (parsed.values[var] != val)
        throw AdapterError("solution violates fixing of x" + std::to_string(var));
    if (!is_feasible(instance, parsed))
      throw AdapterError("solution file is infeasible for the instance");
  } catch (...) {
    cleanup();
    throw;
  }

  parsed.objective_value = evaluate_objective(instance, parsed);
  if (is_better(*parsed.objective_value, result.best_objective, instance.direction)) {
    IncumbentRecord rec;
    rec.assignment = parsed;
    rec.objective = *parsed.objective_value;
    rec.elapsed_s = 0.0;
    rec.nodes = 0;
    result.incumbents.push_back(rec);
    result.best = parsed;
    result.best_objective = *parsed.objective_value;
  }
  cleanup();
  return result;
}

}  // namespace hyplns
