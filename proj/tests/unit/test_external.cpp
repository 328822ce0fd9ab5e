#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "hyplns/errors.hpp"
#include "hyplns/external_solver.hpp"
#include "hyplns/generators.hpp"
#include "hyplns/subsolver.hpp"

using namespace hyplns;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("hyplns_ext_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("failing subprocess falls back to the incumbent with a warning") {
  const IlpInstance inst = gen_mvc(5, 6, 4u);
  Assignment ones{std::vector<std::uint8_t>(5, 1), {}};
  TempDir dir;
  AdapterConfig config;
  config.command_template = "false";
  config.workdir = dir.path.string();

  const auto res = external_solve(inst, {}, SolveBudget::seconds(1.0), ones, config);
  CHECK(res.status == SolveStatus::FeasibleBudgetExhausted);
  CHECK(res.warning);
  CHECK(res.best->values == ones.values);
  CHECK(res.incumbents.empty());
}

TEST_CASE("solution files are parsed and validated") {
  const IlpInstance inst = gen_mvc(4, 3, 8u);
  Assignment ones{std::vector<std::uint8_t>(4, 1), {}};
  TempDir dir;

  // A fake solver that writes a fixed improving solution.
  const auto best = solve(inst, SolveBudget::nodes(100000));
  REQUIRE(best.status == SolveStatus::Optimal);
  std::string sol_text;
  for (std::int32_t i = 0; i < 4; ++i)
    sol_text += "x" + std::to_string(i) + " " + std::to_string(int(best.best->values[i])) + "\\n";

  AdapterConfig config;
  config.command_template = "printf '" + sol_text + "' > {solution_out}";
  config.workdir = dir.path.string();
  const auto res = external_solve(inst, {}, SolveBudget::seconds(1.0), ones, config);
  CHECK(!res.warning);
  CHECK(res.best_objective == best.best_objective);
  if (best.best_objective < evaluate_objective(inst, ones))
    CHECK(res.incumbents.size() == 1);

  // Garbage output raises an adapter error.
  AdapterConfig bad = config;
  bad.command_template = "printf 'y0 banana\\n' > {solution_out}";
  CHECK_THROWS_AS(external_solve(inst, {}, SolveBudget::seconds(1.0), ones, bad), AdapterError);
}

TEST_CASE("fixings survive the MPS round and are enforced on parse") {
  const IlpInstance inst = gen_mvc(5, 5, 12u);
  Assignment ones{std::vector<std::uint8_t>(5, 1), {}};
  TempDir dir;

  // Echo-solver: reads nothing, emits the incumbent (all ones).
  AdapterConfig config;
  config.command_template = "printf 'x0 1\\nx1 1\\nx2 1\\nx3 1\\nx4 1\\n' > {solution_out}";
  config.workdir = dir.path.string();
  const auto res = external_solve(inst, {{0, 1}}, SolveBudget::seconds(1.0), ones, config);
  CHECK(res.best->values == ones.values);

  // A solution violating the fixing is rejected.
  AdapterConfig bad = config;
  bad.command_template = "printf 'x0 0\\nx1 1\\nx2 1\\nx3 1\\nx4 1\\n' > {solution_out}";
  CHECK_THROWS_AS(external_solve(inst, {{0, 1}}, SolveBudget::seconds(1.0), ones, bad),
                  AdapterError);
}
