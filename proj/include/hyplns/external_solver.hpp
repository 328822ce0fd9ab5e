#pragma once

#include <map>
#include <string>

#include "hyplns/ilp.hpp"
#include "hyplns/solve_types.hpp"

namespace hyplns {

// Subprocess adapter for an external MILP solver. The command template is
// expanded with {mps}, {time_limit} and {solution_out}; the solver is
// expected to write "name value" lines (column names as in the MPS writer)
// to the solution file.
struct AdapterConfig {
  std::string command_template;
  std::string workdir = "";   // defaults to the system temp directory
  bool keep_files = false;
  bool quiet = true;          // redirect subprocess output to /dev/null
  double default_time_limit_s = 3600.0;
};

// Writes the fixed-variable sub-ILP as MPS (fixings as FX bounds), runs the
// subprocess, and parses at most one incumbent from the solution file. Falls
// back to the passed incumbent (status feasible-budget-exhausted, warning
// flag set on subprocess failure) when nothing better comes back.
SolveResult external_solve(const IlpInstance& instance,
                           const std::map<std::int32_t, std::uint8_t>& fixed,
                           const SolveBudget& budget, const Assignment& incumbent,
                           const AdapterConfig& config);

}  // namespace hyplns
