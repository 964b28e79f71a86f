#pragma once

// Experiment driver behind the `pivotree` executable. run() parses a full argument
// vector, so tests can drive every subcommand in-process.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pivotree/lp.hpp"
#include "pivotree/mcts.hpp"
#include "pivotree/standard_form.hpp"

namespace pivotree::cli {

enum ExitCode : int {
  kOk = 0,
  /// At least one requested cell could not be computed.
  kPartial = 1,
  kUsage = 2,
};

struct Instance {
  std::string id;
  StandardFormLP lp;
  SimplexState initial;
  /// Rows and structural columns of the model as read, before standard form.
  Index rows = 0;
  Index columns = 0;
  /// Converts standard-form objective values to the model's own sense.
  double objective_sign = 1.0;

  double report_objective(const SimplexState& state) const {
    return objective_sign * objective_value(lp, state);
  }
};

/// "--mps PATH" or "--gen MxN" (seeded), followed by phase one.
Instance load_mps(const std::string& path);
Instance load_generated(const std::string& dims, std::uint64_t seed);

/// Parses "MxN"; throws std::invalid_argument.
std::pair<Index, Index> parse_dims(const std::string& dims);

/// Worker count: hardware concurrency, capped by PIVOTREE_THREADS when set.
unsigned worker_threads();

/// `argv[0]` is the program name. Output files named by --out are written directly;
/// otherwise results go to `out`. Diagnostics go to `err`.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace pivotree::cli
