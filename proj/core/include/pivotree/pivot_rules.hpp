#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "pivotree/lp.hpp"

namespace pivotree {

enum class RuleKind { Dantzig, Bland, SteepestEdge, GreatestImprovement, Devex };

inline constexpr RuleKind kAllRules[] = {RuleKind::Dantzig, RuleKind::Bland, RuleKind::SteepestEdge,
                                         RuleKind::GreatestImprovement, RuleKind::Devex};

std::string_view to_string(RuleKind rule);
/// Accepts the lower-case names printed by to_string plus a few short aliases.
std::optional<RuleKind> parse_rule(std::string_view name);

/// Reference-framework devex weights (Forrest-Goldfarb update).
struct DevexWeights {
  static constexpr double kResetThreshold = 1e4;

  std::vector<double> weights;
  /// Nonbasic columns at the last reset.
  std::vector<bool> reference_frame;
  Index resets = 0;

  static DevexWeights initial(const SimplexState& state);
  void reset(const SimplexState& state);
  /// Applies the update for a pivot of `entering` in basis row `row`. `pivot_row` is row
  /// `row` of B^-1 A taken before the pivot; `state_after` is the post-pivot state.
  void update(const SimplexState& state_after, Index entering, Index leaving,
              const Eigen::RowVectorXd& pivot_row, Index row);
};

/// Entering column for `rule`, or nullopt when no reduced cost is below -tolerance.
/// Ties go to the smallest index. GreatestImprovement returns an unbounded candidate
/// immediately; the driver reports it.
std::optional<Index> select_entering(RuleKind rule, const SimplexState& state,
                                     const StandardFormLP& lp,
                                     const DevexWeights* weights = nullptr);

enum class RunStatus { Optimal, Unbounded, IterLimit };

std::string_view to_string(RunStatus status);

struct SimplexRun {
  RunStatus status = RunStatus::Optimal;
  PivotPath path;
  SimplexState final_state;

  Index pivot_count() const { return path.length(); }
};

inline constexpr Index kDefaultMaxIters = 1000;

/// Pivots from `initial` with `rule` until optimal, unbounded or `max_iters` pivots.
SimplexRun run_simplex(const StandardFormLP& lp, const SimplexState& initial, RuleKind rule,
                       Index max_iters = kDefaultMaxIters);

}  // namespace pivotree
