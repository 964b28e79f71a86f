#pragma once

// Monte Carlo tree search pivot rule.
//
// At each decision node every action (entering column) is expanded into a child,
// the children are scored by random rollouts selected through a relaxed UCB
// threshold, and the child with the best mean reward is committed. Statistics
// live only on the children of the current decision node; each descent starts
// fresh. Bases already on the committed path are forbidden, which turns the
// basis graph into a pseudo-tree.

#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "pivotree/lp.hpp"
#include "pivotree/rng.hpp"

namespace pivotree {

enum class ActionVariant {
  A1,  ///< nonbasic columns with reduced cost < 0
  A2,  ///< nonbasic columns with reduced cost != 0
};

enum class RewardVariant {
  R1,  ///< negative episode length
  R2,  ///< linearly weighted mean objective decrease
};

std::string_view to_string(ActionVariant v);
std::string_view to_string(RewardVariant v);
std::optional<ActionVariant> parse_action_variant(std::string_view s);
std::optional<RewardVariant> parse_reward_variant(std::string_view s);

/// Either a fixed alpha or the automatic schedule: 0.3 when the exploration budget is at
/// most a tenth of the column count, 1 otherwise.
struct AlphaSchedule {
  std::optional<double> fixed;

  double value(Index n_explore, Index columns) const;
};

struct MctsConfig {
  ActionVariant action = ActionVariant::A1;
  RewardVariant reward = RewardVariant::R1;
  /// Exploration episodes per decision, before the |A| floor is applied.
  Index n_explore = 1;
  /// When nonzero, the per-decision budget is at least explore_per_action * |A|.
  Index explore_per_action = 0;
  double c_ucb = 1.0 / std::sqrt(2.0);
  AlphaSchedule alpha;
  /// Max pivots per rollout counted from the rollout start.
  Index rollout_cap = 1000;
  double penalty_reward = -1e6;
  std::uint64_t seed = 0;
  /// Committed pivots before mcts_solve reports IterLimit.
  Index max_decisions = 1000;
};

/// ceil(multiplier * columns), at least 1.
Index explorations_for(double multiplier, Index columns);

/// Episodes to run at a decision with `actions` candidate children.
Index decision_budget(const MctsConfig& cfg, Index actions);

/// Actions available at `state`, ascending. Empty means optimal (A1) or all reduced
/// costs zero (A2).
std::vector<Index> action_set(const SimplexState& state, ActionVariant variant);

double reward_r1(Index episode_length);
/// Linear-weight variant over c x_0 ... c x_T; throws ZeroLengthEpisode when T = 0.
double reward_r2(std::span<const double> objective_trace);
/// w_i = (T + 1 - i) / T for i = 1..T.
std::vector<double> reward_r2_weights(Index episode_length);

enum class ForbidReason { None, RevisitsAncestor, Unbounded };

struct TreeNode {
  BasisSignature signature;
  Index depth = 0;
  SimplexState state;
  bool terminal = false;

  /// Column whose pivot created this node (unused at the root).
  Index action = 0;
  ForbidReason forbidden = ForbidReason::None;

  Index visits = 0;
  double reward_sum = 0.0;
  std::uint64_t last_episode = std::numeric_limits<std::uint64_t>::max();

  bool expanded = false;
  std::vector<std::unique_ptr<TreeNode>> children;

  static std::unique_ptr<TreeNode> make_root(SimplexState state, Index depth = 0);

  bool allowed() const { return forbidden == ForbidReason::None; }
  /// S / N; only meaningful when visits > 0.
  double mean_reward() const { return reward_sum / static_cast<double>(visits); }
};

/// Bases on the committed path from the root to the decision node (inclusive).
class PathHistory {
 public:
  void push(const SimplexState& state);
  bool contains(const BasisSignature& sig) const;
  bool contains_key(std::uint64_t key) const { return keys_.count(key) > 0; }
  std::span<const BasisSignature> signatures() const { return signatures_; }
  std::span<const std::uint64_t> keys() const { return key_order_; }

 private:
  std::vector<BasisSignature> signatures_;
  std::vector<std::uint64_t> key_order_;
  std::unordered_multiset<std::uint64_t> keys_;
};

/// Creates one child per action. Children that revisit a basis in `history` (or the node
/// itself) or whose pivot is unbounded are kept but marked forbidden. The expansion order
/// is a random permutation of the action set. Throws AlreadyTerminal.
void expand(TreeNode& node, const StandardFormLP& lp, const MctsConfig& cfg,
            const PathHistory& history, CounterRng& rng);

/// S/N + c sqrt(2 ln N_parent / N); +inf for an unvisited child.
double ucb_score(const TreeNode& child, Index parent_visits, double c_ucb);

/// min + alpha (max - min)
double e_soft(std::span<const double> scores, double alpha);

/// Unvisited allowed children first (uniformly), then uniformly among children whose UCB
/// score reaches E_soft, falling back to the argmax set. Throws DeadEnd.
TreeNode& select_exploration_child(TreeNode& node, double c_ucb, double alpha, CounterRng& rng);

enum class RolloutOutcome { ReachedOptimal, HitCap, RevisitedBasis, Unbounded };

std::string_view to_string(RolloutOutcome outcome);

struct RolloutResult {
  double reward = 0.0;
  Index steps = 0;
  RolloutOutcome outcome = RolloutOutcome::ReachedOptimal;
};

struct RolloutContext {
  /// Bases the episode must not return to (the committed path).
  const PathHistory* history = nullptr;
  /// Objective values of pivots that precede `start` in the episode; each counts
  /// towards the episode length T.
  std::span<const double> lead_in;
};

/// Random playout from `start`: uniformly random actions until optimal, a repeated basis,
/// the rollout cap or an unbounded edge. Non-optimal endings earn cfg.penalty_reward.
RolloutResult rollout(const SimplexState& start, const StandardFormLP& lp, const MctsConfig& cfg,
                      CounterRng& rng, const RolloutContext& ctx = {});

/// First-visit update: at most one increment per episode id.
void update_stats(TreeNode& child, double reward, std::uint64_t episode);

/// Allowed child with the best mean reward; exact ties are broken uniformly at random.
/// Throws DeadEnd.
TreeNode& exploit_step(TreeNode& node, CounterRng& rng);

enum class MctsStatus { Optimal, Unbounded, DeadEnd, IterLimit };

std::string_view to_string(MctsStatus status);

struct MctsResult {
  MctsStatus status = MctsStatus::Optimal;
  PivotPath path;
  Index episodes = 0;
  Index rollout_pivots = 0;
};

MctsResult mcts_solve(const StandardFormLP& lp, const SimplexState& initial, const MctsConfig& cfg);

struct PathCollection {
  /// Distinct minimal-length optimal paths, in discovery order.
  std::vector<PivotPath> paths;
  std::optional<Index> min_length;
  /// curve[k] = distinct minimal paths known after k + 1 executions.
  std::vector<Index> discovery_curve;
  std::vector<MctsResult> runs;
};

/// Runs mcts_solve with seeds cfg.seed + 0 ... cfg.seed + n_exe - 1 and keeps the
/// replay-verified optimal paths of minimal length. `threads` > 1 runs executions in
/// parallel; results do not depend on it.
PathCollection collect_paths(const StandardFormLP& lp, const SimplexState& initial,
                             const MctsConfig& cfg, Index n_exe, unsigned threads = 1);

}  // namespace pivotree
