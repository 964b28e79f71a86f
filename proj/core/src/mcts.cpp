#include "pivotree/mcts.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>
#include <unordered_set>

#include "pivotree/errors.hpp"

namespace pivotree {

namespace {

// Stream tags under a per-decision generator.
enum : std::uint64_t {
  kExpandStream = 1,
  kSelectStream = 2,
  kExploitStream = 3,
  kRolloutStream = 4,
};

template <typename T>
T& pick_uniform(std::span<T* const> items, CounterRng& rng) {
  return *items[static_cast<std::size_t>(rng.below(items.size()))];
}

}  // namespace

std::string_view to_string(ActionVariant v) { return v == ActionVariant::A1 ? "a1" : "a2"; }
std::string_view to_string(RewardVariant v) { return v == RewardVariant::R1 ? "r1" : "r2"; }

std::optional<ActionVariant> parse_action_variant(std::string_view s) {
  if (s == "a1" || s == "A1") return ActionVariant::A1;
  if (s == "a2" || s == "A2") return ActionVariant::A2;
  return std::nullopt;
}

std::optional<RewardVariant> parse_reward_variant(std::string_view s) {
  if (s == "r1" || s == "R1") return RewardVariant::R1;
  if (s == "r2" || s == "R2") return RewardVariant::R2;
  return std::nullopt;
}

double AlphaSchedule::value(Index n_explore, Index columns) const {
  if (fixed) return *fixed;
  return n_explore * 10 <= columns ? 0.3 : 1.0;
}

Index explorations_for(double multiplier, Index columns) {
  const double v = std::ceil(multiplier * static_cast<double>(columns));
  return v < 1.0 ? 1 : static_cast<Index>(v);
}

Index decision_budget(const MctsConfig& cfg, Index actions) {
  return std::max({cfg.n_explore, cfg.explore_per_action * actions, actions});
}

std::vector<Index> action_set(const SimplexState& state, ActionVariant variant) {
  const double tol = state.tolerances().optimality;
  const auto& dj = state.reduced_costs();
  std::vector<Index> out;
  for (Index j = 0; j < state.cols(); ++j) {
    if (state.is_basic(j)) continue;
    const double v = dj[static_cast<Eigen::Index>(j)];
    if (variant == ActionVariant::A1 ? v < -tol : std::abs(v) > tol) out.push_back(j);
  }
  return out;
}

double reward_r1(Index episode_length) { return -static_cast<double>(episode_length); }

std::vector<double> reward_r2_weights(Index episode_length) {
  std::vector<double> w(episode_length);
  const auto t = static_cast<double>(episode_length);
  for (Index i = 1; i <= episode_length; ++i) w[i - 1] = (t + 1.0 - static_cast<double>(i)) / t;
  return w;
}

double reward_r2(std::span<const double> objective_trace) {
  if (objective_trace.size() < 2) throw ZeroLengthEpisode("objective trace has no pivots");
  const Index t = objective_trace.size() - 1;
  const auto w = reward_r2_weights(t);
  double sum = 0.0;
  for (Index i = 1; i <= t; ++i) sum += w[i - 1] * (objective_trace[i - 1] - objective_trace[i]);
  return sum / static_cast<double>(t);
}

std::unique_ptr<TreeNode> TreeNode::make_root(SimplexState state, Index depth) {
  auto node = std::make_unique<TreeNode>();
  node->signature = basis_signature(state);
  node->depth = depth;
  node->terminal = is_optimal(state);
  node->state = std::move(state);
  return node;
}

void PathHistory::push(const SimplexState& state) {
  signatures_.push_back(basis_signature(state));
  key_order_.push_back(state.basis_key());
  keys_.insert(state.basis_key());
}

bool PathHistory::contains(const BasisSignature& sig) const {
  return std::find(signatures_.begin(), signatures_.end(), sig) != signatures_.end();
}

void expand(TreeNode& node, const StandardFormLP& lp, const MctsConfig& cfg,
            const PathHistory& history, CounterRng& rng) {
  if (node.terminal) throw AlreadyTerminal("cannot expand an optimal node");
  if (node.expanded) return;
  std::vector<Index> actions = action_set(node.state, cfg.action);
  shuffle(std::span<Index>(actions), rng);
  node.children.reserve(actions.size());
  for (Index a : actions) {
    auto child = std::make_unique<TreeNode>();
    child->action = a;
    child->depth = node.depth + 1;
    const Eigen::VectorXd d = entering_direction(node.state, lp, a);
    const auto rt = ratio_test(node.state, d);
    if (!rt) {
      child->forbidden = ForbidReason::Unbounded;
      child->state = node.state;
      child->signature = node.signature;
    } else {
      child->state = node.state;
      apply_pivot(child->state, lp, a, *rt, d);
      child->signature = basis_signature(child->state);
      child->terminal = is_optimal(child->state);
      if (child->signature == node.signature || history.contains(child->signature))
        child->forbidden = ForbidReason::RevisitsAncestor;
    }
    node.children.push_back(std::move(child));
  }
  node.expanded = true;
}

double ucb_score(const TreeNode& child, Index parent_visits, double c_ucb) {
  if (child.visits == 0) return std::numeric_limits<double>::infinity();
  const auto n = static_cast<double>(child.visits);
  const double bonus = std::sqrt(2.0 * std::log(static_cast<double>(parent_visits)) / n);
  return child.reward_sum / n + c_ucb * bonus;
}

double e_soft(std::span<const double> scores, double alpha) {
  const auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
  return *lo + alpha * (*hi - *lo);
}

TreeNode& select_exploration_child(TreeNode& node, double c_ucb, double alpha, CounterRng& rng) {
  std::vector<TreeNode*> allowed;
  std::vector<TreeNode*> unvisited;
  for (auto& child : node.children) {
    if (!child->allowed()) continue;
    allowed.push_back(child.get());
    if (child->visits == 0) unvisited.push_back(child.get());
  }
  if (allowed.empty()) throw DeadEnd("every child of the decision node is forbidden");
  if (!unvisited.empty()) return pick_uniform<TreeNode>(unvisited, rng);

  std::vector<double> scores;
  scores.reserve(allowed.size());
  for (const TreeNode* child : allowed) scores.push_back(ucb_score(*child, node.visits, c_ucb));
  const double threshold = e_soft(scores, alpha);
  std::vector<TreeNode*> eligible;
  for (Index i = 0; i < allowed.size(); ++i)
    if (scores[i] >= threshold) eligible.push_back(allowed[i]);
  if (eligible.empty()) {
    // Only reachable through rounding in e_soft; fall back to the argmax set.
    const double best = *std::max_element(scores.begin(), scores.end());
    for (Index i = 0; i < allowed.size(); ++i)
      if (scores[i] == best) eligible.push_back(allowed[i]);
  }
  return pick_uniform<TreeNode>(eligible, rng);
}

std::string_view to_string(RolloutOutcome outcome) {
  switch (outcome) {
    case RolloutOutcome::ReachedOptimal: return "optimal";
    case RolloutOutcome::HitCap: return "cap";
    case RolloutOutcome::RevisitedBasis: return "revisit";
    case RolloutOutcome::Unbounded: return "unbounded";
  }
  return "?";
}

RolloutResult rollout(const SimplexState& start, const StandardFormLP& lp, const MctsConfig& cfg,
                      CounterRng& rng, const RolloutContext& ctx) {
  RolloutResult result;
  const auto penalize = [&](RolloutOutcome outcome) {
    result.outcome = outcome;
    result.reward = cfg.penalty_reward;
    return result;
  };

  std::unordered_set<std::uint64_t> seen;
  if (ctx.history) seen.insert(ctx.history->keys().begin(), ctx.history->keys().end());
  if (!seen.insert(start.basis_key()).second) return penalize(RolloutOutcome::RevisitedBasis);

  std::vector<double> trace(ctx.lead_in.begin(), ctx.lead_in.end());
  trace.push_back(start.objective());

  SimplexState state = start;
  std::vector<Index> actions;
  while (!is_optimal(state)) {
    if (result.steps >= cfg.rollout_cap) return penalize(RolloutOutcome::HitCap);
    actions = action_set(state, cfg.action);
    bool moved = false;
    while (!actions.empty()) {
      const auto k = static_cast<std::size_t>(rng.below(actions.size()));
      const Index a = actions[k];
      const Eigen::VectorXd d = entering_direction(state, lp, a);
      const auto rt = ratio_test(state, d);
      if (!rt) {
        if (state.reduced_costs()[static_cast<Eigen::Index>(a)] < 0.0)
          return penalize(RolloutOutcome::Unbounded);
        // Worsening edge without a limiting row: draw again.
        actions.erase(actions.begin() + static_cast<std::ptrdiff_t>(k));
        continue;
      }
      apply_pivot(state, lp, a, *rt, d);
      moved = true;
      break;
    }
    if (!moved) return penalize(RolloutOutcome::Unbounded);
    ++result.steps;
    trace.push_back(state.objective());
    if (!seen.insert(state.basis_key()).second) return penalize(RolloutOutcome::RevisitedBasis);
  }

  const Index t = trace.size() - 1;
  result.outcome = RolloutOutcome::ReachedOptimal;
  if (cfg.reward == RewardVariant::R1)
    result.reward = reward_r1(t);
  else
    result.reward = t == 0 ? 0.0 : reward_r2(trace);
  return result;
}

void update_stats(TreeNode& child, double reward, std::uint64_t episode) {
  if (child.last_episode == episode) return;
  child.last_episode = episode;
  ++child.visits;
  child.reward_sum += reward;
}

TreeNode& exploit_step(TreeNode& node, CounterRng& rng) {
  std::vector<TreeNode*> best;
  double best_mean = -std::numeric_limits<double>::infinity();
  bool any_allowed = false;
  for (auto& child : node.children) {
    if (!child->allowed()) continue;
    any_allowed = true;
    if (child->visits == 0) continue;
    const double q = child->mean_reward();
    if (q > best_mean) {
      best_mean = q;
      best.assign(1, child.get());
    } else if (q == best_mean) {
      best.push_back(child.get());
    }
  }
  if (!any_allowed) throw DeadEnd("every child of the decision node is forbidden");
  if (best.empty()) throw DeadEnd("no child of the decision node has been visited");
  return pick_uniform<TreeNode>(best, rng);
}

std::string_view to_string(MctsStatus status) {
  switch (status) {
    case MctsStatus::Optimal: return "optimal";
    case MctsStatus::Unbounded: return "unbounded";
    case MctsStatus::DeadEnd: return "dead_end";
    case MctsStatus::IterLimit: return "iter_limit";
  }
  return "?";
}

MctsResult mcts_solve(const StandardFormLP& lp, const SimplexState& initial, const MctsConfig& cfg) {
  MctsResult result;
  const CounterRng root_rng(cfg.seed);
  PathHistory history;
  history.push(initial);
  SimplexState state = initial;

  for (Index depth = 0;; ++depth) {
    if (is_optimal(state)) {
      result.status = MctsStatus::Optimal;
      break;
    }
    if (depth >= cfg.max_decisions) {
      result.status = MctsStatus::IterLimit;
      break;
    }
    const CounterRng decision = root_rng.split(depth);
    CounterRng expand_rng = decision.split(kExpandStream);
    CounterRng select_rng = decision.split(kSelectStream);
    CounterRng exploit_rng = decision.split(kExploitStream);
    const CounterRng rollout_base = decision.split(kRolloutStream);

    auto node = TreeNode::make_root(state, depth);
    expand(*node, lp, cfg, history, expand_rng);

    Index allowed = 0;
    bool unbounded = false;
    for (const auto& child : node->children) {
      if (child->allowed()) ++allowed;
      if (child->forbidden == ForbidReason::Unbounded &&
          state.reduced_costs()[static_cast<Eigen::Index>(child->action)] < 0.0)
        unbounded = true;
    }
    if (unbounded) {
      result.status = MctsStatus::Unbounded;
      break;
    }
    if (allowed == 0) {
      result.status = MctsStatus::DeadEnd;
      break;
    }

    const Index budget = decision_budget(cfg, node->children.size());
    const double alpha = cfg.alpha.value(budget, lp.cols());
    const double lead_in[] = {state.objective()};
    const RolloutContext ctx{&history, lead_in};
    for (Index e = 0; e < budget; ++e) {
      TreeNode& child = select_exploration_child(*node, cfg.c_ucb, alpha, select_rng);
      CounterRng episode_rng = rollout_base.split(e);
      const RolloutResult r = rollout(child.state, lp, cfg, episode_rng, ctx);
      result.rollout_pivots += r.steps;
      update_stats(child, r.reward, e);
      ++node->visits;
    }
    result.episodes += budget;

    TreeNode& chosen = exploit_step(*node, exploit_rng);
    result.path.entering.push_back(chosen.action);
    state = std::move(chosen.state);
    history.push(state);
  }
  result.path.final_objective = objective_value(lp, state);
  return result;
}

PathCollection collect_paths(const StandardFormLP& lp, const SimplexState& initial,
                             const MctsConfig& cfg, Index n_exe, unsigned threads) {
  PathCollection out;
  out.runs.resize(n_exe);
  const auto run_one = [&](Index k) {
    MctsConfig c = cfg;
    c.seed = cfg.seed + k;
    out.runs[k] = mcts_solve(lp, initial, c);
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_exe)));
  if (threads == 1) {
    for (Index k = 0; k < n_exe; ++k) run_one(k);
  } else {
    std::atomic<Index> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (Index k; (k = next++) < n_exe;) run_one(k);
      });
    for (auto& th : pool) th.join();
  }

  // Replay-verify each optimal run once.
  std::vector<bool> valid(n_exe, false);
  for (Index k = 0; k < n_exe; ++k) {
    const MctsResult& r = out.runs[k];
    if (r.status != MctsStatus::Optimal) continue;
    const ReplayResult replay = replay_path(lp, initial, r.path.entering);
    const double obj = objective_value(lp, replay.final_state);
    const double tol = initial.tolerances().optimality * std::max(1.0, std::abs(obj));
    valid[k] = replay.reached_optimal && std::abs(obj - r.path.final_objective) <= tol;
    if (valid[k] && (!out.min_length || r.path.length() < *out.min_length))
      out.min_length = r.path.length();
  }

  std::set<std::vector<Index>> known;
  out.discovery_curve.reserve(n_exe);
  for (Index k = 0; k < n_exe; ++k) {
    const MctsResult& r = out.runs[k];
    if (valid[k] && r.path.length() == *out.min_length &&
        known.insert(r.path.entering).second) {
      out.paths.push_back(r.path);
    }
    out.discovery_curve.push_back(out.paths.size());
  }
  return out;
}

}  // namespace pivotree
