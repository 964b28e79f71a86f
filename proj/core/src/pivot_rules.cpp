#include "pivotree/pivot_rules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pivotree/errors.hpp"

namespace pivotree {

std::string_view to_string(RuleKind rule) {
  switch (rule) {
    case RuleKind::Dantzig: return "dantzig";
    case RuleKind::Bland: return "bland";
    case RuleKind::SteepestEdge: return "steepest";
    case RuleKind::GreatestImprovement: return "greatest";
    case RuleKind::Devex: return "devex";
  }
  return "unknown";
}

std::optional<RuleKind> parse_rule(std::string_view name) {
  if (name == "dantzig" || name == "danzig") return RuleKind::Dantzig;
  if (name == "bland") return RuleKind::Bland;
  if (name == "steepest" || name == "steepest-edge" || name == "steepestedge")
    return RuleKind::SteepestEdge;
  if (name == "greatest" || name == "greatest-improvement" || name == "greatestimprovement")
    return RuleKind::GreatestImprovement;
  if (name == "devex") return RuleKind::Devex;
  return std::nullopt;
}

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Optimal: return "optimal";
    case RunStatus::Unbounded: return "unbounded";
    case RunStatus::IterLimit: return "iter-limit";
  }
  return "unknown";
}

DevexWeights DevexWeights::initial(const SimplexState& state) {
  DevexWeights w;
  w.reset(state);
  w.resets = 0;
  return w;
}

void DevexWeights::reset(const SimplexState& state) {
  weights.assign(state.cols(), 1.0);
  reference_frame.assign(state.cols(), false);
  for (Index j = 0; j < state.cols(); ++j) reference_frame[j] = !state.is_basic(j);
  ++resets;
}

void DevexWeights::update(const SimplexState& state_after, Index entering, Index leaving,
                          const Eigen::RowVectorXd& pivot_row, Index /*row*/) {
  const double alpha_q = pivot_row[static_cast<Eigen::Index>(entering)];
  const double wq = weights[entering];
  bool overflow = false;
  for (Index j = 0; j < weights.size(); ++j) {
    if (j == entering || state_after.is_basic(j)) continue;
    const double ratio = pivot_row[static_cast<Eigen::Index>(j)] / alpha_q;
    weights[j] = std::max(weights[j], ratio * ratio * wq);
    overflow = overflow || weights[j] > kResetThreshold;
  }
  weights[leaving] = std::max(wq / (alpha_q * alpha_q), 1.0);
  weights[entering] = 1.0;
  overflow = overflow || weights[leaving] > kResetThreshold;
  if (overflow) reset(state_after);
}

std::optional<Index> select_entering(RuleKind rule, const SimplexState& state,
                                     const StandardFormLP& lp, const DevexWeights* weights) {
  const auto& dj = state.reduced_costs();
  const double tol = state.tolerances().optimality;
  std::optional<Index> best;
  double best_score = std::numeric_limits<double>::infinity();
  for (Index j = 0; j < state.cols(); ++j) {
    const double v = dj[static_cast<Eigen::Index>(j)];
    if (v >= -tol || state.is_basic(j)) continue;
    double score = v;
    switch (rule) {
      case RuleKind::Bland:
        return j;
      case RuleKind::Dantzig:
        break;
      case RuleKind::SteepestEdge:
        score = v / entering_direction(state, lp, j).norm();
        break;
      case RuleKind::GreatestImprovement: {
        const auto rt = ratio_test(state, lp, j);
        if (!rt) return j;
        score = v * rt->theta;
        break;
      }
      case RuleKind::Devex:
        if (weights) score = v / std::sqrt(weights->weights[j]);
        break;
    }
    if (score < best_score) {
      best_score = score;
      best = j;
    }
  }
  return best;
}

SimplexRun run_simplex(const StandardFormLP& lp, const SimplexState& initial, RuleKind rule,
                       Index max_iters) {
  SimplexRun run{RunStatus::Optimal, {}, initial};
  std::optional<DevexWeights> devex;
  if (rule == RuleKind::Devex) devex = DevexWeights::initial(initial);
  auto& state = run.final_state;
  while (true) {
    const auto entering = select_entering(rule, state, lp, devex ? &*devex : nullptr);
    if (!entering) break;
    if (run.path.length() >= max_iters) {
      run.status = RunStatus::IterLimit;
      break;
    }
    Eigen::RowVectorXd pivot_row;
    const Eigen::VectorXd d = entering_direction(state, lp, *entering);
    const auto rt = ratio_test(state, d);
    if (!rt) {
      run.status = RunStatus::Unbounded;
      break;
    }
    if (devex) pivot_row = state.basis_inverse().row(static_cast<Eigen::Index>(rt->row)) * lp.A;
    const PivotStep step = apply_pivot(state, lp, *entering, *rt, d);
    run.path.entering.push_back(*entering);
    if (devex) devex->update(state, step.entering, step.leaving, pivot_row, step.row);
  }
  run.path.final_objective = objective_value(lp, state);
  return run;
}

}  // namespace pivotree
