#include "pivotree/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "pivotree/errors.hpp"
#include "pivotree/rng.hpp"

namespace pivotree {

void StandardFormLP::validate() const {
  const auto m = A.rows();
  const auto n = A.cols();
  if (m < 1) throw InvalidModel("constraint matrix has no rows");
  if (n < m) throw InvalidModel("constraint matrix has fewer columns than rows");
  if (b.size() != m) throw InvalidModel("right-hand side length does not match row count");
  if (c.size() != n) throw InvalidModel("objective length does not match column count");
  if (!var_names.empty() && static_cast<Eigen::Index>(var_names.size()) != n)
    throw InvalidModel("variable name count does not match column count");
  if (!row_names.empty() && static_cast<Eigen::Index>(row_names.size()) != m)
    throw InvalidModel("row name count does not match row count");
  if (!A.allFinite() || !b.allFinite() || !c.allFinite() || !std::isfinite(objective_offset))
    throw InvalidModel("model contains NaN or infinite entries");
}

std::size_t BasisSignatureHash::operator()(const BasisSignature& sig) const noexcept {
  std::uint64_t h = 0x84222325cbf29ce4ULL;
  for (Index col : sig.columns) h = mix64(h ^ (static_cast<std::uint64_t>(col) + 1));
  return static_cast<std::size_t>(h);
}

std::uint64_t column_key(Index column) {
  return mix64(static_cast<std::uint64_t>(column) * CounterRng::kGamma + 0x2545f4914f6cdd1dULL);
}

SimplexState SimplexState::from_basis(const StandardFormLP& lp, std::vector<Index> basis,
                                      const Tolerances& tol) {
  const Index m = lp.rows();
  const Index n = lp.cols();
  if (basis.size() != m) throw SingularBasis("basis size differs from row count");
  SimplexState s;
  s.tol_ = tol;
  s.position_.assign(n, -1);
  for (Index r = 0; r < m; ++r) {
    const Index col = basis[r];
    if (col >= n) throw SingularBasis("basis column out of range");
    if (s.position_[col] >= 0) throw SingularBasis("basis column repeated");
    s.position_[col] = static_cast<std::int32_t>(r);
    s.basis_key_ ^= column_key(col);
  }
  s.basis_ = std::move(basis);
  s.refactorize(lp);
  return s;
}

std::optional<Index> SimplexState::basis_position(Index column) const {
  if (position_[column] < 0) return std::nullopt;
  return static_cast<Index>(position_[column]);
}

void SimplexState::refactorize(const StandardFormLP& lp) {
  const auto m = static_cast<Eigen::Index>(basis_.size());
  Eigen::MatrixXd B(m, m);
  for (Eigen::Index r = 0; r < m; ++r) B.col(r) = lp.A.col(static_cast<Eigen::Index>(basis_[r]));
  Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
  if (!lu.isInvertible()) throw SingularBasis("basis matrix is singular");
  basis_inverse_ = lu.inverse();
  x_basic_ = basis_inverse_ * lp.b;
  pivots_since_refactor_ = 0;
  recompute_duals(lp);
}

void SimplexState::recompute_duals(const StandardFormLP& lp) {
  const auto m = static_cast<Eigen::Index>(basis_.size());
  Eigen::VectorXd cb(m);
  for (Eigen::Index r = 0; r < m; ++r) cb[r] = lp.c[static_cast<Eigen::Index>(basis_[r])];
  const Eigen::VectorXd y = basis_inverse_.transpose() * cb;
  reduced_costs_ = lp.c;
  reduced_costs_.noalias() -= lp.A.transpose() * y;
  for (Index col : basis_) reduced_costs_[static_cast<Eigen::Index>(col)] = 0.0;
  objective_ = cb.dot(x_basic_);
}

Eigen::VectorXd SimplexState::primal_solution() const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(position_.size()));
  for (Index r = 0; r < basis_.size(); ++r)
    x[static_cast<Eigen::Index>(basis_[r])] = x_basic_[static_cast<Eigen::Index>(r)];
  return x;
}

// Grants the free pivot functions write access to the state internals.
struct PivotAccess {
  static void exchange(SimplexState& s, const StandardFormLP& lp, Index entering, Index row,
                       const Eigen::VectorXd& d, double theta) {
    const auto r = static_cast<Eigen::Index>(row);
    const double piv = d[r];
    const Index leaving = s.basis_[row];

    s.x_basic_.noalias() -= theta * d;
    s.x_basic_[r] = theta;

    const Eigen::RowVectorXd pivot_row = s.basis_inverse_.row(r) / piv;
    s.basis_inverse_.noalias() -= d * pivot_row;
    s.basis_inverse_.row(r) = pivot_row;

    s.basis_[row] = entering;
    s.position_[leaving] = -1;
    s.position_[entering] = static_cast<std::int32_t>(row);
    s.basis_key_ ^= column_key(leaving) ^ column_key(entering);

    if (++s.pivots_since_refactor_ >= SimplexState::kRefactorInterval) {
      s.refactorize(lp);
    } else {
      for (Eigen::Index i = 0; i < s.x_basic_.size(); ++i) {
        if (s.x_basic_[i] < 0.0 && s.x_basic_[i] > -s.tol_.feasibility) s.x_basic_[i] = 0.0;
      }
      s.recompute_duals(lp);
    }
  }
};

Eigen::VectorXd reduced_costs(const SimplexState& state, const StandardFormLP& lp) {
  const auto m = static_cast<Eigen::Index>(state.rows());
  Eigen::VectorXd cb(m);
  for (Eigen::Index r = 0; r < m; ++r)
    cb[r] = lp.c[static_cast<Eigen::Index>(state.basis()[static_cast<Index>(r)])];
  const Eigen::VectorXd y = state.basis_inverse().transpose() * cb;
  Eigen::VectorXd dj = lp.c - lp.A.transpose() * y;
  for (Index col : state.basis()) dj[static_cast<Eigen::Index>(col)] = 0.0;
  return dj;
}

Eigen::VectorXd entering_direction(const SimplexState& state, const StandardFormLP& lp,
                                   Index entering) {
  return state.basis_inverse() * lp.A.col(static_cast<Eigen::Index>(entering));
}

std::optional<RatioTestResult> ratio_test(const SimplexState& state,
                                          const Eigen::VectorXd& direction) {
  const double pivot_tol = state.tolerances().pivot;
  const auto& x = state.x_basic();
  const auto& basis = state.basis();
  std::optional<RatioTestResult> best;
  for (Eigen::Index i = 0; i < direction.size(); ++i) {
    const double d = direction[i];
    if (d <= pivot_tol) continue;
    const double ratio = std::max(x[i], 0.0) / d;
    const auto row = static_cast<Index>(i);
    if (!best) {
      best = RatioTestResult{row, basis[row], ratio};
      continue;
    }
    const double tie = 1e-12 * std::max(1.0, best->theta);
    if (ratio < best->theta - tie) {
      best = RatioTestResult{row, basis[row], ratio};
    } else if (ratio <= best->theta + tie && basis[row] < best->leaving) {
      best = RatioTestResult{row, basis[row], std::min(ratio, best->theta)};
    }
  }
  return best;
}

std::optional<RatioTestResult> ratio_test(const SimplexState& state, const StandardFormLP& lp,
                                          Index entering) {
  return ratio_test(state, entering_direction(state, lp, entering));
}

PivotStep pivot_on_row(SimplexState& state, const StandardFormLP& lp, Index entering, Index row,
                       const Eigen::VectorXd& direction) {
  const double piv = direction[static_cast<Eigen::Index>(row)];
  if (std::abs(piv) < state.tolerances().pivot)
    throw SingularBasis("pivot element below tolerance");
  const double theta = state.x_basic()[static_cast<Eigen::Index>(row)] / piv;
  const double before = state.objective();
  PivotStep step{entering, state.basis()[row], row, theta, 0.0};
  PivotAccess::exchange(state, lp, entering, row, direction, theta);
  step.objective_delta = before - state.objective();
  return step;
}

PivotStep pivot_in_place(SimplexState& state, const StandardFormLP& lp, Index entering) {
  if (entering >= state.cols()) throw Error("entering column out of range");
  if (state.is_basic(entering)) throw Error("entering column is already basic");
  const Eigen::VectorXd d = entering_direction(state, lp, entering);
  const auto rt = ratio_test(state, d);
  if (!rt) {
    std::ostringstream msg;
    msg << "column " << entering << " has no limiting row";
    throw Unbounded(msg.str());
  }
  return apply_pivot(state, lp, entering, *rt, d);
}

PivotStep apply_pivot(SimplexState& state, const StandardFormLP& lp, Index entering,
                      const RatioTestResult& ratio, const Eigen::VectorXd& direction) {
  const double before = state.objective();
  PivotStep step{entering, ratio.leaving, ratio.row, ratio.theta, 0.0};
  PivotAccess::exchange(state, lp, entering, ratio.row, direction, ratio.theta);
  step.objective_delta = before - state.objective();
  return step;
}

SimplexState pivot(const SimplexState& state, const StandardFormLP& lp, Index entering) {
  SimplexState next = state;
  pivot_in_place(next, lp, entering);
  return next;
}

bool is_optimal(const SimplexState& state) {
  return state.reduced_costs().minCoeff() >= -state.tolerances().optimality;
}

BasisSignature basis_signature(std::span<const Index> basis) {
  BasisSignature sig{std::vector<Index>(basis.begin(), basis.end())};
  std::sort(sig.columns.begin(), sig.columns.end());
  return sig;
}

BasisSignature basis_signature(const SimplexState& state) {
  return basis_signature(std::span<const Index>(state.basis()));
}

double objective_value(const StandardFormLP& lp, const SimplexState& state) {
  return lp.objective_offset + state.objective();
}

namespace {

// Column j is a positive multiple of the unit vector e_row.
std::optional<Index> unit_row(const StandardFormLP& lp, Eigen::Index j, const Eigen::VectorXd& sign) {
  std::optional<Index> row;
  for (Eigen::Index i = 0; i < lp.A.rows(); ++i) {
    const double v = lp.A(i, j);
    if (v == 0.0) continue;
    if (row || sign[i] * v <= 0.0) return std::nullopt;
    row = static_cast<Index>(i);
  }
  return row;
}

}  // namespace

PhaseOneResult phase_one(const StandardFormLP& lp, const Tolerances& tol) {
  lp.validate();
  const Index m = lp.rows();
  const Index n = lp.cols();

  Eigen::VectorXd sign(static_cast<Eigen::Index>(m));
  for (Index i = 0; i < m; ++i) sign[static_cast<Eigen::Index>(i)] = lp.b[static_cast<Eigen::Index>(i)] < 0 ? -1.0 : 1.0;

  // A complete set of unit columns (scanning from the right so appended slacks win) is
  // already a feasible basis. Otherwise every row gets an artificial.
  std::vector<std::optional<Index>> seed(m);
  for (Index j = n; j-- > 0;) {
    if (auto row = unit_row(lp, static_cast<Eigen::Index>(j), sign); row && !seed[*row]) seed[*row] = j;
  }
  if (std::all_of(seed.begin(), seed.end(), [](const auto& s) { return s.has_value(); })) {
    std::vector<Index> basis(m);
    for (Index i = 0; i < m; ++i) basis[i] = *seed[i];
    auto state = SimplexState::from_basis(lp, std::move(basis), tol);
    if (state.x_basic().minCoeff() < -tol.feasibility) throw Infeasible("slack basis is infeasible");
    return {std::move(state), 0, 0};
  }

  // Auxiliary problem: min sum(artificials) over [A | D], one artificial per row.
  const Index k = m;
  StandardFormLP aux;
  aux.A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n + k));
  aux.A.leftCols(static_cast<Eigen::Index>(n)) = lp.A;
  aux.b = lp.b;
  aux.c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n + k));
  std::vector<Index> basis(m);
  for (Index i = 0; i < m; ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    const auto col = static_cast<Eigen::Index>(n + i);
    aux.A(row, col) = sign[row];
    aux.c[col] = 1.0;
    basis[i] = n + i;
  }

  auto state = SimplexState::from_basis(aux, std::move(basis), tol);
  Index pivots = 0;
  Index stalled = 0;
  bool bland = false;
  constexpr Index kPivotCap = 200000;
  constexpr Index kStallLimit = 50;
  while (true) {
    const auto& dj = state.reduced_costs();
    std::optional<Index> entering;
    double best = -tol.optimality;
    for (Index j = 0; j < n + k; ++j) {
      const double v = dj[static_cast<Eigen::Index>(j)];
      if (v < best) {
        entering = j;
        if (bland) break;
        best = v;
      }
    }
    if (!entering) break;
    if (pivots >= kPivotCap) throw Error("phase one did not converge");
    const PivotStep step = pivot_in_place(state, aux, *entering);
    ++pivots;
    // Dantzig can cycle on degenerate vertices; fall back to Bland until progress resumes.
    if (step.objective_delta > tol.optimality) {
      stalled = 0;
      bland = false;
    } else if (++stalled >= kStallLimit) {
      bland = true;
    }
  }
  state.refactorize(aux);
  const double scale = std::max(1.0, lp.b.cwiseAbs().maxCoeff());
  if (state.objective() > tol.feasibility * scale) {
    std::ostringstream msg;
    msg << "phase one optimum " << state.objective() << " > 0";
    throw Infeasible(msg.str());
  }

  // Drive zero-level artificials out of the basis.
  for (Index row = 0; row < m; ++row) {
    if (state.basis()[row] < n) continue;
    const Eigen::RowVectorXd alpha = state.basis_inverse().row(static_cast<Eigen::Index>(row)) * lp.A;
    std::optional<Index> swap_in;
    double largest = tol.pivot * 1e2;
    for (Index j = 0; j < n; ++j) {
      if (state.is_basic(j)) continue;
      const double v = std::abs(alpha[static_cast<Eigen::Index>(j)]);
      if (v > largest) {
        largest = v;
        swap_in = j;
      }
    }
    if (!swap_in) {
      const Index art = state.basis()[row] - n;
      const std::string name = lp.row_names.empty() ? std::to_string(art) : lp.row_names[art];
      throw DegenerateArtificialStall(name, row);
    }
    pivot_on_row(state, aux, *swap_in, row, entering_direction(state, aux, *swap_in));
  }

  auto result = SimplexState::from_basis(lp, state.basis(), tol);
  if (result.x_basic().minCoeff() < -tol.feasibility * scale)
    throw Infeasible("phase one basis lost feasibility on refactorization");
  return {std::move(result), pivots, k};
}

ReplayResult replay_path(const StandardFormLP& lp, const SimplexState& initial,
                         std::span<const Index> entering) {
  ReplayResult out{initial, {}, false};
  out.steps.reserve(entering.size());
  for (Index j : entering) out.steps.push_back(pivot_in_place(out.final_state, lp, j));
  out.reached_optimal = is_optimal(out.final_state);
  return out;
}

}  // namespace pivotree
