#pragma once

// Standard-form linear programs and the dense simplex pivoting engine.
//
//   min c^T x  s.t.  A x = b,  x >= 0
//
// A SimplexState carries the basis, an explicit basis inverse that is updated
// by elementary row operations after each pivot (and refactorized from
// scratch every kRefactorInterval pivots), the basic solution and the full
// reduced-cost vector.

#include <Eigen/Dense>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pivotree {

using Index = std::size_t;

struct Tolerances {
  /// Smallest direction component accepted as a pivot element.
  double pivot = 1e-9;
  /// Primal feasibility slack on x_basic.
  double feasibility = 1e-7;
  /// Reduced costs above -optimality count as non-negative.
  double optimality = 1e-7;
};

struct StandardFormLP {
  Eigen::VectorXd c;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  std::vector<std::string> var_names;
  std::vector<std::string> row_names;
  /// Constant added to c^T x when reporting objective values.
  double objective_offset = 0.0;

  Index rows() const { return static_cast<Index>(A.rows()); }
  Index cols() const { return static_cast<Index>(A.cols()); }

  /// Throws InvalidModel unless dimensions agree, 1 <= m <= n and all data is finite.
  void validate() const;
};

/// Canonical (sorted) basis. Equal iff the two bases are equal as sets.
struct BasisSignature {
  std::vector<Index> columns;

  friend bool operator==(const BasisSignature&, const BasisSignature&) = default;
  friend auto operator<=>(const BasisSignature&, const BasisSignature&) = default;
};

struct BasisSignatureHash {
  std::size_t operator()(const BasisSignature& sig) const noexcept;
};

/// Order-independent 64-bit key of a column set: XOR of a fixed per-column hash.
std::uint64_t column_key(Index column);

class SimplexState {
 public:
  static constexpr Index kRefactorInterval = 64;

  /// Builds a state by factorizing A_B from scratch. Throws SingularBasis.
  static SimplexState from_basis(const StandardFormLP& lp, std::vector<Index> basis,
                                 const Tolerances& tol = {});

  const std::vector<Index>& basis() const { return basis_; }
  const Eigen::MatrixXd& basis_inverse() const { return basis_inverse_; }
  const Eigen::VectorXd& x_basic() const { return x_basic_; }
  /// Full-length reduced costs; entries of basic columns are exactly zero.
  const Eigen::VectorXd& reduced_costs() const { return reduced_costs_; }
  /// c_B^T x_B, without lp.objective_offset.
  double objective() const { return objective_; }
  const Tolerances& tolerances() const { return tol_; }

  Index rows() const { return basis_.size(); }
  Index cols() const { return position_.size(); }
  bool is_basic(Index column) const { return position_[column] >= 0; }
  /// Row of the basis holding `column`, if basic.
  std::optional<Index> basis_position(Index column) const;
  /// XOR of column_key over the basis; equal for equal basis sets.
  std::uint64_t basis_key() const { return basis_key_; }
  Index pivots_since_refactor() const { return pivots_since_refactor_; }

  /// Recomputes B^-1, x_B and reduced costs from the current basis.
  void refactorize(const StandardFormLP& lp);

  /// x = (x_B scattered over the basis, zeros elsewhere), length n.
  Eigen::VectorXd primal_solution() const;

 private:
  friend struct PivotAccess;

  void recompute_duals(const StandardFormLP& lp);

  std::vector<Index> basis_;
  std::vector<std::int32_t> position_;
  Eigen::MatrixXd basis_inverse_;
  Eigen::VectorXd x_basic_;
  Eigen::VectorXd reduced_costs_;
  double objective_ = 0.0;
  std::uint64_t basis_key_ = 0;
  Index pivots_since_refactor_ = 0;
  Tolerances tol_;
};

struct PivotStep {
  Index entering = 0;
  Index leaving = 0;
  /// Basis row where the exchange happened.
  Index row = 0;
  /// Step length along the entering edge.
  double theta = 0.0;
  /// c x_prev - c x_new
  double objective_delta = 0.0;
};

struct RatioTestResult {
  Index row = 0;
  Index leaving = 0;
  double theta = 0.0;
};

struct PivotPath {
  std::vector<Index> entering;
  double final_objective = 0.0;

  Index length() const { return entering.size(); }
  friend bool operator==(const PivotPath&, const PivotPath&) = default;
};

/// c_j - c_B^T B^-1 A_j for all j, from the state's current B^-1 (basic entries zero).
Eigen::VectorXd reduced_costs(const SimplexState& state, const StandardFormLP& lp);

/// B^-1 A_j
Eigen::VectorXd entering_direction(const SimplexState& state, const StandardFormLP& lp,
                                   Index entering);

/// Min-ratio test over rows with direction component > pivot tolerance. Ties go to the
/// smallest basic variable index. Returns nullopt when the edge is unbounded.
std::optional<RatioTestResult> ratio_test(const SimplexState& state,
                                          const Eigen::VectorXd& direction);
std::optional<RatioTestResult> ratio_test(const SimplexState& state, const StandardFormLP& lp,
                                          Index entering);

/// Exchanges `entering` with the ratio-test winner. Throws Unbounded or SingularBasis;
/// the state is left untouched on error.
PivotStep pivot_in_place(SimplexState& state, const StandardFormLP& lp, Index entering);
SimplexState pivot(const SimplexState& state, const StandardFormLP& lp, Index entering);

/// Applies a pivot whose direction B^-1 A_entering and ratio test were already computed.
PivotStep apply_pivot(SimplexState& state, const StandardFormLP& lp, Index entering,
                      const RatioTestResult& ratio, const Eigen::VectorXd& direction);

/// Exchanges `entering` into basis row `row` regardless of the ratio test (degenerate
/// swaps). Throws SingularBasis if the pivot element is below tolerance.
PivotStep pivot_on_row(SimplexState& state, const StandardFormLP& lp, Index entering, Index row,
                       const Eigen::VectorXd& direction);

bool is_optimal(const SimplexState& state);

BasisSignature basis_signature(const SimplexState& state);
BasisSignature basis_signature(std::span<const Index> basis);

/// lp.objective_offset + c^T x
double objective_value(const StandardFormLP& lp, const SimplexState& state);

struct PhaseOneResult {
  SimplexState state;
  Index pivots = 0;
  Index artificials = 0;
};

/// Finds a feasible basis by minimizing the sum of artificial variables with the
/// Dantzig rule. When every row already has a unit column (typically a slack) that
/// basis is returned with zero pivots; otherwise every row receives an artificial.
/// Throws Infeasible or DegenerateArtificialStall.
PhaseOneResult phase_one(const StandardFormLP& lp, const Tolerances& tol = {});

struct ReplayResult {
  SimplexState final_state;
  std::vector<PivotStep> steps;
  bool reached_optimal = false;
};

/// Re-executes an entering sequence from `initial`. Throws Error if an entry is basic,
/// out of range, or unbounded.
ReplayResult replay_path(const StandardFormLP& lp, const SimplexState& initial,
                         std::span<const Index> entering);

}  // namespace pivotree
