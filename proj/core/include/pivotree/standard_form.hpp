#pragma once

// RawLP -> min c^T x, A x = b, x >= 0.
//
// Column layout: shifted structural columns (x' = x - lower), one slack or surplus per
// inequality row, one slack per finite upper bound. Ranged rows become a pair of
// inequalities. Rows with negative right-hand side are negated. A maximization
// objective is negated.

#include <string>
#include <vector>

#include "pivotree/lp.hpp"
#include "pivotree/mps.hpp"

namespace pivotree {

struct StandardFormMap {
  /// Columns of the original model; structural column j of the standard form is x_j.
  Index original_columns = 0;
  /// Lower-bound shift per original column.
  std::vector<double> shift;
  /// +1 for minimization, -1 for maximization.
  double sense = 1.0;

  /// Original objective from the standard-form objective value.
  double original_objective(double standard_objective) const { return sense * standard_objective; }
  /// Original variable values from a standard-form solution.
  Eigen::VectorXd original_solution(const Eigen::VectorXd& x) const;
};

struct ConvertedLP {
  StandardFormLP lp;
  StandardFormMap map;
};

/// Throws UnsupportedFeature for free or infinite-lower-bound columns and InvalidModel
/// for empty models or upper < lower.
ConvertedLP to_standard_form(const RawLP& raw);

}  // namespace pivotree
