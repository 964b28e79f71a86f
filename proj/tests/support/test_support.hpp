#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "pivotree/lp.hpp"

namespace pivotree::testing {

inline std::string netlib_path(const std::string& name) {
  return std::string(PIVOTREE_DATA_DIR) + "/netlib/" + name + ".mps";
}

inline const std::vector<std::string>& netlib_names() {
  static const std::vector<std::string> names = {"ADLITTLE", "AFIRO", "BLEND",  "SC105",
                                                 "SC50A",    "SC50B", "SCAGR7", "SHARE2B"};
  return names;
}

/// min c^T x, A x = b from row-major literals.
inline StandardFormLP make_lp(std::vector<double> c, std::vector<std::vector<double>> a,
                              std::vector<double> b) {
  StandardFormLP lp;
  const auto m = static_cast<Eigen::Index>(a.size());
  const auto n = static_cast<Eigen::Index>(c.size());
  lp.c = Eigen::Map<Eigen::VectorXd>(c.data(), n);
  lp.b = Eigen::Map<Eigen::VectorXd>(b.data(), m);
  lp.A.resize(m, n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) lp.A(i, j) = a[i][j];
  for (Eigen::Index j = 0; j < n; ++j) lp.var_names.push_back("x" + std::to_string(j));
  for (Eigen::Index i = 0; i < m; ++i) lp.row_names.push_back("r" + std::to_string(i));
  return lp;
}

/// Textbook full-tableau simplex, written without any of the library's pivoting code.
/// `basis` must index an identity submatrix of A. Returns the number of pivots taken
/// to reach optimality, or -1 if unbounded.
struct TableauOracle {
  enum class Rule { MostNegative, SmallestIndex };

  static int count_pivots(const StandardFormLP& lp, std::vector<Index> basis, Rule rule) {
    const Index m = lp.rows();
    const Index n = lp.cols();
    // rows 0..m-1 hold [A | b]; row m holds [c | -z].
    std::vector<std::vector<double>> t(m + 1, std::vector<double>(n + 1, 0.0));
    for (Index i = 0; i < m; ++i) {
      for (Index j = 0; j < n; ++j) t[i][j] = lp.A(i, j);
      t[i][n] = lp.b[i];
    }
    for (Index j = 0; j < n; ++j) t[m][j] = lp.c[j];
    for (Index i = 0; i < m; ++i) {
      const double cb = t[m][basis[i]];
      for (Index j = 0; j <= n; ++j) t[m][j] -= cb * t[i][j];
    }
    for (int pivots = 0;; ++pivots) {
      Index enter = n;
      for (Index j = 0; j < n; ++j) {
        if (t[m][j] >= -1e-7) continue;
        if (enter == n) {
          enter = j;
          if (rule == Rule::SmallestIndex) break;
        } else if (t[m][j] < t[m][enter]) {
          enter = j;
        }
      }
      if (enter == n) return pivots;
      Index row = m;
      double best = 0.0;
      for (Index i = 0; i < m; ++i) {
        if (t[i][enter] <= 1e-9) continue;
        const double ratio = t[i][n] / t[i][enter];
        if (row == m || ratio < best || (ratio == best && basis[i] < basis[row])) {
          row = i;
          best = ratio;
        }
      }
      if (row == m) return -1;
      const double p = t[row][enter];
      for (Index j = 0; j <= n; ++j) t[row][j] /= p;
      for (Index i = 0; i <= m; ++i) {
        if (i == row) continue;
        const double f = t[i][enter];
        if (f == 0.0) continue;
        for (Index j = 0; j <= n; ++j) t[i][j] -= f * t[row][j];
      }
      basis[row] = enter;
    }
  }
};

}  // namespace pivotree::testing
