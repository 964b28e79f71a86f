#include "pivotree/standard_form.hpp"

#include <cmath>

#include "pivotree/errors.hpp"

namespace pivotree {

Eigen::VectorXd StandardFormMap::original_solution(const Eigen::VectorXd& x) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(original_columns));
  for (Index j = 0; j < original_columns; ++j)
    out[static_cast<Eigen::Index>(j)] = x[static_cast<Eigen::Index>(j)] + shift[j];
  return out;
}

namespace {

struct Row {
  std::string name;
  std::vector<std::pair<Index, double>> terms;  // structural columns
  RowKind kind;
  double rhs;
};

}  // namespace

ConvertedLP to_standard_form(const RawLP& raw) {
  const Index n0 = raw.columns.size();
  if (n0 == 0 || raw.rows.empty()) throw InvalidModel("model has no rows or no columns");

  ConvertedLP out;
  StandardFormMap& map = out.map;
  map.original_columns = n0;
  map.sense = raw.sense == ObjectiveSense::Maximize ? -1.0 : 1.0;
  map.shift.assign(n0, 0.0);
  for (Index j = 0; j < n0; ++j) {
    const RawColumn& col = raw.columns[j];
    if (!std::isfinite(col.lower)) throw UnsupportedFeature("BOUNDS", "free column " + col.name);
    if (col.upper < col.lower) throw InvalidModel("column " + col.name + " has upper < lower");
    map.shift[j] = col.lower;
  }

  std::vector<std::vector<std::pair<Index, double>>> terms(raw.rows.size());
  for (const Coefficient& a : raw.coefficients) terms[a.row].emplace_back(a.column, a.value);

  // Constraint rows, then the second half of every ranged row, then upper-bound rows.
  std::vector<Row> rows;
  std::vector<Row> range_rows;
  for (Index i = 0; i < raw.rows.size(); ++i) {
    const RawRow& r = raw.rows[i];
    if (!r.range) {
      rows.push_back({r.name, terms[i], r.kind, r.rhs});
      continue;
    }
    const double range = *r.range;
    double lo = r.rhs;
    double hi = r.rhs;
    switch (r.kind) {
      case RowKind::LessEqual: lo = r.rhs - std::abs(range); break;
      case RowKind::GreaterEqual: hi = r.rhs + std::abs(range); break;
      case RowKind::Equal: (range >= 0.0 ? hi : lo) = r.rhs + range; break;
    }
    rows.push_back({r.name, terms[i], RowKind::GreaterEqual, lo});
    range_rows.push_back({r.name + ":range", terms[i], RowKind::LessEqual, hi});
  }
  rows.insert(rows.end(), range_rows.begin(), range_rows.end());
  for (Index j = 0; j < n0; ++j) {
    const RawColumn& col = raw.columns[j];
    if (!std::isfinite(col.upper)) continue;
    rows.push_back({"ub:" + col.name, {{j, 1.0}}, RowKind::LessEqual, col.upper});
  }

  Index slacks = 0;
  for (const Row& r : rows)
    if (r.kind != RowKind::Equal) ++slacks;
  const auto m = static_cast<Eigen::Index>(rows.size());
  const auto n = static_cast<Eigen::Index>(n0 + slacks);

  StandardFormLP& lp = out.lp;
  lp.A = Eigen::MatrixXd::Zero(m, n);
  lp.b = Eigen::VectorXd::Zero(m);
  lp.c = Eigen::VectorXd::Zero(n);
  for (Index j = 0; j < n0; ++j) {
    lp.c[static_cast<Eigen::Index>(j)] = map.sense * raw.columns[j].objective;
    lp.var_names.push_back(raw.columns[j].name);
  }
  lp.objective_offset = map.sense * raw.objective_constant;
  for (Index j = 0; j < n0; ++j) lp.objective_offset += lp.c[static_cast<Eigen::Index>(j)] * map.shift[j];

  Eigen::Index slack = static_cast<Eigen::Index>(n0);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Row& r = rows[static_cast<Index>(i)];
    double rhs = r.rhs;
    for (auto [j, v] : r.terms) {
      lp.A(i, static_cast<Eigen::Index>(j)) += v;
      rhs -= v * map.shift[j];
    }
    if (r.kind != RowKind::Equal) {
      lp.A(i, slack) = r.kind == RowKind::LessEqual ? 1.0 : -1.0;
      lp.var_names.push_back((r.kind == RowKind::LessEqual ? "slack:" : "surplus:") + r.name);
      ++slack;
    }
    lp.b[i] = rhs;
    if (rhs < 0.0) {
      lp.A.row(i) *= -1.0;
      lp.b[i] = -rhs;
    }
    lp.row_names.push_back(r.name);
  }
  lp.validate();
  return out;
}

}  // namespace pivotree
