#pragma once

// MPS reader. Sections NAME, OBJSENSE, ROWS, COLUMNS, RHS, RANGES, BOUNDS and ENDATA
// are understood; fields are split on whitespace and fall back to the fixed column
// layout when the token count does not fit.

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pivotree/lp.hpp"

namespace pivotree {

enum class ObjectiveSense { Minimize, Maximize };
enum class RowKind { LessEqual, GreaterEqual, Equal };

struct RawRow {
  std::string name;
  RowKind kind = RowKind::Equal;
  double rhs = 0.0;
  std::optional<double> range;
};

struct RawColumn {
  std::string name;
  double objective = 0.0;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
};

struct Coefficient {
  Index row = 0;
  Index column = 0;
  double value = 0.0;
};

struct RawLP {
  std::string name;
  ObjectiveSense sense = ObjectiveSense::Minimize;
  std::string objective_row;
  /// Constant term of the objective (negated RHS entry of the objective row).
  double objective_constant = 0.0;
  std::vector<RawRow> rows;
  std::vector<RawColumn> columns;
  std::vector<Coefficient> coefficients;

  std::optional<Index> row_index(std::string_view name) const;
  std::optional<Index> column_index(std::string_view name) const;
};

/// Throws ParseError (with a 1-based line number) or UnsupportedFeature.
RawLP parse_mps(std::string_view text);
RawLP parse_mps(std::istream& in);
/// Throws Error if the file cannot be opened.
RawLP read_mps_file(const std::string& path);

}  // namespace pivotree
