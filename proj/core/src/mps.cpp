#include "pivotree/mps.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_map>

#include "pivotree/errors.hpp"

namespace pivotree {

std::optional<Index> RawLP::row_index(std::string_view name) const {
  for (Index i = 0; i < rows.size(); ++i)
    if (rows[i].name == name) return i;
  return std::nullopt;
}

std::optional<Index> RawLP::column_index(std::string_view name) const {
  for (Index j = 0; j < columns.size(); ++j)
    if (columns[j].name == name) return j;
  return std::nullopt;
}

namespace {

enum class Section { None, Name, ObjSense, Rows, Columns, Rhs, Ranges, Bounds, Done };

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.emplace_back(line.substr(start, i - start));
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

// Fixed layout fields: 2-3, 5-12, 15-22, 25-36, 40-47, 50-61 (1-based columns).
std::vector<std::string> split_fixed(std::string_view line) {
  static constexpr std::pair<std::size_t, std::size_t> kFields[] = {
      {1, 2}, {4, 8}, {14, 8}, {24, 12}, {39, 8}, {49, 12}};
  std::vector<std::string> out;
  for (auto [pos, len] : kFields) {
    if (pos >= line.size()) {
      out.emplace_back();
      continue;
    }
    out.push_back(trim(line.substr(pos, len)));
  }
  return out;
}

class Parser {
 public:
  RawLP run(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '*') continue;
      if (trim(line).empty()) continue;
      if (!std::isspace(static_cast<unsigned char>(line[0]))) {
        header(line);
        if (section_ == Section::Done) break;
        continue;
      }
      data(line);
    }
    if (section_ != Section::Done) throw ParseError(line_no_ + 1, "missing ENDATA");
    if (lp_.objective_row.empty()) throw ParseError(line_no_, "no objective (N) row");
    return std::move(lp_);
  }

 private:
  void header(const std::string& line) {
    const auto tokens = split_ws(line);
    const std::string& key = tokens[0];
    if (key == "NAME") {
      section_ = Section::Name;
      lp_.name = tokens.size() > 1 ? tokens[1] : "";
    } else if (key == "OBJSENSE") {
      section_ = Section::ObjSense;
      if (tokens.size() > 1) set_sense(tokens[1]);
    } else if (key == "ROWS") {
      section_ = Section::Rows;
    } else if (key == "COLUMNS") {
      section_ = Section::Columns;
    } else if (key == "RHS") {
      section_ = Section::Rhs;
    } else if (key == "RANGES") {
      section_ = Section::Ranges;
    } else if (key == "BOUNDS") {
      section_ = Section::Bounds;
    } else if (key == "ENDATA") {
      section_ = Section::Done;
    } else {
      throw ParseError(line_no_, "unknown section '" + key + "'");
    }
  }

  void data(const std::string& line) {
    switch (section_) {
      case Section::ObjSense: set_sense(trim(line)); break;
      case Section::Rows: rows_line(line); break;
      case Section::Columns: columns_line(line); break;
      case Section::Rhs: rhs_line(line, false); break;
      case Section::Ranges: rhs_line(line, true); break;
      case Section::Bounds: bounds_line(line); break;
      default: throw ParseError(line_no_, "data line outside a section");
    }
  }

  void set_sense(const std::string& s) {
    if (s == "MAX" || s == "MAXIMIZE")
      lp_.sense = ObjectiveSense::Maximize;
    else if (s == "MIN" || s == "MINIMIZE")
      lp_.sense = ObjectiveSense::Minimize;
    else
      throw ParseError(line_no_, "unknown objective sense '" + s + "'");
  }

  double number(const std::string& s) const {
    if (s.empty()) throw ParseError(line_no_, "missing number");
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v))
      throw ParseError(line_no_, "bad number '" + s + "'");
    return v;
  }

  void rows_line(const std::string& line) {
    auto t = split_ws(line);
    if (t.size() != 2) {
      t = split_fixed(line);
      t.resize(2);
      if (t[0].empty() || t[1].empty()) throw ParseError(line_no_, "ROWS entry needs a kind and a name");
    }
    const std::string& kind = t[0];
    const std::string& name = t[1];
    if (row_ids_.count(name) || free_rows_.count(name) || name == lp_.objective_row)
      throw ParseError(line_no_, "duplicate row '" + name + "'");
    if (kind == "N") {
      if (lp_.objective_row.empty())
        lp_.objective_row = name;
      else
        free_rows_.emplace(name, true);
      return;
    }
    RawRow row{name, RowKind::Equal, 0.0, std::nullopt};
    if (kind == "L")
      row.kind = RowKind::LessEqual;
    else if (kind == "G")
      row.kind = RowKind::GreaterEqual;
    else if (kind != "E")
      throw ParseError(line_no_, "unknown row kind '" + kind + "'");
    row_ids_.emplace(name, lp_.rows.size());
    lp_.rows.push_back(std::move(row));
  }

  // Pairs (name, value) after an optional leading field.
  std::vector<std::string> pair_fields(const std::string& line, bool leading_required) {
    auto t = split_ws(line);
    const bool ok = leading_required ? (t.size() == 3 || t.size() == 5)
                                     : (t.size() >= 2 && t.size() <= 5);
    if (ok) {
      // Without a required leading field an even count means the set name was omitted.
      if (!leading_required && t.size() % 2 == 0) t.insert(t.begin(), std::string());
      return t;
    }
    auto f = split_fixed(line);
    std::vector<std::string> out{f[1], f[2], f[3]};
    if (!f[4].empty() || !f[5].empty()) {
      out.push_back(f[4]);
      out.push_back(f[5]);
    }
    return out;
  }

  void columns_line(const std::string& line) {
    if (line.find("'MARKER'") != std::string::npos)
      throw UnsupportedFeature("COLUMNS", "integer MARKER");
    const auto t = pair_fields(line, true);
    if (t[0].empty()) throw ParseError(line_no_, "COLUMNS entry without a column name");
    const std::string& col = t[0];
    if (col != current_column_) {
      if (column_ids_.count(col)) throw ParseError(line_no_, "column '" + col + "' is not contiguous");
      column_ids_.emplace(col, lp_.columns.size());
      lp_.columns.push_back(RawColumn{col});
      current_column_ = col;
    }
    const Index j = column_ids_.at(col);
    for (std::size_t k = 1; k + 1 < t.size(); k += 2) {
      const std::string& row = t[k];
      const double v = number(t[k + 1]);
      if (row == lp_.objective_row) {
        lp_.columns[j].objective += v;
      } else if (auto it = row_ids_.find(row); it != row_ids_.end()) {
        if (v != 0.0) lp_.coefficients.push_back({it->second, j, v});
      } else if (!free_rows_.count(row)) {
        throw ParseError(line_no_, "unknown row '" + row + "'");
      }
    }
  }

  void rhs_line(const std::string& line, bool ranges) {
    const auto t = pair_fields(line, false);
    for (std::size_t k = 1; k + 1 < t.size(); k += 2) {
      const std::string& row = t[k];
      const double v = number(t[k + 1]);
      if (row == lp_.objective_row) {
        if (ranges) throw ParseError(line_no_, "range on the objective row");
        lp_.objective_constant = -v;
      } else if (auto it = row_ids_.find(row); it != row_ids_.end()) {
        if (ranges)
          lp_.rows[it->second].range = v;
        else
          lp_.rows[it->second].rhs = v;
      } else if (!free_rows_.count(row)) {
        throw ParseError(line_no_, "unknown row '" + row + "'");
      }
    }
  }

  void bounds_line(const std::string& line) {
    auto t = split_ws(line);
    if (t.empty()) return;
    const std::string kind = t[0];
    const bool takes_value = !(kind == "FR" || kind == "MI" || kind == "PL" || kind == "BV");
    const std::size_t with_set = takes_value ? 4 : 3;
    if (t.size() == with_set - 1) {
      t.insert(t.begin() + 1, std::string());
    } else if (t.size() != with_set) {
      const auto f = split_fixed(line);
      t = {f[0], f[1], f[2], f[3]};
    }
    static const char* const kUnsupported[] = {"FR", "MI", "BV", "LI", "UI", "SC"};
    for (const char* u : kUnsupported)
      if (kind == u) throw UnsupportedFeature("BOUNDS", kind + " bound");

    const auto it = column_ids_.find(t[2]);
    if (it == column_ids_.end()) throw ParseError(line_no_, "unknown column '" + t[2] + "'");
    RawColumn& col = lp_.columns[it->second];
    if (kind == "PL") {
      col.upper = std::numeric_limits<double>::infinity();
      return;
    }
    const double v = number(t.size() > 3 ? t[3] : "");
    if (kind == "UP") {
      if (v < 0.0 && col.lower == 0.0) throw UnsupportedFeature("BOUNDS", "negative UP bound");
      col.upper = v;
    } else if (kind == "LO") {
      col.lower = v;
    } else if (kind == "FX") {
      col.lower = v;
      col.upper = v;
    } else {
      throw ParseError(line_no_, "unknown bound kind '" + kind + "'");
    }
  }

  RawLP lp_;
  Section section_ = Section::None;
  std::size_t line_no_ = 0;
  std::string current_column_;
  std::unordered_map<std::string, Index> row_ids_;
  std::unordered_map<std::string, Index> column_ids_;
  std::unordered_map<std::string, bool> free_rows_;
};

}  // namespace

RawLP parse_mps(std::istream& in) { return Parser().run(in); }

RawLP parse_mps(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_mps(in);
}

RawLP read_mps_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return parse_mps(in);
}

}  // namespace pivotree
