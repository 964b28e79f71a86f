#include <gtest/gtest.h>

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "pivotree/errors.hpp"
#include "pivotree/generator.hpp"
#include "pivotree/mcts.hpp"
#include "pivotree/mps.hpp"
#include "pivotree/pivot_rules.hpp"
#include "pivotree/standard_form.hpp"
#include "test_support.hpp"

using namespace pivotree;
using pivotree::testing::netlib_names;
using pivotree::testing::netlib_path;

namespace {

// Row and column counts read straight from the ROWS / COLUMNS sections.
std::pair<int, int> count_sections(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  std::string section;
  int rows = 0;
  std::set<std::string> columns;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '*') continue;
    if (!std::isspace(static_cast<unsigned char>(line[0]))) {
      section = line.substr(0, line.find_first_of(" \t\r"));
      continue;
    }
    std::istringstream tok(line);
    std::string first;
    tok >> first;
    if (section == "ROWS" && first != "N") ++rows;
    if (section == "COLUMNS") columns.insert(first);
  }
  return {rows, static_cast<int>(columns.size())};
}

// Checks a point against the model as read: row activities, ranges and bounds.
void expect_feasible(const RawLP& raw, const Eigen::VectorXd& x, double tol) {
  std::vector<double> activity(raw.rows.size(), 0.0);
  for (const Coefficient& a : raw.coefficients) activity[a.row] += a.value * x[static_cast<Eigen::Index>(a.column)];
  for (Index i = 0; i < raw.rows.size(); ++i) {
    const RawRow& r = raw.rows[i];
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    switch (r.kind) {
      case RowKind::LessEqual: hi = r.rhs; break;
      case RowKind::GreaterEqual: lo = r.rhs; break;
      case RowKind::Equal: lo = hi = r.rhs; break;
    }
    if (r.range) {
      if (r.kind == RowKind::LessEqual) lo = r.rhs - std::abs(*r.range);
      if (r.kind == RowKind::GreaterEqual) hi = r.rhs + std::abs(*r.range);
      if (r.kind == RowKind::Equal) (*r.range >= 0 ? hi : lo) = r.rhs + *r.range;
    }
    const double scale = tol * (1.0 + std::abs(r.rhs));
    EXPECT_GE(activity[i], lo - scale) << r.name;
    EXPECT_LE(activity[i], hi + scale) << r.name;
  }
  for (Index j = 0; j < raw.columns.size(); ++j) {
    EXPECT_GE(x[static_cast<Eigen::Index>(j)], raw.columns[j].lower - tol) << raw.columns[j].name;
    EXPECT_LE(x[static_cast<Eigen::Index>(j)], raw.columns[j].upper + tol) << raw.columns[j].name;
  }
}

double raw_objective(const RawLP& raw, const Eigen::VectorXd& x) {
  double v = raw.objective_constant;
  for (Index j = 0; j < raw.columns.size(); ++j) v += raw.columns[j].objective * x[static_cast<Eigen::Index>(j)];
  return v;
}

struct Solved {
  ConvertedLP conv;
  SimplexRun run;
};

Solved solve(const RawLP& raw) {
  Solved s{to_standard_form(raw), {}};
  s.run = run_simplex(s.conv.lp, phase_one(s.conv.lp).state, RuleKind::Dantzig, 100000);
  return s;
}

// Two-variable model with every RANGES flavour and an upper bound.
constexpr const char* kRangedModel = R"(NAME          RANGED
ROWS
 N  COST
 L  R1
 G  R2
 E  R3
COLUMNS
    X         COST      -1.0       R1        1.0
    X         R2        1.0        R3        1.0
    Y         COST      -2.0       R1        1.0
    Y         R2        -1.0       R3        3.0
RHS
    RHS       R1        4.0        R2        -1.0
    RHS       R3        2.0
RANGES
    RNG       R1        3.0        R2        2.0
    RNG       R3        6.0
BOUNDS
 UP BND       X         3.0
ENDATA
)";

// Vertex enumeration for the model above: intersect every pair of boundary lines
// a x + b y = c and keep the best feasible point.
double ranged_model_optimum() {
  struct Line {
    double a, b, c;
  };
  // 1 <= x + y <= 4, -1 <= x - y <= 1, 2 <= x + 3y <= 8, 0 <= x <= 3, y >= 0
  const std::vector<Line> lines = {{1, 1, 1},  {1, 1, 4}, {1, -1, -1}, {1, -1, 1}, {1, 3, 2},
                                   {1, 3, 8},  {1, 0, 0}, {1, 0, 3},   {0, 1, 0}};
  const auto feasible = [](double x, double y) {
    const double e = 1e-9;
    return x + y >= 1 - e && x + y <= 4 + e && x - y >= -1 - e && x - y <= 1 + e && x + 3 * y >= 2 - e &&
           x + 3 * y <= 8 + e && x >= -e && x <= 3 + e && y >= -e;
  };
  double best = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < lines.size(); ++i) {
    for (Index k = i + 1; k < lines.size(); ++k) {
      const Line& p = lines[i];
      const Line& q = lines[k];
      const double det = p.a * q.b - p.b * q.a;
      if (std::abs(det) < 1e-12) continue;
      const double x = (p.c * q.b - p.b * q.c) / det;
      const double y = (p.a * q.c - p.c * q.a) / det;
      if (feasible(x, y)) best = std::min(best, -x - 2 * y);
    }
  }
  return best;
}

}  // namespace

TEST(GenRandom, ShapeAndIdentityBlock) {
  const StandardFormLP lp = gen_random(2, 2, 99);
  ASSERT_EQ(lp.A.rows(), 2);
  ASSERT_EQ(lp.A.cols(), 4);
  EXPECT_EQ(lp.A.block(0, 2, 2, 2), Eigen::MatrixXd::Identity(2, 2));
  EXPECT_EQ(lp.c[2], 0.0);
  EXPECT_EQ(lp.c[3], 0.0);
}

TEST(GenRandom, EntriesInRangeAndSlackBasisFeasible) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const RandomInstance inst = draw_random(5, 7, seed);
    EXPECT_GE(inst.A.minCoeff(), 0.0);
    EXPECT_LT(inst.A.maxCoeff(), 1000.0);
    EXPECT_GE(inst.b.minCoeff(), 0.0);
    EXPECT_LT(inst.b.maxCoeff(), 1000.0);
    EXPECT_GE(inst.c.minCoeff(), 0.0);
    EXPECT_LT(inst.c.maxCoeff(), 1000.0);
    EXPECT_EQ(phase_one(to_standard_form(inst)).pivots, 0u);
  }
}

TEST(GenRandom, SameSeedBitIdentical) {
  const StandardFormLP a = gen_random(6, 9, 1234);
  const StandardFormLP b = gen_random(6, 9, 1234);
  EXPECT_EQ(a.A, b.A);
  EXPECT_EQ(a.b, b.b);
  EXPECT_EQ(a.c, b.c);
  const StandardFormLP c = gen_random(6, 9, 1235);
  EXPECT_NE(a.A, c.A);
}

TEST(GenRandom, CounterRngStreamIsSplitMix64) {
  // Reference values of SplitMix64 seeded with 1234567.
  CounterRng rng(1234567);
  EXPECT_EQ(rng(), 6457827717110365317ULL);
  EXPECT_EQ(rng(), 3203168211198807973ULL);
}

TEST(GenRandom, ZeroDimensionRejected) {
  EXPECT_THROW(draw_random(0, 3, 1), InvalidModel);
  EXPECT_THROW(draw_random(3, 0, 1), InvalidModel);
}

TEST(GenRandomDims, DeterministicAndInRange) {
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const auto [m, n] = gen_random_dims(seed);
    EXPECT_GE(m, 1u);
    EXPECT_LT(m, 800u);
    EXPECT_GE(n, 1u);
    EXPECT_LT(n, 800u);
    EXPECT_EQ(gen_random_dims(seed), std::make_pair(m, n));
  }
}

TEST(InstanceCache, RoundTrip) {
  const RandomInstance inst = draw_random(4, 6, 77);
  std::stringstream buf;
  write_instance(buf, inst);
  const RandomInstance back = read_instance(buf);
  EXPECT_EQ(back.m, 4u);
  EXPECT_EQ(back.n, 6u);
  EXPECT_EQ(back.seed, 77u);
  EXPECT_EQ(back.A, inst.A);
  EXPECT_EQ(back.b, inst.b);
  EXPECT_EQ(back.c, inst.c);
}

TEST(InstanceCache, MalformedInput) {
  std::stringstream wrong_header("not-an-instance\n");
  EXPECT_THROW(read_instance(wrong_header), ParseError);
  const RandomInstance inst = draw_random(2, 2, 1);
  std::stringstream full;
  write_instance(full, inst);
  std::string text = full.str();
  std::stringstream truncated(text.substr(0, text.size() / 2));
  EXPECT_THROW(read_instance(truncated), ParseError);
}

TEST(ParseMps, AfiroSectionCounts) {
  const std::string path = netlib_path("AFIRO");
  const auto [rows, columns] = count_sections(path);
  const RawLP raw = read_mps_file(path);
  EXPECT_EQ(static_cast<int>(raw.rows.size()), rows);
  EXPECT_EQ(static_cast<int>(raw.columns.size()), columns);
  EXPECT_EQ(raw.rows.size(), 27u);
  EXPECT_EQ(raw.columns.size(), 32u);
}

TEST(ParseMps, CorpusSectionCounts) {
  for (const std::string& name : netlib_names()) {
    const auto [rows, columns] = count_sections(netlib_path(name));
    const RawLP raw = read_mps_file(netlib_path(name));
    EXPECT_EQ(static_cast<int>(raw.rows.size()), rows) << name;
    EXPECT_EQ(static_cast<int>(raw.columns.size()), columns) << name;
  }
}

TEST(ParseMps, MissingEndata) {
  std::string text = kRangedModel;
  text.erase(text.find("ENDATA"));
  try {
    parse_mps(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_GT(e.line(), 0u);
  }
}

TEST(ParseMps, UnknownRowReportsLine) {
  const std::string text = "NAME T\nROWS\n N COST\n L R1\nCOLUMNS\n    X COST 1 R9 1\nRHS\nENDATA\n";
  try {
    parse_mps(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 6u);
  }
}

TEST(ParseMps, UnsupportedBounds) {
  for (const char* kind : {"FR", "MI", "BV"}) {
    std::string text = kRangedModel;
    text.replace(text.find(" UP BND       X         3.0"), 27, std::string(" ") + kind + " BND       X");
    try {
      parse_mps(text);
      FAIL() << kind;
    } catch (const UnsupportedFeature& e) {
      EXPECT_EQ(e.section(), "BOUNDS");
    }
  }
}

TEST(ParseMps, IntegerMarkersRejected) {
  const std::string text =
      "NAME T\nROWS\n N COST\n L R1\nCOLUMNS\n    M1 'MARKER' 'INTORG'\n    X COST 1 R1 1\n"
      "RHS\n    RHS R1 1\nENDATA\n";
  EXPECT_THROW(parse_mps(text), UnsupportedFeature);
}

TEST(ParseMps, RangesExpandToPairedInequalities) {
  const RawLP raw = parse_mps(kRangedModel);
  ASSERT_EQ(raw.rows.size(), 3u);
  EXPECT_EQ(raw.rows[0].range, 3.0);
  EXPECT_EQ(raw.columns[0].upper, 3.0);
  const ConvertedLP conv = to_standard_form(raw);
  // Three ranged rows become six inequalities plus one upper-bound row.
  EXPECT_EQ(conv.lp.rows(), 7u);
  const Solved s = solve(raw);
  ASSERT_EQ(s.run.status, RunStatus::Optimal);
  EXPECT_NEAR(objective_value(s.conv.lp, s.run.final_state), ranged_model_optimum(), 1e-9);
}

TEST(ParseMps, ObjsenseMaximize) {
  const std::string text =
      "NAME T\nOBJSENSE\n    MAX\nROWS\n N COST\n L R1\nCOLUMNS\n    X COST 2 R1 1\nRHS\n    RHS R1 5\nENDATA\n";
  const RawLP raw = parse_mps(text);
  EXPECT_EQ(raw.sense, ObjectiveSense::Maximize);
  const Solved s = solve(raw);
  EXPECT_DOUBLE_EQ(s.conv.map.original_objective(objective_value(s.conv.lp, s.run.final_state)), 10.0);
}

TEST(ParseMps, CorpusParsesOrReportsUnsupported) {
  for (const std::string& name : netlib_names()) {
    try {
      const RawLP raw = read_mps_file(netlib_path(name));
      EXPECT_FALSE(raw.rows.empty()) << name;
    } catch (const UnsupportedFeature&) {
    }
  }
}

TEST(StandardForm, SlackAndSurplusColumns) {
  const std::string text =
      "NAME T\nROWS\n N COST\n L LE\n G GE\n E EQ\nCOLUMNS\n    X COST 1 LE 1\n    X GE 1 EQ 1\n"
      "RHS\n    RHS LE 4 GE 1\n    RHS EQ 2\nENDATA\n";
  const ConvertedLP conv = to_standard_form(parse_mps(text));
  // x, slack for LE, surplus for GE; the equality row gets none.
  ASSERT_EQ(conv.lp.cols(), 3u);
  EXPECT_EQ(conv.lp.A(0, 1), 1.0);
  EXPECT_EQ(conv.lp.A(1, 2), -1.0);
  EXPECT_EQ(conv.lp.A(2, 1), 0.0);
  EXPECT_EQ(conv.lp.A(2, 2), 0.0);
  EXPECT_EQ(conv.lp.var_names[1], "slack:LE");
  EXPECT_EQ(conv.lp.var_names[2], "surplus:GE");
}

TEST(StandardForm, NegativeRhsRowsAreNegated) {
  const ConvertedLP conv = to_standard_form(parse_mps(kRangedModel));
  EXPECT_GE(conv.lp.b.minCoeff(), 0.0);
}

TEST(StandardForm, LowerBoundShift) {
  const std::string text =
      "NAME T\nROWS\n N COST\n L R1\nCOLUMNS\n    X COST 1 R1 1\nRHS\n    RHS R1 5\n"
      "BOUNDS\n LO BND X 2\nENDATA\n";
  const RawLP raw = parse_mps(text);
  const Solved s = solve(raw);
  const Eigen::VectorXd x = s.conv.map.original_solution(s.run.final_state.primal_solution());
  EXPECT_DOUBLE_EQ(x[0], 2.0);
  EXPECT_DOUBLE_EQ(objective_value(s.conv.lp, s.run.final_state), 2.0);
}

TEST(StandardForm, Sc50aThreePivotPathReplays) {
  const ConvertedLP conv = to_standard_form(read_mps_file(netlib_path("SC50A")));
  const SimplexState start = phase_one(conv.lp).state;
  MctsConfig cfg;
  cfg.n_explore = explorations_for(6.0, conv.lp.cols());
  const PathCollection pc = collect_paths(conv.lp, start, cfg, 5);
  ASSERT_TRUE(pc.min_length);
  ASSERT_EQ(*pc.min_length, 3u);
  const ReplayResult r = replay_path(conv.lp, start, pc.paths.front().entering);
  EXPECT_TRUE(r.reached_optimal);
  EXPECT_NEAR(objective_value(conv.lp, r.final_state), -64.5750770586, 1e-6);
}

TEST(StandardForm, CorpusRoundTrip) {
  for (const std::string& name : netlib_names()) {
    const RawLP raw = read_mps_file(netlib_path(name));
    const Solved s = solve(raw);
    ASSERT_EQ(s.run.status, RunStatus::Optimal) << name;
    const Eigen::VectorXd x = s.conv.map.original_solution(s.run.final_state.primal_solution());
    expect_feasible(raw, x, 1e-6);
    const double reported = s.conv.map.original_objective(objective_value(s.conv.lp, s.run.final_state));
    EXPECT_NEAR(raw_objective(raw, x), reported, 1e-6 * (1.0 + std::abs(reported))) << name;
  }
}

TEST(StandardForm, EmptyModelRejected) {
  RawLP raw;
  EXPECT_THROW(to_standard_form(raw), InvalidModel);
}
