#include "pivotree/generator.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "pivotree/errors.hpp"
#include "pivotree/rng.hpp"

namespace pivotree {

namespace {

constexpr double kEntryScale = 1000.0;
constexpr std::uint64_t kDimsStream = 0xd1;
constexpr Index kMaxDim = 800;

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

RandomInstance draw_random(Index m, Index n, std::uint64_t seed) {
  if (m == 0 || n == 0) throw InvalidModel("random instance needs m >= 1 and n >= 1");
  RandomInstance inst{m, n, seed, Eigen::MatrixXd(m, n), Eigen::VectorXd(m), Eigen::VectorXd(n)};
  CounterRng rng(seed);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j)
      inst.A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = kEntryScale * rng.uniform01();
  for (Index i = 0; i < m; ++i) inst.b[static_cast<Eigen::Index>(i)] = kEntryScale * rng.uniform01();
  for (Index j = 0; j < n; ++j) inst.c[static_cast<Eigen::Index>(j)] = kEntryScale * rng.uniform01();
  return inst;
}

StandardFormLP to_standard_form(const RandomInstance& inst) {
  const auto m = static_cast<Eigen::Index>(inst.m);
  const auto n = static_cast<Eigen::Index>(inst.n);
  StandardFormLP lp;
  lp.A.resize(m, n + m);
  lp.A.leftCols(n) = inst.A;
  lp.A.rightCols(m).setIdentity();
  lp.b = inst.b;
  lp.c = Eigen::VectorXd::Zero(n + m);
  lp.c.head(n) = -inst.c;
  for (Index j = 0; j < inst.n; ++j) lp.var_names.push_back("x" + std::to_string(j));
  for (Index i = 0; i < inst.m; ++i) lp.var_names.push_back("s" + std::to_string(i));
  for (Index i = 0; i < inst.m; ++i) lp.row_names.push_back("r" + std::to_string(i));
  return lp;
}

StandardFormLP gen_random(Index m, Index n, std::uint64_t seed) {
  return to_standard_form(draw_random(m, n, seed));
}

std::pair<Index, Index> gen_random_dims(std::uint64_t seed) {
  CounterRng rng = CounterRng(seed).split(kDimsStream);
  const Index m = 1 + static_cast<Index>(rng.below(kMaxDim - 1));
  const Index n = 1 + static_cast<Index>(rng.below(kMaxDim - 1));
  return {m, n};
}

std::vector<Index> identity_basis(const RandomInstance& inst) {
  std::vector<Index> basis(inst.m);
  for (Index i = 0; i < inst.m; ++i) basis[i] = inst.n + i;
  return basis;
}

void write_instance(std::ostream& out, const RandomInstance& inst) {
  out << "pivotree-instance 1\n" << inst.m << ' ' << inst.n << ' ' << inst.seed << '\n';
  const auto row = [&](const auto& values) {
    for (Eigen::Index k = 0; k < values.size(); ++k) out << (k ? " " : "") << fmt17(values[k]);
    out << '\n';
  };
  for (Eigen::Index i = 0; i < inst.A.rows(); ++i) row(Eigen::VectorXd(inst.A.row(i).transpose()));
  row(inst.b);
  row(inst.c);
}

RandomInstance read_instance(std::istream& in) {
  std::size_t line_no = 0;
  std::string line;
  const auto next_line = [&]() -> std::istringstream {
    if (!std::getline(in, line)) throw ParseError(line_no + 1, "unexpected end of instance");
    ++line_no;
    return std::istringstream(line);
  };

  next_line();
  if (line != "pivotree-instance 1") throw ParseError(line_no, "missing instance header");
  RandomInstance inst;
  {
    auto dims = next_line();
    if (!(dims >> inst.m >> inst.n >> inst.seed) || inst.m == 0 || inst.n == 0)
      throw ParseError(line_no, "bad dimension line");
  }
  const auto read_row = [&](Index count, auto&& store) {
    auto fields = next_line();
    for (Index k = 0; k < count; ++k) {
      double v;
      if (!(fields >> v)) throw ParseError(line_no, "expected " + std::to_string(count) + " numbers");
      store(k, v);
    }
    std::string extra;
    if (fields >> extra) throw ParseError(line_no, "trailing data");
  };
  const auto m = static_cast<Eigen::Index>(inst.m);
  const auto n = static_cast<Eigen::Index>(inst.n);
  inst.A.resize(m, n);
  inst.b.resize(m);
  inst.c.resize(n);
  for (Eigen::Index i = 0; i < m; ++i)
    read_row(inst.n, [&](Index j, double v) { inst.A(i, static_cast<Eigen::Index>(j)) = v; });
  read_row(inst.m, [&](Index i, double v) { inst.b[static_cast<Eigen::Index>(i)] = v; });
  read_row(inst.n, [&](Index j, double v) { inst.c[static_cast<Eigen::Index>(j)] = v; });
  return inst;
}

}  // namespace pivotree
