#pragma once

// Seeded random instances and their plain-text cache format.
//
// Entries are drawn from CounterRng(seed) in a fixed order: A row by row, then b,
// then c, each as 1000 * uniform01(). The standard form appends an m x m identity
// block and maximizes c^T x, i.e. minimizes [-c 0]^T x s.t. [A I] x = b.

#include <cstdint>
#include <iosfwd>
#include <utility>

#include "pivotree/lp.hpp"

namespace pivotree {

struct RandomInstance {
  Index m = 0;
  Index n = 0;
  std::uint64_t seed = 0;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
};

/// Throws InvalidModel when m or n is zero.
RandomInstance draw_random(Index m, Index n, std::uint64_t seed);

/// The standard form described above, with columns x0..x{n-1}, s0..s{m-1}.
StandardFormLP to_standard_form(const RandomInstance& inst);

StandardFormLP gen_random(Index m, Index n, std::uint64_t seed);

/// Rows and columns, each uniform in [1, 800).
std::pair<Index, Index> gen_random_dims(std::uint64_t seed);

/// Column indices of the identity block.
std::vector<Index> identity_basis(const RandomInstance& inst);

/// Text cache: a "pivotree-instance 1" line, "m n seed", then A row by row, b and c,
/// one row per line, numbers written with 17 significant digits.
void write_instance(std::ostream& out, const RandomInstance& inst);
/// Throws ParseError on malformed input.
RandomInstance read_instance(std::istream& in);

}  // namespace pivotree
