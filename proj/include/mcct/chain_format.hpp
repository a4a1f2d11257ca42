#pragma once

#include <optional>
#include <string>

#include "mcct/mgf_bounds.hpp"

namespace mcct {

enum class ChainMode { discrete, continuous };

// Parsed form of the line-oriented chain file:
//
//   mcct v1
//   mode discrete|continuous
//   n <int>
//   <n rows of n decimals>            transition matrix or generator
//   weights <t>                       optional
//   <t rows of n decimals in [0,1]>
//   start                             optional
//   <one row of n decimals>
//
// '#' starts a comment; blank lines are ignored.
struct ChainDocument {
  int version = 1;
  ChainMode mode = ChainMode::discrete;
  std::size_t n = 0;
  Matrix matrix;
  std::optional<std::vector<Vec>> weights;
  std::optional<Vec> start;

  ChainModel chain() const;      // mode must be discrete
  Generator generator() const;   // mode must be continuous
  ProbabilityVector start_distribution() const;  // requires the start block
};

// Exact decimal parse with line-numbered errors; validation delegates to the
// module invariants (row sums, generator sign pattern, ...).
ChainDocument parse_chain_document(const std::string& text);

// 17 significant digits, so emit-then-parse reproduces every double exactly.
std::string emit_chain_document(const ChainDocument& doc);

std::string format_g17(double x);

}  // namespace mcct
