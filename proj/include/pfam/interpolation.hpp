#pragma once

#include <span>
#include <vector>

#include "pfam/formal_series.hpp"

namespace pf {

struct InterpolationNode {
  OkElement u;
  KElement value;
};

struct Interpolant {
  /// Polynomial of degree < #nodes; carries a pi-power denominator when the
  /// data forces one.
  FormalSeries polynomial;
  /// Absolute precision of the leading divided difference at each level.
  std::vector<int> level_precision;
  /// Smallest absolute precision among the Newton coefficients.
  int min_precision = 0;
};

/// Newton divided-difference interpolation through (u_i, v_i).
///
/// Nodes must lie in the open unit disk (val > 0) and be pairwise distinct at
/// precision. Each level divides by u_i - u_j and so loses val(u_i - u_j)
/// digits; the loss is reported, and a level that loses every digit throws
/// PrecisionExhausted.
Interpolant newton_interpolate(std::span<const InterpolationNode> nodes,
                               int truncation = kDefaultTruncation);

}  // namespace pf
