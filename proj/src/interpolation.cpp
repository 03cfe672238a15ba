#include "pfam/interpolation.hpp"

#include <algorithm>
#include <string>

namespace pf {

Interpolant newton_interpolate(std::span<const InterpolationNode> nodes, int truncation) {
  if (nodes.empty()) throw Error(ErrorCode::InvalidArgument, "no interpolation nodes");
  const std::size_t n = nodes.size();
  if (static_cast<int>(n) > truncation) {
    throw Error(ErrorCode::InsufficientTruncation,
                std::to_string(n) + " nodes need truncation >= " + std::to_string(n));
  }
  const RingParams ring = nodes.front().u.ring();
  for (std::size_t i = 0; i < n; ++i) {
    if (nodes[i].u.valuation_digits() == 0) {
      throw Error(ErrorCode::OutsideDomain, "node " + std::to_string(i) + " is a unit");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if ((nodes[i].u - nodes[j].u).is_zero()) {
        throw Error(ErrorCode::CoincidentNodes,
                    "nodes " + std::to_string(j) + " and " + std::to_string(i) +
                        " agree at precision");
      }
    }
  }

  std::vector<KElement> table;
  table.reserve(n);
  for (const auto& node : nodes) table.push_back(node.value);

  Interpolant out;
  out.level_precision.push_back(table[0].absolute_precision());
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      const KElement step = KElement(nodes[i].u - nodes[i - level].u);
      table[i] = (table[i] - table[i - 1]) / step;
      if (table[i].numerator().precision() <= 0) {
        throw Error(ErrorCode::PrecisionExhausted,
                    "divided difference at level " + std::to_string(level) + " lost every digit");
      }
    }
    out.level_precision.push_back(table[level].absolute_precision());
  }

  // Horner on the Newton form: P = c_{n-1}; P = P (U - u_l) + c_l.
  std::vector<KElement> coeffs{table[n - 1]};
  for (std::size_t l = n - 1; l-- > 0;) {
    const KElement u = KElement(nodes[l].u);
    std::vector<KElement> next(coeffs.size() + 1, KElement(OkElement::zero(ring)));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      next[i + 1] = next[i + 1] + coeffs[i];
      next[i] = next[i] - u * coeffs[i];
    }
    next[0] = next[0] + table[l];
    coeffs = std::move(next);
  }
  out.polynomial = FormalSeries::from_k_coefficients(ring, truncation, coeffs, true);
  out.min_precision = *std::min_element(out.level_precision.begin(), out.level_precision.end());
  return out;
}

}  // namespace pf
