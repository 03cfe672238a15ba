#include "pfam/pseudo_rep.hpp"

#include <string>

namespace pf {

WordSample exhaustive_sample(int generators, int max_total_length) {
  WordSample sample;
  sample.words = enumerate_words(generators, max_total_length);
  const auto& w = sample.words;
  const auto n = static_cast<std::uint32_t>(w.size());
  const auto len = [&](std::uint32_t i) { return static_cast<int>(w[i].length()); };
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n && len(i) + len(j) <= max_total_length; ++j) {
      sample.pairs.push_back({i, j});
      for (std::uint32_t k = 0; k < n && len(i) + len(j) + len(k) <= max_total_length; ++k) {
        for (std::uint32_t l = 0; l < n && len(i) + len(j) + len(k) + len(l) <= max_total_length; ++l) {
          sample.quads.push_back({i, j, k, l});
        }
      }
    }
  }
  return sample;
}

IncompatibleGlue::IncompatibleGlue(int obstruction_digits, int required_digits)
    : Error(ErrorCode::Incompatible,
            "val(y - x) = " + std::to_string(obstruction_digits) + " < val(u2 - u1) = " +
                std::to_string(required_digits) + " (pi-digits)"),
      obstruction_(obstruction_digits),
      required_(required_digits) {}

FormalSeries glue_crt(const OkElement& x, const OkElement& y, const OkElement& u1,
                      const OkElement& u2, int truncation) {
  const RingParams ring = x.ring();
  if (y.ring() != ring || u1.ring() != ring || u2.ring() != ring) {
    throw Error(ErrorCode::MismatchedParams, "glue_crt operands live in different rings");
  }
  if (u1.valuation_digits() == 0 || u2.valuation_digits() == 0) {
    throw Error(ErrorCode::OutsideDomain, "evaluation points must have positive valuation");
  }
  const OkElement gap = u2 - u1;
  if (gap.is_zero()) throw Error(ErrorCode::CoincidentNodes, "u1 and u2 agree at precision");
  const OkElement diff = y - x;
  const int need = gap.valuation_digits();
  if (diff.is_zero()) {
    return FormalSeries::constant(x.with_precision(std::min(x.precision(), y.precision())), truncation);
  }
  const int have = diff.valuation_digits();
  if (have < need) throw IncompatibleGlue(have, need);
  const OkElement slope = diff.shift_down(need) * gap.shift_down(need).inverse();
  const std::vector<OkElement> coeffs{x - slope * u1, slope};
  return FormalSeries::from_coefficients(ring, truncation, coeffs, true);
}

}  // namespace pf
