#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pfam/interpolation.hpp"
#include "pfam/weight_space.hpp"

namespace pf {

/// Fourier coefficients of a normalised classical eigenform, as data.
struct QExpansion {
  std::string label;
  std::int64_t level = 1;
  std::int64_t weight = 2;
  std::uint32_t p = 3;
  std::string neben = "trivial";
  std::map<std::int64_t, Rational> coeffs;
  /// Declared facts carried through verbatim ("fact <text>" lines).
  std::vector<std::string> facts;

  /// MissingCoefficient when a_n is absent.
  const Rational& coefficient(std::int64_t n) const;
  bool has(std::int64_t n) const { return coeffs.count(n) != 0; }
  /// ParseError / NotNormalized / LevelNotCoprime / InvalidArgument.
  void validate() const;
};

/// File format: header `label N k p neben`, then `n a_n` lines (a_n an
/// integer or a fraction), optional `fact <text>` lines, '#' comments.
QExpansion parse_qexp(std::istream& in, std::string_view source = "<input>");
QExpansion ingest_qexp(const std::filesystem::path& path);
void write_qexp(std::ostream& out, const QExpansion& f);

/// val_p(a_p) > 0.
bool check_supersingular(const QExpansion& f, std::uint32_t p);

struct WindowVerdict {
  bool holds = false;
  std::string reason;
};
/// a_p = 0 mod p and 2 <= k < p + 1.
WindowVerdict check_edixhoven_window(const QExpansion& f, std::uint32_t p);

/// Seed-form condition a_p^2 != eps(p) p^(k-1), only decidable for a
/// trivial character tag; nullopt otherwise.
std::optional<bool> check_seed_condition(const QExpansion& f, std::uint32_t p);

struct FamilySamples {
  RingParams ring;
  SeriesChart chart;
  std::vector<std::pair<std::int64_t, QExpansion>> samples;

  /// Every weight has u_k of positive valuation, every form has the ring's p
  /// and weights are distinct.
  void validate() const;
};

/// Manifest: first line `p e N k0 e0`, then `k path` lines (paths relative
/// to the manifest).
FamilySamples load_family_manifest(const std::filesystem::path& path);

struct FamilyInterpolation {
  std::int64_t n = 0;
  Interpolant interpolant;
  IntegralityReport integrality;
  /// Weights whose removal leaves an integral interpolant; filled only when
  /// the full interpolant is not power-bounded.
  std::vector<std::int64_t> suspects;
  /// Residuals interpolant(u_k) - a_n(k) all vanish at surviving precision.
  bool reproduces_samples = true;
};

FamilyInterpolation interpolate_family(const FamilySamples& samples, std::int64_t n,
                                       int truncation = kDefaultTruncation);

}  // namespace pf
