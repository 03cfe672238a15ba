#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pfam/bivariate_series.hpp"
#include "pfam/interpolation.hpp"
#include "pfam/iwasawa.hpp"
#include "pfam/pseudo_rep.hpp"

namespace pf::io {

/// Element grammar (no internal whitespace):
///
///   element := [ scale '*' ] body [ ' prec=' N ]
///   scale   := 'p^' INT | 'pi^' INT
///   body    := INT [ '/' INT ] | '(' term { ('+'|'-') term } ')'
///   term    := INT [ '*pi' [ '^' INT ] ] | 'pi' [ '^' INT ]
///
/// A negative scale exponent is only accepted where a K-element is expected.
OkElement parse_element(RingParams ring, std::string_view text);
KElement parse_k_element(RingParams ring, std::string_view text);

/// Canonical spelling: a residue for e = 1, otherwise the component sum
/// (c0+c1*pi+...); " prec=N" is appended when below the ring precision.
std::string format_element(const OkElement& x);
std::string format_k_element(const KElement& x);

/// Splits a line into whitespace-separated element tokens, folding a
/// trailing "prec=N" into the preceding token.
std::vector<std::string> element_tokens(std::string_view line);

// Series files.
//
//   header: p e N dU [dS] k0 e0 [prec=M] [den=D] [poly] [var=S]
//   body:   i [j] <element>      (numerators; absent monomials are zero)

struct SeriesFile {
  std::variant<FormalSeries, BivariateSeries> series;
  SeriesChart chart;
};

SeriesFile read_series(std::istream& in, std::string_view source = "<input>");
SeriesFile read_series_file(const std::filesystem::path& path);
void write_series(std::ostream& out, const FormalSeries& f);
void write_series(std::ostream& out, const BivariateSeries& f, const SeriesChart& chart);

// Module files.
//
//   header: vars free_rank
//   body:   m <series-path>      (paths relative to the module file)

struct ModuleFile {
  ModulePresentation module;
  SeriesChart chart;
};

/// `fallback` supplies ring and truncations when there are no torsion pieces.
ModuleFile read_module_file(const std::filesystem::path& path,
                            std::optional<ModulePresentation> fallback = std::nullopt);

// Matrix-representation files.
//
//   header: p e N t
//   body:   a b c d              (one line per generator g1..gt)
//           c a b c d            (optional; must be conjugate to diag(-1, 1))

MatrixRep2<OkElement> read_matrix_rep(std::istream& in, std::string_view source = "<input>");
MatrixRep2<OkElement> read_matrix_rep_file(const std::filesystem::path& path);
void write_matrix_rep(std::ostream& out, const MatrixRep2<OkElement>& rho);

// Interpolation node files.
//
//   header: p e N
//   body:   u value

std::vector<InterpolationNode> read_nodes_file(const std::filesystem::path& path);

/// Opens a file for reading; ParseError when it cannot be opened.
std::string slurp(const std::filesystem::path& path);

}  // namespace pf::io
