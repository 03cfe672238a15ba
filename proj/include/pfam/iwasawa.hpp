#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "pfam/bivariate_series.hpp"
#include "pfam/weierstrass.hpp"
#include "pfam/weight_space.hpp"

namespace pf {

/// One elementary summand A / (g^m).
struct TorsionPiece {
  std::variant<FormalSeries, BivariateSeries> g;
  int multiplicity = 1;
};

/// Structure-theorem normal form: A^free_rank plus elementary torsion.
/// vars = 1 means A = O_K[[U]] (or O_K[[S]]); vars = 2 means O_K[[U, S]].
struct ModulePresentation {
  RingParams ring;
  int vars = 1;
  int free_rank = 0;
  int truncation_u = kDefaultTruncation;
  int truncation_s = kDefaultTruncation;
  std::vector<TorsionPiece> torsion;

  /// Checks that piece kinds match vars, shapes agree, multiplicities are
  /// positive and no g vanishes at precision.
  void validate() const;

  static ModulePresentation one_variable(RingParams ring, int truncation, int free_rank,
                                         std::vector<std::pair<FormalSeries, int>> pieces);
  static ModulePresentation two_variable(RingParams ring, int trunc_u, int trunc_s, int free_rank,
                                         std::vector<std::pair<BivariateSeries, int>> pieces);
};

/// Direct sum (concatenation of presentations).
ModulePresentation direct_sum(const ModulePresentation& a, const ModulePresentation& b);

/// prod g_i^{m_i}, canonicalised to p^mu * distinguished (1-variable only).
FormalSeries char_ideal(const ModulePresentation& m);
/// prod g_i^{m_i} without canonicalisation (2-variable).
BivariateSeries char_ideal_bivariate(const ModulePresentation& m);

/// sum m_i mu(g_i) and sum m_i lambda(g_i); NotTorsion when free_rank > 0.
Rational mu_of_module(const ModulePresentation& m);
int lambda_of_module(const ModulePresentation& m);

struct FinitePart {
  std::size_t piece = 0;
  /// g_i(u_k)^{m_i}: the summand is O_K / (order).
  OkElement order;
  /// Length of O_K / (order) in pi-digits.
  int length_digits = 0;
};

struct Specialization {
  int rank = 0;
  std::vector<FinitePart> finite_parts;
  /// Pieces with g_i(u_k) = 0, each contributing one free summand.
  std::vector<std::size_t> vanishing;
};

/// M / P_k M for a 1-variable module. A vanishing g_i(u_k) is accepted only
/// when the distinguished factor of g_i (a polynomial) also vanishes at u_k
/// to the same precision; otherwise the zero is an artefact of the tail bound
/// and PrecisionAmbiguous is thrown.
Specialization specialize_at(const ModulePresentation& m, const OkElement& u_k);

/// U -> u_k in every piece of a 2-variable module: a module over O_K[[S]].
ModulePresentation specialize_bivariate(const ModulePresentation& m, const OkElement& u_k);

struct SweepPoint {
  std::int64_t k = 0;
  OkElement u;
  int lambda = 0;
  std::vector<std::size_t> vanishing;
};

struct SweepCertificate {
  std::int64_t k = 0;
  /// Distinguished polynomial of char_ideal(M); it vanishes at u_k.
  FormalSeries distinguished;
  /// Its value at u_k, reduced to the tail bound of the pieces there.
  OkElement value_at_point;
};

struct SweepReport {
  std::vector<SweepPoint> points;
  int generic_lambda = 0;
  std::vector<std::int64_t> exceptional;
  std::vector<SweepCertificate> certificates;
  /// sum m_i lambda(g_i), the bound on the number of exceptions.
  int exception_bound = 0;
  bool bound_respected = true;
};

/// lambda_k = rank of M / P_k over the classical weights, with u_k taken in
/// the chart (k0, e0).
SweepReport lambda_constancy_sweep(const ModulePresentation& m, const ClassicalPointSet& points,
                                   const SeriesChart& chart);

/// True iff every piece is S-distinguished up to a unit over O_K[[U]], i.e.
/// some S-coefficient has a unit constant term. NotTorsion for free_rank > 0.
bool mu_zero_criterion(const ModulePresentation& m);

/// mu of a 1-variable torsion module specialised from 2 variables, as the
/// S-series sum m_i mu(g_i(u_k, S)).
Rational mu_of_specialization(const ModulePresentation& m, const OkElement& u_k);

}  // namespace pf
