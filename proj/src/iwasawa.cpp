#include "pfam/iwasawa.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace pf {

namespace {

const FormalSeries& one_var(const TorsionPiece& piece) {
  const auto* g = std::get_if<FormalSeries>(&piece.g);
  if (g == nullptr) throw Error(ErrorCode::InvalidArgument, "expected a 1-variable torsion piece");
  return *g;
}

const BivariateSeries& two_var(const TorsionPiece& piece) {
  const auto* g = std::get_if<BivariateSeries>(&piece.g);
  if (g == nullptr) throw Error(ErrorCode::InvalidArgument, "expected a 2-variable torsion piece");
  return *g;
}

void require_vars(const ModulePresentation& m, int vars) {
  if (m.vars != vars) {
    throw Error(ErrorCode::InvalidArgument,
                "operation needs a " + std::to_string(vars) + "-variable module");
  }
}

void require_torsion(const ModulePresentation& m) {
  if (m.free_rank > 0) {
    throw Error(ErrorCode::NotTorsion,
                "module has free rank " + std::to_string(m.free_rank) + "; invariants are infinite");
  }
}

}  // namespace

void ModulePresentation::validate() const {
  if (vars != 1 && vars != 2) throw Error(ErrorCode::InvalidArgument, "vars must be 1 or 2");
  if (free_rank < 0) throw Error(ErrorCode::InvalidArgument, "negative free rank");
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    const auto& piece = torsion[i];
    const std::string where = "torsion piece " + std::to_string(i);
    if (piece.multiplicity < 1) throw Error(ErrorCode::InvalidArgument, where + ": multiplicity < 1");
    if (vars == 1) {
      const auto& g = one_var(piece);
      if (g.ring() != ring || g.truncation() != truncation_u) {
        throw Error(ErrorCode::MismatchedParams, where + " does not match the module ring");
      }
      if (!g.is_integral()) throw Error(ErrorCode::NotIntegral, where + " is not integral");
      if (g.is_zero()) throw Error(ErrorCode::ZeroAtPrecision, where + " vanishes at precision");
    } else {
      const auto& g = two_var(piece);
      if (g.ring() != ring || g.truncation_u() != truncation_u || g.truncation_s() != truncation_s) {
        throw Error(ErrorCode::MismatchedParams, where + " does not match the module ring");
      }
      if (g.is_zero()) throw Error(ErrorCode::ZeroAtPrecision, where + " vanishes at precision");
    }
  }
}

ModulePresentation ModulePresentation::one_variable(RingParams ring, int truncation, int free_rank,
                                                    std::vector<std::pair<FormalSeries, int>> pieces) {
  ModulePresentation m;
  m.ring = ring;
  m.vars = 1;
  m.free_rank = free_rank;
  m.truncation_u = truncation;
  for (auto& [g, mult] : pieces) m.torsion.push_back({std::move(g), mult});
  m.validate();
  return m;
}

ModulePresentation ModulePresentation::two_variable(
    RingParams ring, int trunc_u, int trunc_s, int free_rank,
    std::vector<std::pair<BivariateSeries, int>> pieces) {
  ModulePresentation m;
  m.ring = ring;
  m.vars = 2;
  m.free_rank = free_rank;
  m.truncation_u = trunc_u;
  m.truncation_s = trunc_s;
  for (auto& [g, mult] : pieces) m.torsion.push_back({std::move(g), mult});
  m.validate();
  return m;
}

ModulePresentation direct_sum(const ModulePresentation& a, const ModulePresentation& b) {
  if (a.ring != b.ring || a.vars != b.vars || a.truncation_u != b.truncation_u ||
      (a.vars == 2 && a.truncation_s != b.truncation_s)) {
    throw Error(ErrorCode::MismatchedParams, "direct sum of modules over different rings");
  }
  ModulePresentation out = a;
  out.free_rank += b.free_rank;
  out.torsion.insert(out.torsion.end(), b.torsion.begin(), b.torsion.end());
  return out;
}

FormalSeries char_ideal(const ModulePresentation& m) {
  require_vars(m, 1);
  FormalSeries acc = FormalSeries::constant(OkElement::one(m.ring), m.truncation_u);
  acc.set_polynomial(true);
  if (m.torsion.empty()) return acc;
  for (const auto& piece : m.torsion) {
    const auto& g = one_var(piece);
    for (int i = 0; i < piece.multiplicity; ++i) acc *= g;
  }
  const WeierstrassFactorization w = weierstrass_prep(acc);
  FormalSeries out = pow_p_rational(m.ring, w.mu) * w.distinguished;
  out.set_polynomial(true);
  return out;
}

BivariateSeries char_ideal_bivariate(const ModulePresentation& m) {
  require_vars(m, 2);
  BivariateSeries acc(m.ring, m.truncation_u, m.truncation_s);
  FormalSeries one = FormalSeries::constant(OkElement::one(m.ring), m.truncation_u);
  one.set_polynomial(true);
  acc.set_row(0, one);
  acc.set_polynomial_in_s(true);
  for (const auto& piece : m.torsion) {
    for (int i = 0; i < piece.multiplicity; ++i) acc = acc * two_var(piece);
  }
  return acc;
}

Rational mu_of_module(const ModulePresentation& m) {
  require_vars(m, 1);
  require_torsion(m);
  Rational mu(0);
  for (const auto& piece : m.torsion) mu += mu_invariant(one_var(piece)) * piece.multiplicity;
  return mu;
}

int lambda_of_module(const ModulePresentation& m) {
  require_vars(m, 1);
  require_torsion(m);
  int lambda = 0;
  for (const auto& piece : m.torsion) lambda += lambda_invariant(one_var(piece)) * piece.multiplicity;
  return lambda;
}

Specialization specialize_at(const ModulePresentation& m, const OkElement& u_k) {
  require_vars(m, 1);
  if (u_k.valuation_digits() == 0) {
    throw Error(ErrorCode::OutsideDomain, "specialisation point must have positive valuation");
  }
  Specialization out;
  out.rank = m.free_rank;
  for (std::size_t i = 0; i < m.torsion.size(); ++i) {
    const auto& piece = m.torsion[i];
    const FormalSeries& g = one_var(piece);
    const OkElement value = g.evaluate(u_k).value;
    if (!value.is_zero()) {
      FinitePart part;
      part.piece = i;
      part.order = value.pow(static_cast<std::uint64_t>(piece.multiplicity));
      part.length_digits = value.valuation_digits() * piece.multiplicity;
      out.finite_parts.push_back(std::move(part));
      continue;
    }
    const WeierstrassFactorization w = weierstrass_prep(g);
    // Roots of P are only pinned down to the tail bound of g, so compare there.
    const OkElement p_at = w.distinguished.evaluate(u_k).value.with_precision(value.precision());
    if (!p_at.is_zero()) {
      throw Error(ErrorCode::PrecisionAmbiguous,
                  "piece " + std::to_string(i) + " vanishes modulo pi^" +
                      std::to_string(value.precision()) +
                      " at u_k but its distinguished factor does not");
    }
    out.vanishing.push_back(i);
    ++out.rank;
  }
  return out;
}

ModulePresentation specialize_bivariate(const ModulePresentation& m, const OkElement& u_k) {
  require_vars(m, 2);
  if (u_k.valuation_digits() == 0) {
    throw Error(ErrorCode::OutsideDomain, "specialisation point must have positive valuation");
  }
  ModulePresentation out;
  out.ring = m.ring;
  out.vars = 1;
  out.free_rank = m.free_rank;
  out.truncation_u = m.truncation_s;
  for (const auto& piece : m.torsion) {
    out.torsion.push_back({two_var(piece).substitute_u(u_k), piece.multiplicity});
  }
  return out;
}

SweepReport lambda_constancy_sweep(const ModulePresentation& m, const ClassicalPointSet& points,
                                   const SeriesChart& chart) {
  require_vars(m, 1);
  if (points.points.empty()) throw Error(ErrorCode::EmptyWindow, "no classical points to sweep");
  SweepReport report;
  for (const auto& piece : m.torsion) {
    report.exception_bound += lambda_invariant(one_var(piece)) * piece.multiplicity;
  }
  const FormalSeries distinguished = weierstrass_prep(char_ideal(m)).distinguished;

  std::map<int, int> tally;
  for (std::int64_t k : points.points) {
    SweepPoint sp;
    sp.k = k;
    sp.u = weight_coordinate(m.ring, k, chart);
    const Specialization s = specialize_at(m, sp.u);
    sp.lambda = s.rank;
    sp.vanishing = s.vanishing;
    ++tally[sp.lambda];
    report.points.push_back(std::move(sp));
  }
  // Most frequent value; ties go to the smaller lambda.
  int best_count = -1;
  for (const auto& [lambda, count] : tally) {
    if (count > best_count) {
      best_count = count;
      report.generic_lambda = lambda;
    }
  }
  for (const auto& sp : report.points) {
    if (sp.lambda == report.generic_lambda) continue;
    report.exceptional.push_back(sp.k);
    // Truncated pieces fix the roots only up to their tail bound at u_k.
    int prec = m.ring.precision();
    for (const auto& piece : m.torsion) prec = std::min(prec, one_var(piece).evaluate(sp.u).value.precision());
    report.certificates.push_back({sp.k, distinguished, distinguished.evaluate(sp.u).value.with_precision(prec)});
  }
  report.bound_respected = static_cast<int>(report.exceptional.size()) <= report.exception_bound;
  return report;
}

bool mu_zero_criterion(const ModulePresentation& m) {
  require_vars(m, 2);
  require_torsion(m);
  return std::all_of(m.torsion.begin(), m.torsion.end(), [](const TorsionPiece& piece) {
    return two_var(piece).s_weierstrass_degree() >= 0;
  });
}

Rational mu_of_specialization(const ModulePresentation& m, const OkElement& u_k) {
  const ModulePresentation s = specialize_bivariate(m, u_k);
  require_torsion(s);
  Rational mu(0);
  for (const auto& piece : s.torsion) mu += mu_invariant(one_var(piece)) * piece.multiplicity;
  return mu;
}

}  // namespace pf
