#include <vector>

#include "doctest.h"
#include "pfam/group_ring.hpp"
#include "pfam/iwasawa.hpp"
#include "support.hpp"

using pf::BivariateSeries;
using pf::ErrorCode;
using pf::FormalSeries;
using pf::ModulePresentation;
using pf::OkElement;
using pf::Rational;
using pf::RingParams;
using pftest::Rng;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const pf::Error& e) {
    return e.code();
  }
  FAIL("expected pf::Error");
  return ErrorCode::InvalidArgument;
}

OkElement I(const RingParams& r, std::int64_t v) { return OkElement::from_int(r, v); }

// Smith-form oracle over O_K at finite precision: returns (number of zero
// pivots, sum of pivot valuations).
std::pair<int, int> smith_profile(std::vector<std::vector<OkElement>> a) {
  const std::size_t n = a.size();
  int zeros = 0, length = 0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t bi = n, bj = n;
    int best = 1 << 30;
    for (std::size_t i = step; i < n; ++i)
      for (std::size_t j = step; j < n; ++j)
        if (!a[i][j].is_zero() && a[i][j].valuation_digits() < best) {
          best = a[i][j].valuation_digits();
          bi = i;
          bj = j;
        }
    if (bi == n) {
      zeros += static_cast<int>(n - step);
      break;
    }
    std::swap(a[step], a[bi]);
    for (auto& row : a) std::swap(row[step], row[bj]);
    length += best;
    const OkElement unit_inv = a[step][step].shift_down(best).inverse();
    for (std::size_t i = step + 1; i < n; ++i) {
      const OkElement f = a[i][step].shift_down(best) * unit_inv;
      for (std::size_t j = step; j < n; ++j) a[i][j] = a[i][j] - f * a[step][j];
    }
    for (std::size_t j = step + 1; j < n; ++j) {
      const OkElement f = a[step][j].shift_down(best) * unit_inv;
      for (std::size_t i = step; i < n; ++i) a[i][j] = a[i][j] - f * a[i][step];
    }
  }
  return {zeros, length};
}

// Companion matrix of a monic polynomial minus u * Id.
std::vector<std::vector<OkElement>> companion_minus(const FormalSeries& q, int degree, const OkElement& u) {
  const RingParams r = q.ring();
  std::vector<std::vector<OkElement>> c(static_cast<std::size_t>(degree),
                                        std::vector<OkElement>(static_cast<std::size_t>(degree), OkElement::zero(r)));
  for (int i = 0; i < degree; ++i) {
    if (i + 1 < degree) c[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(i)] = OkElement::one(r);
    c[static_cast<std::size_t>(i)][static_cast<std::size_t>(degree) - 1] = -q.coefficient(i);
    c[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
        c[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] - u;
  }
  return c;
}

FormalSeries linear(const RingParams& r, int d, const OkElement& root) {
  return FormalSeries::from_coefficients(r, d, std::vector{-root, OkElement::one(r)}, true);
}

FormalSeries random_unit_series(Rng& rng, const RingParams& r, int d) {
  auto f = pftest::random_series(rng, r, d);
  f.set_coefficient(0, pftest::random_unit(rng, r));
  return f;
}

}  // namespace

TEST_CASE("characteristic ideals and invariants") {
  const auto r = RingParams::make(3, 1, 12);
  const int d = 16;
  const auto u = FormalSeries::variable(r, d);
  const auto one = FormalSeries::constant(I(r, 1), d);
  CHECK(pf::char_ideal(ModulePresentation::one_variable(r, d, 0, {})) == one);
  CHECK(pf::char_ideal(ModulePresentation::one_variable(r, d, 0, {{u, 2}})) == u * u);
  const auto p = FormalSeries::constant(I(r, 3), d);
  const auto m = ModulePresentation::one_variable(r, d, 0, {{p, 1}, {linear(r, d, I(r, 3)), 1}});
  CHECK(pf::char_ideal(m) == p * linear(r, d, I(r, 3)));
  // A unit factor is removed by the canonicalisation.
  const auto unit = FormalSeries::from_integers(r, d, {2, 1}, false);
  CHECK(pf::char_ideal(ModulePresentation::one_variable(r, d, 0, {{u * unit, 1}})) == u);

  CHECK(pf::mu_of_module(ModulePresentation::one_variable(r, d, 0, {{p, 1}})) == Rational(1));
  CHECK(pf::lambda_of_module(ModulePresentation::one_variable(r, d, 0, {{p, 1}})) == 0);
  const auto q = FormalSeries::from_integers(r, d, {3, 3, 1});
  CHECK(pf::mu_of_module(ModulePresentation::one_variable(r, d, 0, {{q, 1}})) == Rational(0));
  CHECK(pf::lambda_of_module(ModulePresentation::one_variable(r, d, 0, {{q, 1}})) == 2);
  CHECK(code_of([&] { pf::mu_of_module(ModulePresentation::one_variable(r, d, 1, {{q, 1}})); }) ==
        ErrorCode::NotTorsion);
  CHECK(code_of([&] { ModulePresentation::one_variable(r, d, 0, {{FormalSeries(r, d), 1}}); }) ==
        ErrorCode::ZeroAtPrecision);

  Rng rng(61);
  for (int rep = 0; rep < 20; ++rep) {
    auto random_module = [&] {
      std::vector<std::pair<FormalSeries, int>> pieces;
      const int n = 1 + static_cast<int>(rng.below(3));
      for (int i = 0; i < n; ++i) {
        auto g = pf::pow_p_rational(r, Rational(static_cast<int>(rng.below(2)))) *
                 linear(r, d, pftest::random_of_valuation_at_least(rng, r, 1)) * random_unit_series(rng, r, d);
        pieces.emplace_back(g, 1 + static_cast<int>(rng.below(2)));
      }
      return ModulePresentation::one_variable(r, d, 0, pieces);
    };
    const auto a = random_module();
    const auto b = random_module();
    const auto s = pf::direct_sum(a, b);
    CHECK(pf::mu_of_module(s) == pf::mu_of_module(a) + pf::mu_of_module(b));
    CHECK(pf::lambda_of_module(s) == pf::lambda_of_module(a) + pf::lambda_of_module(b));
    CHECK(pf::char_ideal(s) == pf::char_ideal(a) * pf::char_ideal(b));
    CHECK(pf::lambda_invariant(pf::char_ideal(s)) == pf::lambda_of_module(s));
  }
}

TEST_CASE("specialisation at P_k") {
  const auto r = RingParams::make(3, 1, 12);
  const int d = 16;
  const auto m = ModulePresentation::one_variable(r, d, 1, {{linear(r, d, I(r, 3)), 1}});
  auto s = pf::specialize_at(m, I(r, 6));
  CHECK(s.rank == 1);
  REQUIRE(s.finite_parts.size() == 1);
  CHECK(s.finite_parts[0].order == I(r, 3));
  CHECK(s.finite_parts[0].length_digits == 1);
  s = pf::specialize_at(m, I(r, 3));
  CHECK(s.rank == 2);
  CHECK(s.vanishing == std::vector<std::size_t>{0});
  CHECK(s.finite_parts.empty());

  const auto free3 = ModulePresentation::one_variable(r, d, 3, {});
  for (int k : {3, 6, 9, 27}) CHECK(pf::specialize_at(free3, I(r, k)).rank == 3);
  CHECK(code_of([&] { pf::specialize_at(m, I(r, 1)); }) == ErrorCode::OutsideDomain);

  // 81 (U - 3) as a truncated series: at U = 6 the value 3^5 sinks below the
  // tail bound 3^4 although U - 3 does not vanish there.
  const auto r6 = RingParams::make(3, 1, 6);
  const auto tail = ModulePresentation::one_variable(r6, 4, 0, {{FormalSeries::from_integers(r6, 4, {-243, 81}, false), 1}});
  CHECK(pf::specialize_at(tail, I(r6, 3)).rank == 1);
  CHECK(code_of([&] { pf::specialize_at(tail, I(r6, 6)); }) == ErrorCode::PrecisionAmbiguous);
  const auto exact = ModulePresentation::one_variable(r6, 4, 0, {{FormalSeries::from_integers(r6, 4, {-243, 81}), 1}});
  CHECK(pf::specialize_at(exact, I(r6, 6)).finite_parts.at(0).length_digits == 5);
}

TEST_CASE("specialisation rank agrees with the Smith-form oracle") {
  Rng rng(62);
  const auto r = RingParams::make(5, 1, 14);
  const int d = 24;
  for (int rep = 0; rep < 60; ++rep) {
    std::vector<std::pair<FormalSeries, int>> pieces;
    std::vector<OkElement> roots;
    int total = 0;
    const OkElement u = pftest::random_of_valuation_at_least(rng, r, 1 + static_cast<int>(rng.below(2)));
    while (total < 4) {
      const int deg = 1 + static_cast<int>(rng.below(2));
      const int mult = 1 + static_cast<int>(rng.below(2));
      if (total + deg * mult > 4) break;
      FormalSeries dist = FormalSeries::constant(I(r, 1), d);
      for (int i = 0; i < deg; ++i) {
        const OkElement root = rng.below(3) == 0 ? u : pftest::random_of_valuation_at_least(rng, r, 1);
        dist *= linear(r, d, root);
      }
      pieces.emplace_back(dist * random_unit_series(rng, r, d), mult);
      total += deg * mult;
    }
    const int free_rank = static_cast<int>(rng.below(2));
    const auto m = ModulePresentation::one_variable(r, d, free_rank, pieces);
    const auto s = pf::specialize_at(m, u);

    int oracle_rank = free_rank, oracle_length = 0;
    for (const auto& [g, mult] : pieces) {
      FormalSeries q = FormalSeries::constant(I(r, 1), d);
      for (int i = 0; i < mult; ++i) q *= g;
      const auto w = pf::weierstrass_prep(q);
      const auto [zeros, length] = smith_profile(companion_minus(w.distinguished, w.lambda, u));
      oracle_rank += zeros > 0 ? 1 : 0;
      CHECK(zeros <= 1);
      if (zeros == 0) oracle_length += length;
    }
    int length = 0;
    for (const auto& f : s.finite_parts) length += f.length_digits;
    CHECK(s.rank == oracle_rank);
    CHECK(length == oracle_length);
  }
}

TEST_CASE("lambda constancy sweep") {
  const auto r = RingParams::make(3, 1, 20);
  const int d = 24;
  const auto points = pf::classical_points(3, 2, 2, Rational(0), 300);
  const pf::SeriesChart chart{2, 3};

  auto rep = pf::lambda_constancy_sweep(ModulePresentation::one_variable(r, d, 2, {}), points, chart);
  CHECK(rep.generic_lambda == 2);
  CHECK(rep.exceptional.empty());
  for (const auto& pt : rep.points) CHECK(pt.lambda == 2);

  const auto u_star = pf::weight_coordinate(r, 29, chart);
  const auto g = linear(r, d, u_star) * FormalSeries::from_integers(r, d, {1, 1, 1}, false);
  rep = pf::lambda_constancy_sweep(ModulePresentation::one_variable(r, d, 1, {{g, 1}}), points, chart);
  CHECK(rep.generic_lambda == 1);
  CHECK(rep.exceptional == std::vector<std::int64_t>{29});
  REQUIRE(rep.certificates.size() == 1);
  CHECK(rep.certificates[0].value_at_point.is_zero());
  CHECK(rep.exception_bound == 1);
  CHECK(rep.bound_respected);
}

TEST_CASE("mu-zero criterion and two-variable specialisation") {
  const auto r = RingParams::make(3, 1, 10);
  const int du = 8, ds = 8;
  auto bi = [&](std::vector<std::tuple<int, int, std::int64_t>> terms) {
    BivariateSeries g(r, du, ds);
    for (auto [i, j, c] : terms) g.set_coefficient(i, j, I(r, c));
    g.set_polynomial_in_s(true);
    for (int j = 0; j < ds; ++j) {
      auto row = g.row(j);
      row.set_polynomial(true);
      g.set_row(j, row);
    }
    return g;
  };
  const auto s_plus_u = ModulePresentation::two_variable(r, du, ds, 0, {{bi({{0, 1, 1}, {1, 0, 1}}), 1}});
  CHECK(pf::mu_zero_criterion(s_plus_u));
  const auto p = ModulePresentation::two_variable(r, du, ds, 0, {{bi({{0, 0, 3}}), 1}});
  CHECK(!pf::mu_zero_criterion(p));
  const auto us_p = ModulePresentation::two_variable(r, du, ds, 0, {{bi({{1, 1, 1}, {0, 0, 3}}), 2}});
  CHECK(!pf::mu_zero_criterion(us_p));
  for (int k : {3, 6, 9, 18, 27}) {
    CHECK(pf::mu_of_specialization(us_p, I(r, k)) > Rational(0));
    CHECK(pf::mu_of_specialization(s_plus_u, I(r, k)) == Rational(0));
  }
  CHECK(code_of([&] {
          pf::mu_zero_criterion(ModulePresentation::two_variable(r, du, ds, 1, {}));
        }) == ErrorCode::NotTorsion);

  // Substitution against a direct double sum.
  Rng rng(63);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<FormalSeries> rows;
    for (int j = 0; j < ds; ++j) rows.push_back(pftest::random_series(rng, r, du));
    const auto g = BivariateSeries::from_rows(rows, ds);
    const auto u = pftest::random_of_valuation_at_least(rng, r, 2);
    const auto m = ModulePresentation::two_variable(r, du, ds, 0, {{g, 1}});
    const auto s = pf::specialize_bivariate(m, u);
    const auto& gs = std::get<FormalSeries>(s.torsion[0].g);
    for (int j = 0; j < ds; ++j) {
      OkElement acc = OkElement::zero(r), power = OkElement::one(r);
      for (int i = 0; i < du; ++i) {
        acc = acc + g.coefficient(i, j) * power;
        power = power * u;
      }
      CHECK(gs.coefficient(j) == acc.with_precision(2 * du));
    }
    if (!gs.is_zero()) {
      CHECK(pf::mu_invariant(gs) == pf::mu_of_specialization(m, u));
    }
  }
}

TEST_CASE("idempotents of O_K[Delta]") {
  for (auto p : {3u, 5u, 7u}) {
    const auto r = RingParams::make(p, 1, 10);
    auto sum = pf::GroupRingElement(r);
    for (std::uint32_t j = 0; j + 1 < p; ++j) {
      const auto ej = pf::idempotent(r, j);
      sum = sum + ej;
      CHECK(ej * ej == ej);
      for (std::uint32_t k = 0; k + 1 < p; ++k) {
        if (k != j) CHECK((ej * pf::idempotent(r, k)) == pf::GroupRingElement(r));
      }
      for (std::uint32_t b = 1; b < p; ++b) {
        const auto delta = pf::GroupRingElement::delta(r, b);
        CHECK(delta * ej == pf::character_value(r, b, j) * ej);
      }
    }
    CHECK(sum == pf::GroupRingElement::one(r));
  }
  // p = 3: e_0 = (1 + delta)/2, e_1 = (1 - delta)/2 with delta = delta_2.
  const auto r = RingParams::make(3, 1, 8);
  const auto half = I(r, 2).inverse();
  const auto delta = pf::GroupRingElement::delta(r, 2);
  const auto one = pf::GroupRingElement::one(r);
  CHECK(pf::idempotent_decompose(delta, 0) == half * (delta + one));
  CHECK(pf::idempotent_decompose(delta, 1) == half * (delta - one));
}

TEST_CASE("cyclotomic split and involution") {
  const auto r = RingParams::make(5, 1, 8);
  const int d = 8;
  std::vector<FormalSeries> one(4, FormalSeries(r, d, pf::Variable::S));
  one[0] = FormalSeries::constant(I(r, 1), d, pf::Variable::S);
  for (const auto& c : pf::cyclotomic_split(one)) CHECK(c == FormalSeries::constant(I(r, 1), d));
  // delta_2 splits into omega(2)^j.
  std::vector<FormalSeries> g(4, FormalSeries(r, d, pf::Variable::S));
  g[1] = FormalSeries::constant(I(r, 1), d, pf::Variable::S);
  const auto parts = pf::cyclotomic_split(g);
  const auto w = pf::teichmuller(r, 2);
  CHECK(parts[0] == FormalSeries::constant(I(r, 1), d));
  CHECK(parts[1] == FormalSeries::constant(w, d));
  CHECK(parts[2] == FormalSeries::constant(I(r, -1), d));
  CHECK(parts[3] == FormalSeries::constant(w * I(r, -1), d));
  Rng rng(64);
  std::vector<FormalSeries> x;
  for (int a = 0; a < 4; ++a) x.push_back(pftest::random_series(rng, r, d, pf::Variable::S));
  const auto back = pf::cyclotomic_recombine(pf::cyclotomic_split(x));
  for (int a = 0; a < 4; ++a) CHECK(back[static_cast<std::size_t>(a)] == x[static_cast<std::size_t>(a)]);

  const auto c = FormalSeries::constant(I(r, 7), d, pf::Variable::S);
  CHECK(pf::iota_involution(c) == c);
  const auto s = FormalSeries::variable(r, d, pf::Variable::S);
  CHECK(pf::iota_involution(s) == FormalSeries::from_integers(r, d, {0, -1, 1, -1, 1, -1, 1, -1}, false));
  for (int rep = 0; rep < 10; ++rep) {
    const auto f = pftest::random_series(rng, r, d, pf::Variable::S);
    const auto h = pftest::random_series(rng, r, d, pf::Variable::S);
    CHECK(pf::iota_involution(pf::iota_involution(f)) == f);
    CHECK(pf::iota_involution(f * h) == pf::iota_involution(f) * pf::iota_involution(h));
  }
}
