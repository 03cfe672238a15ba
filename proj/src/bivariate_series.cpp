#include "pfam/bivariate_series.hpp"

#include <algorithm>
#include <string>

namespace pf {

BivariateSeries::BivariateSeries(RingParams ring, int trunc_u, int trunc_s)
    : ring_(ring), trunc_u_(trunc_u) {
  if (trunc_s < 1) throw Error(ErrorCode::InvalidArgument, "S truncation must be >= 1");
  rows_.assign(static_cast<std::size_t>(trunc_s), FormalSeries(ring, trunc_u, Variable::U));
}

BivariateSeries BivariateSeries::from_rows(std::vector<FormalSeries> rows, int trunc_s,
                                           bool polynomial_in_s) {
  if (rows.empty()) throw Error(ErrorCode::InvalidArgument, "no rows");
  BivariateSeries out(rows.front().ring(), rows.front().truncation(), trunc_s);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (static_cast<int>(j) >= trunc_s) {
      if (!rows[j].is_zero()) {
        throw Error(ErrorCode::InsufficientTruncation, "row beyond S truncation is nonzero");
      }
      continue;
    }
    out.set_row(static_cast<int>(j), std::move(rows[j]));
  }
  out.poly_s_ = polynomial_in_s;
  return out;
}

int BivariateSeries::precision() const noexcept {
  int prec = ring_.precision();
  for (const auto& r : rows_) prec = std::min(prec, r.precision());
  return prec;
}

void BivariateSeries::set_row(int j, FormalSeries f) {
  if (f.ring() != ring_ || f.truncation() != trunc_u_) {
    throw Error(ErrorCode::MismatchedParams, "row does not match the bivariate series shape");
  }
  f.set_variable(Variable::U);
  rows_.at(static_cast<std::size_t>(j)) = std::move(f);
}

void BivariateSeries::set_coefficient(int i, int j, const OkElement& value) {
  rows_.at(static_cast<std::size_t>(j)).set_coefficient(i, value);
}

bool BivariateSeries::is_zero() const noexcept {
  return std::all_of(rows_.begin(), rows_.end(), [](const FormalSeries& r) { return r.is_zero(); });
}

void BivariateSeries::check_compatible(const BivariateSeries& rhs) const {
  if (ring_ != rhs.ring_ || trunc_u_ != rhs.trunc_u_ || rows_.size() != rhs.rows_.size()) {
    throw Error(ErrorCode::MismatchedParams, "bivariate series shapes differ");
  }
}

BivariateSeries BivariateSeries::operator-() const {
  BivariateSeries out = *this;
  for (auto& r : out.rows_) r = -r;
  return out;
}

BivariateSeries& BivariateSeries::operator+=(const BivariateSeries& rhs) {
  check_compatible(rhs);
  for (std::size_t j = 0; j < rows_.size(); ++j) rows_[j] += rhs.rows_[j];
  poly_s_ = poly_s_ && rhs.poly_s_;
  return *this;
}

BivariateSeries& BivariateSeries::operator-=(const BivariateSeries& rhs) { return *this += -rhs; }

BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b) {
  a.check_compatible(b);
  const std::size_t n = a.rows_.size();
  BivariateSeries out(a.ring_, a.trunc_u_, static_cast<int>(n));
  std::vector<bool> touched(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.rows_[i].is_zero() && a.rows_[i].precision() == a.ring_.precision()) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      out.rows_[i + j] += a.rows_[i] * b.rows_[j];
      touched[i + j] = true;
    }
  }
  // Rows that received no product still inherit the operands' precision.
  const int prec = std::min(a.precision() + b.precision(), a.ring_.precision());
  for (std::size_t k = 0; k < n; ++k) {
    if (!touched[k]) out.rows_[k] = out.rows_[k].with_precision(prec);
  }
  out.poly_s_ = false;
  return out;
}

bool operator==(const BivariateSeries& a, const BivariateSeries& b) {
  a.check_compatible(b);
  for (std::size_t j = 0; j < a.rows_.size(); ++j) {
    if (a.rows_[j] != b.rows_[j]) return false;
  }
  return true;
}

FormalSeries BivariateSeries::substitute_u(const OkElement& u) const {
  FormalSeries out(ring_, truncation_s(), Variable::S);
  for (int j = 0; j < truncation_s(); ++j) out.set_coefficient(j, rows_[static_cast<std::size_t>(j)].evaluate(u).value);
  out.set_polynomial(poly_s_);
  return out;
}

int BivariateSeries::s_weierstrass_degree() const {
  for (int j = 0; j < truncation_s(); ++j) {
    if (rows_[static_cast<std::size_t>(j)].coefficient(0).is_unit()) return j;
  }
  return -1;
}

}  // namespace pf
