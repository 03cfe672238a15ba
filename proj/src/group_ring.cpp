#include "pfam/group_ring.hpp"

#include <string>

namespace pf {

namespace {

void check_ring(RingParams a, RingParams b) {
  if (a != b) throw Error(ErrorCode::MismatchedParams, "group ring elements over different rings");
}

}  // namespace

GroupRingElement::GroupRingElement(RingParams ring)
    : ring_(ring), c_(ring.p() - 1, OkElement::zero(ring)) {}

GroupRingElement GroupRingElement::delta(RingParams ring, std::uint32_t a) {
  if (a % ring.p() == 0) throw Error(ErrorCode::InvalidArgument, "delta_a needs a prime to p");
  GroupRingElement x(ring);
  x[a % ring.p()] = OkElement::one(ring);
  return x;
}

GroupRingElement operator+(const GroupRingElement& x, const GroupRingElement& y) {
  check_ring(x.ring_, y.ring_);
  GroupRingElement z = x;
  for (std::size_t i = 0; i < z.c_.size(); ++i) z.c_[i] += y.c_[i];
  return z;
}

GroupRingElement operator-(const GroupRingElement& x, const GroupRingElement& y) {
  check_ring(x.ring_, y.ring_);
  GroupRingElement z = x;
  for (std::size_t i = 0; i < z.c_.size(); ++i) z.c_[i] -= y.c_[i];
  return z;
}

GroupRingElement operator*(const GroupRingElement& x, const GroupRingElement& y) {
  check_ring(x.ring_, y.ring_);
  const std::uint32_t p = x.ring_.p();
  GroupRingElement z(x.ring_);
  for (std::uint32_t a = 1; a < p; ++a) {
    for (std::uint32_t b = 1; b < p; ++b) {
      z[static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p)] += x[a] * y[b];
    }
  }
  return z;
}

GroupRingElement operator*(const OkElement& s, const GroupRingElement& x) {
  GroupRingElement z = x;
  for (auto& v : z.c_) v = s * v;
  return z;
}

bool operator==(const GroupRingElement& x, const GroupRingElement& y) {
  check_ring(x.ring_, y.ring_);
  for (std::size_t i = 0; i < x.c_.size(); ++i) {
    if (x.c_[i] != y.c_[i]) return false;
  }
  return true;
}

OkElement character_value(RingParams ring, std::uint32_t a, std::int64_t j) {
  const std::int64_t q = static_cast<std::int64_t>(ring.p()) - 1;
  const auto exp = static_cast<std::uint64_t>(((j % q) + q) % q);
  return teichmuller(ring, a).pow(exp);
}

GroupRingElement idempotent(RingParams ring, std::uint32_t j) {
  const std::uint32_t p = ring.p();
  const OkElement scale = OkElement::from_int(ring, p - 1).inverse();
  GroupRingElement e(ring);
  for (std::uint32_t a = 1; a < p; ++a) {
    e[a] = scale * character_value(ring, a, -static_cast<std::int64_t>(j));
  }
  return e;
}

GroupRingElement idempotent_decompose(const GroupRingElement& x, std::uint32_t j) {
  return idempotent(x.ring(), j) * x;
}

std::vector<FormalSeries> cyclotomic_split(const std::vector<FormalSeries>& x) {
  if (x.empty()) throw Error(ErrorCode::InvalidArgument, "empty group-ring series");
  const RingParams ring = x.front().ring();
  const std::uint32_t p = ring.p();
  if (x.size() != p - 1) {
    throw Error(ErrorCode::InvalidArgument,
                "expected " + std::to_string(p - 1) + " coordinates, got " + std::to_string(x.size()));
  }
  std::vector<FormalSeries> out;
  for (std::uint32_t j = 0; j + 1 < p; ++j) {
    FormalSeries acc(ring, x.front().truncation(), x.front().variable());
    acc.set_polynomial(true);
    for (std::uint32_t a = 1; a < p; ++a) acc += character_value(ring, a, j) * x[a - 1];
    out.push_back(std::move(acc));
  }
  return out;
}

std::vector<FormalSeries> cyclotomic_recombine(const std::vector<FormalSeries>& components) {
  if (components.empty()) throw Error(ErrorCode::InvalidArgument, "no components");
  const RingParams ring = components.front().ring();
  const std::uint32_t p = ring.p();
  if (components.size() != p - 1) {
    throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(p - 1) + " components");
  }
  const OkElement scale = OkElement::from_int(ring, p - 1).inverse();
  std::vector<FormalSeries> out;
  for (std::uint32_t a = 1; a < p; ++a) {
    FormalSeries acc(ring, components.front().truncation(), components.front().variable());
    acc.set_polynomial(true);
    for (std::uint32_t j = 0; j + 1 < p; ++j) {
      acc += character_value(ring, a, -static_cast<std::int64_t>(j)) * components[j];
    }
    out.push_back(scale * acc);
  }
  return out;
}

FormalSeries iota_involution(const FormalSeries& f) {
  const RingParams ring = f.ring();
  const int d = f.truncation();
  FormalSeries one_plus_s = FormalSeries::from_integers(ring, d, {1, 1}, true, f.variable());
  FormalSeries inner = one_plus_s.inverse() - FormalSeries::constant(OkElement::one(ring), d, f.variable());
  inner.set_polynomial(false);
  FormalSeries out = f.compose(inner);
  out.set_variable(f.variable());
  out.set_chart(f.chart());
  return out;
}

}  // namespace pf
