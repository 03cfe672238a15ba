#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pfam/formal_series.hpp"
#include "pfam/group_word.hpp"

namespace pf {

/// Ring-specific hooks used by the generic pseudo-representation code.
/// R is either OkElement (constants) or FormalSeries (elements of O_K[[U]]).
template <class R>
struct CoefficientTraits;

template <>
struct CoefficientTraits<OkElement> {
  static OkElement from_int(const OkElement& like, std::int64_t n) {
    return OkElement::from_int(like.ring(), n);
  }
  static bool is_unit(const OkElement& x) { return x.is_unit(); }
  static OkElement inverse(const OkElement& x) { return x.inverse(); }
  /// Value at the disk centre (the element itself for constants).
  static OkElement center_value(const OkElement& x) { return x; }
  /// x / pi^k; NotIntegral when x is not divisible.
  static OkElement divide_by_pi(const OkElement& x, int k) { return x.shift_down(k); }
  static OkElement specialize(const OkElement& x, const OkElement&) { return x; }
};

template <>
struct CoefficientTraits<FormalSeries> {
  static FormalSeries from_int(const FormalSeries& like, std::int64_t n) {
    FormalSeries f = FormalSeries::constant(OkElement::from_int(like.ring(), n), like.truncation(),
                                            like.variable());
    f.set_chart(like.chart());
    return f;
  }
  static bool is_unit(const FormalSeries& x) {
    return x.is_integral() && x.coefficient(0).is_unit();
  }
  static FormalSeries inverse(const FormalSeries& x) { return x.inverse(); }
  static OkElement center_value(const FormalSeries& x) { return x.coefficient(0); }
  static FormalSeries divide_by_pi(const FormalSeries& x, int k) {
    FormalSeries q = x.shift_pi(-k);
    if (!q.is_integral()) {
      throw Error(ErrorCode::NotIntegral, "series is not divisible by pi^" + std::to_string(k));
    }
    return q;
  }
  static OkElement specialize(const FormalSeries& x, const OkElement& u) {
    return x.evaluate(u).value;
  }
};

template <class R>
struct Matrix2 {
  R a, b, c, d;

  static Matrix2 identity(const R& like) {
    using T = CoefficientTraits<R>;
    return {T::from_int(like, 1), T::from_int(like, 0), T::from_int(like, 0), T::from_int(like, 1)};
  }
  static Matrix2 conjugation(const R& like) {
    using T = CoefficientTraits<R>;
    return {T::from_int(like, -1), T::from_int(like, 0), T::from_int(like, 0), T::from_int(like, 1)};
  }

  R det() const { return a * d - b * c; }
  R trace() const { return a + d; }

  /// Throws NotInvertible unless the determinant is a unit.
  Matrix2 inverse() const {
    using T = CoefficientTraits<R>;
    const R dt = det();
    if (!T::is_unit(dt)) throw Error(ErrorCode::NotInvertible, "determinant is not a unit");
    const R inv = T::inverse(dt);
    return {d * inv, -(b * inv), -(c * inv), a * inv};
  }

  friend Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const Matrix2& x, const Matrix2& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
};

/// Representation of the free group on t generators plus c, with
/// rho(c) = diag(-1, 1).
template <class R>
class MatrixRep2 {
 public:
  /// Throws NotInvertible if some generator image has a non-unit determinant.
  explicit MatrixRep2(std::vector<Matrix2<R>> generators) : gens_(std::move(generators)) {
    if (gens_.empty()) throw Error(ErrorCode::InvalidArgument, "use with_prototype for t = 0");
    proto_ = gens_.front().a;
    finish();
  }
  /// Representation with no generators besides c.
  static MatrixRep2 with_prototype(const R& like) {
    MatrixRep2 rep;
    rep.proto_ = like;
    rep.finish();
    return rep;
  }
  /// As the constructor, validating an explicitly supplied image of c.
  static MatrixRep2 with_conjugation(std::vector<Matrix2<R>> generators, const Matrix2<R>& c_image) {
    MatrixRep2 rep(std::move(generators));
    if (!(c_image == rep.conjugation())) {
      throw Error(ErrorCode::BadConjugationImage, "rho(c) must be diag(-1, 1)");
    }
    return rep;
  }

  int generators() const noexcept { return static_cast<int>(gens_.size()); }
  const R& prototype() const noexcept { return proto_; }
  const Matrix2<R>& generator(int i) const { return gens_.at(static_cast<std::size_t>(i - 1)); }
  Matrix2<R> conjugation() const { return Matrix2<R>::conjugation(proto_); }

  Matrix2<R> letter(int x) const {
    if (x == 0) return conjugation();
    const int i = x < 0 ? -x : x;
    if (i > generators()) {
      throw Error(ErrorCode::InvalidArgument, "letter g" + std::to_string(i) + " out of range");
    }
    return x > 0 ? gens_[static_cast<std::size_t>(i - 1)] : inverses_[static_cast<std::size_t>(i - 1)];
  }

  Matrix2<R> image(const GroupWord& w) const {
    Matrix2<R> m = Matrix2<R>::identity(proto_);
    for (int x : w.letters()) m = m * letter(x);
    return m;
  }

 private:
  MatrixRep2() = default;
  void finish() {
    inverses_.clear();
    for (const auto& g : gens_) inverses_.push_back(g.inverse());
  }

  R proto_;
  std::vector<Matrix2<R>> gens_;
  std::vector<Matrix2<R>> inverses_;
};

/// Wiles pseudo-representation (A, D, Xi) given by closures.
template <class R>
struct PseudoRep {
  int generators = 0;
  /// Any coefficient; supplies the ring (and truncation) for constants.
  R prototype;
  std::function<R(const GroupWord&)> A;
  std::function<R(const GroupWord&)> D;
  std::function<R(const GroupWord&, const GroupWord&)> Xi;
};

namespace detail {

/// Memoised word images; guarded so a PseudoRep may be shared across threads.
template <class R>
class ImageCache {
 public:
  explicit ImageCache(MatrixRep2<R> rep) : rep_(std::move(rep)) {}

  Matrix2<R> get(const GroupWord& w) {
    {
      std::lock_guard lock(mutex_);
      auto it = cache_.find(w);
      if (it != cache_.end()) return it->second;
    }
    Matrix2<R> m = Matrix2<R>::identity(rep_.prototype());
    if (!w.empty()) {
      std::vector<int> prefix(w.letters().begin(), w.letters().end() - 1);
      m = get(GroupWord(std::move(prefix))) * rep_.letter(w.letters().back());
    }
    std::lock_guard lock(mutex_);
    return cache_.emplace(w, std::move(m)).first->second;
  }

 private:
  MatrixRep2<R> rep_;
  std::mutex mutex_;
  std::unordered_map<GroupWord, Matrix2<R>, GroupWordHash> cache_;
};

}  // namespace detail

/// pi_rho = (a, d, b(sigma) c(tau)).
template <class R>
PseudoRep<R> pseudo_from_matrix(const MatrixRep2<R>& rho) {
  auto cache = std::make_shared<detail::ImageCache<R>>(rho);
  PseudoRep<R> pi;
  pi.generators = rho.generators();
  pi.prototype = rho.prototype();
  pi.A = [cache](const GroupWord& w) { return cache->get(w).a; };
  pi.D = [cache](const GroupWord& w) { return cache->get(w).d; };
  pi.Xi = [cache](const GroupWord& s, const GroupWord& t) { return cache->get(s).b * cache->get(t).c; };
  return pi;
}

/// Finite lookup tables; querying a missing entry throws InvalidArgument,
/// except that Xi defaults to zero when xi_default_zero is set.
template <class R>
PseudoRep<R> pseudo_from_tables(int generators, const R& prototype,
                                std::unordered_map<GroupWord, R, GroupWordHash> a,
                                std::unordered_map<GroupWord, R, GroupWordHash> d,
                                std::unordered_map<std::string, R> xi, bool xi_default_zero) {
  auto at = std::make_shared<decltype(a)>(std::move(a));
  auto dt = std::make_shared<decltype(d)>(std::move(d));
  auto xt = std::make_shared<decltype(xi)>(std::move(xi));
  PseudoRep<R> pi;
  pi.generators = generators;
  pi.prototype = prototype;
  auto lookup = [](const auto& table, const GroupWord& w, const char* name) {
    auto it = table->find(w);
    if (it == table->end()) {
      throw Error(ErrorCode::InvalidArgument, std::string(name) + " has no entry for " + w.to_string());
    }
    return it->second;
  };
  pi.A = [at, lookup](const GroupWord& w) { return lookup(at, w, "A"); };
  pi.D = [dt, lookup](const GroupWord& w) { return lookup(dt, w, "D"); };
  pi.Xi = [xt, prototype, xi_default_zero](const GroupWord& s, const GroupWord& t) {
    auto it = xt->find(s.to_string() + "," + t.to_string());
    if (it != xt->end()) return it->second;
    if (xi_default_zero) return CoefficientTraits<R>::from_int(prototype, 0);
    throw Error(ErrorCode::InvalidArgument,
                "Xi has no entry for (" + s.to_string() + ", " + t.to_string() + ")");
  };
  return pi;
}

/// Tuples over which the relations are checked. Indices refer to words.
struct WordSample {
  std::vector<GroupWord> words;
  std::vector<std::array<std::uint32_t, 2>> pairs;
  std::vector<std::array<std::uint32_t, 4>> quads;
};

/// Every pair and every quadruple of reduced words whose lengths add up to
/// at most max_total_length; in particular every word of length up to that
/// bound appears in each slot.
WordSample exhaustive_sample(int generators, int max_total_length);

struct WilesViolation {
  std::string relation;
  std::vector<GroupWord> witness;
};

struct WilesReport {
  std::size_t checks = 0;
  std::vector<WilesViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Checks (II) (three product rules), (III) and (IV) on the sample.
template <class R>
WilesReport check_wiles_relations(const PseudoRep<R>& pi, const WordSample& sample) {
  using T = CoefficientTraits<R>;
  WilesReport report;
  const auto& words = sample.words;
  std::vector<R> a, d;
  a.reserve(words.size());
  d.reserve(words.size());
  for (const auto& w : words) {
    a.push_back(pi.A(w));
    d.push_back(pi.D(w));
  }
  std::unordered_map<std::uint64_t, R> xi_cache;
  auto xi = [&](std::uint32_t i, std::uint32_t j) -> const R& {
    const std::uint64_t key = (static_cast<std::uint64_t>(i) << 32) | j;
    auto it = xi_cache.find(key);
    if (it == xi_cache.end()) it = xi_cache.emplace(key, pi.Xi(words[i], words[j])).first;
    return it->second;
  };
  std::unordered_map<GroupWord, std::pair<R, R>, GroupWordHash> product_ad;
  auto ad_of = [&](const GroupWord& w) -> const std::pair<R, R>& {
    auto it = product_ad.find(w);
    if (it == product_ad.end()) it = product_ad.emplace(w, std::pair{pi.A(w), pi.D(w)}).first;
    return it->second;
  };
  std::unordered_map<GroupWord, std::uint32_t, GroupWordHash> index;
  for (std::uint32_t i = 0; i < words.size(); ++i) index.emplace(words[i], i);
  auto fail = [&](const char* rel, std::vector<GroupWord> witness) {
    report.violations.push_back({rel, std::move(witness)});
  };

  const R one = T::from_int(pi.prototype, 1);
  const GroupWord unit_word;
  ++report.checks;
  if (!(pi.A(unit_word) == one) || !(pi.D(unit_word) == one)) fail("III.unit", {unit_word});
  for (std::uint32_t i = 0; i < words.size(); ++i) {
    report.checks += 2;
    if (!pi.Xi(words[i], unit_word).is_zero()) fail("III.Xi", {words[i], unit_word});
    if (!pi.Xi(unit_word, words[i]).is_zero()) fail("III.Xi", {unit_word, words[i]});
  }

  for (const auto& [i, j] : sample.pairs) {
    const GroupWord st = words[i] * words[j];
    const auto& ad = ad_of(st);
    report.checks += 2;
    if (!(ad.first == a[i] * a[j] + xi(i, j))) fail("II.A", {words[i], words[j]});
    if (!(ad.second == d[i] * d[j] + xi(j, i))) fail("II.D", {words[i], words[j]});
  }

  for (const auto& [s, t, r, g] : sample.quads) {
    // (II) third rule with (sigma, tau, rho, gamma) = (s, t, r, g).
    const GroupWord st = words[s] * words[t];
    const GroupWord rg = words[r] * words[g];
    auto is = index.find(st);
    auto ir = index.find(rg);
    const R lhs = (is != index.end() && ir != index.end()) ? xi(is->second, ir->second) : pi.Xi(st, rg);
    const R rhs = a[s] * a[g] * xi(t, r) + a[g] * d[t] * xi(s, r) + a[s] * d[r] * xi(t, g) +
                  d[t] * d[r] * xi(s, g);
    ++report.checks;
    if (!(lhs == rhs)) fail("II.Xi", {words[s], words[t], words[r], words[g]});
    // (IV) with (sigma, tau, rho, eta) = (s, t, r, g).
    ++report.checks;
    if (!(xi(s, t) * xi(r, g) == xi(s, g) * xi(r, t))) {
      fail("IV", {words[s], words[t], words[r], words[g]});
    }
  }
  return report;
}

/// A(s) = (tr(s) - tr(c s)) / 2, D(s) = (tr(s) + tr(c s)) / 2.
template <class R>
std::pair<std::function<R(const GroupWord&)>, std::function<R(const GroupWord&)>> trace_to_AD(
    std::function<R(const GroupWord&)> tr, const R& prototype) {
  using T = CoefficientTraits<R>;
  const R half = T::inverse(T::from_int(prototype, 2));
  auto a = [tr, half](const GroupWord& s) { return (tr(s) - tr(GroupWord::conjugation() * s)) * half; };
  auto d = [tr, half](const GroupWord& s) { return (tr(s) + tr(GroupWord::conjugation() * s)) * half; };
  return {a, d};
}

/// Raised by glue_crt; carries the valuations that failed to match.
class IncompatibleGlue : public Error {
 public:
  IncompatibleGlue(int obstruction_digits, int required_digits);
  /// val(y - x) in pi-digits.
  int obstruction_digits() const noexcept { return obstruction_; }
  /// val(u2 - u1) in pi-digits: the difference had to reach this.
  int required_digits() const noexcept { return required_; }

 private:
  int obstruction_;
  int required_;
};

/// The degree <= 1 series f with f(u1) = x and f(u2) = y. It exists iff
/// y = x mod (u2 - u1); otherwise throws IncompatibleGlue.
FormalSeries glue_crt(const OkElement& x, const OkElement& y, const OkElement& u1,
                      const OkElement& u2, int truncation = kDefaultTruncation);

/// Rank-two representation rebuilt from a pseudo-representation.
template <class R>
struct ReconstructedRep {
  PseudoRep<R> source;
  GroupWord sigma;
  GroupWord tau;
  /// val(Xi(sigma, tau)) at the disk centre, in pi-digits.
  int mu_digits = 0;
  Rational mu{0};
  /// Xi(sigma, tau) = p^mu V^-1.
  R V;

  /// [[A(g), Xi(g, tau) V p^-mu], [Xi(sigma, g), D(g)]]; NonIntegralEntry if
  /// the upper-right entry leaves the coefficient ring.
  Matrix2<R> image(const GroupWord& g) const {
    using T = CoefficientTraits<R>;
    R upper;
    try {
      upper = T::divide_by_pi(source.Xi(g, tau) * V, mu_digits);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotIntegral) throw;
      throw Error(ErrorCode::NonIntegralEntry,
                  "upper-right entry of " + g.to_string() + " has negative valuation");
    }
    return {source.A(g), std::move(upper), source.Xi(sigma, g), source.D(g)};
  }

  MatrixRep2<R> to_matrix_rep() const {
    if (source.generators == 0) return MatrixRep2<R>::with_prototype(source.prototype);
    std::vector<Matrix2<R>> gens;
    for (int i = 1; i <= source.generators; ++i) gens.push_back(image(GroupWord::generator(i)));
    return MatrixRep2<R>(std::move(gens));
  }
};

/// Searches pairs of words of length <= search_length, ordered by total
/// length, then sigma, then tau (length-lexicographic), for the first pair
/// minimising val(Xi(sigma, tau)) at the centre.
///
/// Throws ApparentlyReducible when every searched Xi vanishes at the centre,
/// and NonIntegralEntry when Xi(sigma, tau) is not p^mu times a unit.
template <class R>
ReconstructedRep<R> reconstruct(const PseudoRep<R>& pi, int search_length) {
  using T = CoefficientTraits<R>;
  const auto words = enumerate_words(pi.generators, search_length);
  std::vector<std::size_t> start(static_cast<std::size_t>(search_length) + 2, words.size());
  for (std::size_t i = words.size(); i-- > 0;) start[words[i].length()] = i;
  for (int len = search_length; len >= 0; --len) {
    start[static_cast<std::size_t>(len)] =
        std::min(start[static_cast<std::size_t>(len)], start[static_cast<std::size_t>(len) + 1]);
  }
  int best = -1;
  std::size_t best_s = 0, best_t = 0;
  for (int total = 0; total <= 2 * search_length && best != 0; ++total) {
    for (int ls = std::max(0, total - search_length); ls <= std::min(total, search_length) && best != 0; ++ls) {
      const int lt = total - ls;
      for (std::size_t s = start[static_cast<std::size_t>(ls)];
           s < start[static_cast<std::size_t>(ls) + 1] && best != 0; ++s) {
        for (std::size_t t = start[static_cast<std::size_t>(lt)];
             t < start[static_cast<std::size_t>(lt) + 1]; ++t) {
          const OkElement center = T::center_value(pi.Xi(words[s], words[t]));
          if (center.is_zero()) continue;
          const int v = center.valuation_digits();
          if (best < 0 || v < best) {
            best = v;
            best_s = s;
            best_t = t;
            if (v == 0) break;
          }
        }
      }
    }
  }
  if (best < 0) {
    throw Error(ErrorCode::ApparentlyReducible,
                "Xi vanishes at the centre on every pair of words of length <= " +
                    std::to_string(search_length));
  }
  ReconstructedRep<R> out;
  out.source = pi;
  out.sigma = words[best_s];
  out.tau = words[best_t];
  out.mu_digits = best;
  out.mu = Rational(best, static_cast<std::int64_t>(pi.prototype.ring().e()));
  R w;
  try {
    w = T::divide_by_pi(pi.Xi(out.sigma, out.tau), best);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotIntegral) throw;
    throw Error(ErrorCode::NonIntegralEntry,
                "Xi(" + out.sigma.to_string() + ", " + out.tau.to_string() +
                    ") is not p^mu times a unit of the coefficient ring");
  }
  out.V = T::inverse(w);
  return out;
}

}  // namespace pf
