#include "pfam/family_lab.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "pfam/io.hpp"

namespace pf {

namespace {

[[noreturn]] void parse_fail(std::string_view source, int line, const std::string& msg) {
  throw Error(ErrorCode::ParseError, std::string(source) + ":" + std::to_string(line) + ": " + msg);
}

std::optional<std::int64_t> to_int(std::string_view s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<Rational> to_rational(std::string_view s) {
  const auto slash = s.find('/');
  const auto num = to_int(s.substr(0, slash));
  if (!num) return std::nullopt;
  if (slash == std::string_view::npos) return Rational(*num);
  const auto den = to_int(s.substr(slash + 1));
  if (!den || *den == 0) return std::nullopt;
  return Rational(*num, *den);
}

std::string format_rational(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

bool next_line(std::istream& in, std::string& line, int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

std::vector<std::string> words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

}  // namespace

const Rational& QExpansion::coefficient(std::int64_t n) const {
  const auto it = coeffs.find(n);
  if (it == coeffs.end()) {
    throw Error(ErrorCode::MissingCoefficient, label + ": a_" + std::to_string(n) + " is not given");
  }
  return it->second;
}

void QExpansion::validate() const {
  if (!is_prime(p) || p < 3) throw Error(ErrorCode::InvalidArgument, label + ": p must be an odd prime");
  if (level < 1) throw Error(ErrorCode::InvalidArgument, label + ": level must be positive");
  if (weight < 2) throw Error(ErrorCode::InvalidArgument, label + ": weight must be at least 2");
  if (gcd64(level, p) != 1) {
    throw Error(ErrorCode::LevelNotCoprime,
                label + ": level " + std::to_string(level) + " is divisible by " + std::to_string(p));
  }
  const auto a1 = coeffs.find(1);
  if (a1 == coeffs.end() || a1->second != Rational(1)) {
    throw Error(ErrorCode::NotNormalized, label + ": a_1 must be 1");
  }
}

QExpansion parse_qexp(std::istream& in, std::string_view source) {
  std::string line;
  int lineno = 0;
  if (!next_line(in, line, lineno)) parse_fail(source, 0, "empty q-expansion file");
  const auto head = words(line);
  if (head.size() != 5) parse_fail(source, lineno, "header needs 'label N k p neben'");
  QExpansion f;
  f.label = head[0];
  const auto level = to_int(head[1]), weight = to_int(head[2]), p = to_int(head[3]);
  if (!level || !weight || !p) parse_fail(source, lineno, "N, k and p must be integers");
  if (*p < 3 || *p > (1LL << 31)) parse_fail(source, lineno, "p out of range");
  f.level = *level;
  f.weight = *weight;
  f.p = static_cast<std::uint32_t>(*p);
  f.neben = head[4];
  while (next_line(in, line, lineno)) {
    const auto first = line.find_first_not_of(" \t");
    if (line.compare(first, 5, "fact ") == 0) {
      f.facts.push_back(line.substr(line.find_first_not_of(" \t", first + 5)));
      continue;
    }
    const auto w = words(line);
    if (w.size() != 2) parse_fail(source, lineno, "expected 'n a_n'");
    const auto n = to_int(w[0]);
    const auto a = to_rational(w[1]);
    if (!n || *n < 1) parse_fail(source, lineno, "bad index '" + w[0] + "'");
    if (!a) parse_fail(source, lineno, "bad coefficient '" + w[1] + "'");
    if (!f.coeffs.emplace(*n, *a).second) parse_fail(source, lineno, "duplicate a_" + w[0]);
  }
  f.validate();
  return f;
}

QExpansion ingest_qexp(const std::filesystem::path& path) {
  std::istringstream in(io::slurp(path));
  return parse_qexp(in, path.string());
}

void write_qexp(std::ostream& out, const QExpansion& f) {
  out << f.label << ' ' << f.level << ' ' << f.weight << ' ' << f.p << ' ' << f.neben << '\n';
  for (const auto& fact : f.facts) out << "fact " << fact << '\n';
  for (const auto& [n, a] : f.coeffs) out << n << ' ' << format_rational(a) << '\n';
}

bool check_supersingular(const QExpansion& f, std::uint32_t p) {
  const Rational& ap = f.coefficient(p);
  return rational_valuation(ap, p) > 0;
}

WindowVerdict check_edixhoven_window(const QExpansion& f, std::uint32_t p) {
  const Rational& ap = f.coefficient(p);
  const auto k = f.weight;
  if (k < 2 || k >= static_cast<std::int64_t>(p) + 1) return {false, "weight outside window"};
  if (rational_valuation(ap, p) <= 0) return {false, "ordinary residual"};
  return {true, "a_p = 0 mod p and 2 <= k < p+1"};
}

std::optional<bool> check_seed_condition(const QExpansion& f, std::uint32_t p) {
  const Rational& ap = f.coefficient(p);
  if (f.neben != "trivial" && f.neben != "1") return std::nullopt;
  // Compare a_p^2 with p^(k-1) without overflow: equal only if a_p = +-p^((k-1)/2).
  if ((f.weight - 1) % 2 != 0 || ap.denominator() != 1) return true;
  std::int64_t target = 1;
  for (std::int64_t i = 0; i < (f.weight - 1) / 2; ++i) {
    if (target > (INT64_MAX / p)) return true;
    target *= p;
  }
  return ap.numerator() != target && ap.numerator() != -target;
}

void FamilySamples::validate() const {
  if (samples.empty()) throw Error(ErrorCode::InvalidArgument, "family has no samples");
  std::set<std::int64_t> seen;
  for (const auto& [k, f] : samples) {
    if (!seen.insert(k).second) throw Error(ErrorCode::CoincidentNodes, "weight " + std::to_string(k) + " repeated");
    if (f.p != ring.p()) {
      throw Error(ErrorCode::MismatchedParams, f.label + ": declared p differs from the family's");
    }
    if (f.weight != k) {
      throw Error(ErrorCode::InvalidArgument,
                  f.label + ": weight " + std::to_string(f.weight) + " bound to k = " + std::to_string(k));
    }
    (void)weight_coordinate(ring, k, chart);
  }
}

FamilySamples load_family_manifest(const std::filesystem::path& path) {
  std::istringstream in(io::slurp(path));
  const std::string source = path.string();
  std::string line;
  int lineno = 0;
  if (!next_line(in, line, lineno)) parse_fail(source, 0, "empty manifest");
  const auto head = words(line);
  if (head.size() != 5) parse_fail(source, lineno, "header needs 'p e N k0 e0'");
  std::int64_t v[5];
  for (int i = 0; i < 5; ++i) {
    const auto x = to_int(head[static_cast<std::size_t>(i)]);
    if (!x) parse_fail(source, lineno, "bad header field '" + head[static_cast<std::size_t>(i)] + "'");
    v[i] = *x;
  }
  if (v[0] < 3 || v[0] > (1LL << 31) || v[1] < 1 || v[1] > 64 || v[2] < 1 || v[2] > 4096 || v[4] == 0) {
    parse_fail(source, lineno, "bad ring or chart parameters");
  }
  FamilySamples fam;
  fam.ring = RingParams::make(static_cast<std::uint32_t>(v[0]), static_cast<std::uint32_t>(v[1]),
                              static_cast<int>(v[2]));
  fam.chart = {v[3], v[4]};
  while (next_line(in, line, lineno)) {
    const auto w = words(line);
    if (w.size() != 2) parse_fail(source, lineno, "expected 'k path'");
    const auto k = to_int(w[0]);
    if (!k) parse_fail(source, lineno, "bad weight '" + w[0] + "'");
    std::filesystem::path file = w[1];
    if (file.is_relative()) file = path.parent_path() / file;
    fam.samples.emplace_back(*k, ingest_qexp(file));
  }
  fam.validate();
  return fam;
}

namespace {

Interpolant interpolate_subset(const std::vector<InterpolationNode>& nodes, int truncation) {
  return newton_interpolate(nodes, truncation);
}

}  // namespace

FamilyInterpolation interpolate_family(const FamilySamples& samples, std::int64_t n, int truncation) {
  samples.validate();
  if (samples.samples.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two sampled weights");
  std::vector<InterpolationNode> nodes;
  for (const auto& [k, f] : samples.samples) {
    nodes.push_back({weight_coordinate(samples.ring, k, samples.chart),
                     KElement::from_rational(samples.ring, f.coefficient(n))});
  }
  FamilyInterpolation out;
  out.n = n;
  out.interpolant = interpolate_subset(nodes, truncation);
  out.interpolant.polynomial.set_chart(samples.chart);
  out.integrality = power_bounded_check(out.interpolant.polynomial);
  for (const auto& node : nodes) {
    const KElement diff = out.interpolant.polynomial.evaluate_k(node.u) - node.value;
    if (!diff.is_zero()) out.reproduces_samples = false;
  }
  if (!out.integrality.power_bounded && nodes.size() > 2) {
    for (std::size_t skip = 0; skip < nodes.size(); ++skip) {
      std::vector<InterpolationNode> rest;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i != skip) rest.push_back(nodes[i]);
      }
      try {
        if (power_bounded_check(interpolate_subset(rest, truncation).polynomial).power_bounded) {
          out.suspects.push_back(samples.samples[skip].first);
        }
      } catch (const Error&) {
      }
    }
  }
  return out;
}

}  // namespace pf
