#include "pfam/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace pf::io {

namespace {

[[noreturn]] void fail(std::string_view source, int line, const std::string& msg) {
  std::string where(source);
  if (line > 0) where += ":" + std::to_string(line);
  throw Error(ErrorCode::ParseError, where + ": " + msg);
}

std::int64_t to_int(std::string_view s, std::string_view what) {
  std::int64_t v = 0;
  if (s.empty() || (s[0] == '+')) throw Error(ErrorCode::ParseError, "bad " + std::string(what) + " '" + std::string(s) + "'");
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError, "bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

struct Cursor {
  std::string_view s;
  std::size_t pos = 0;

  bool done() const { return pos >= s.size(); }
  char peek() const { return done() ? '\0' : s[pos]; }
  bool eat(std::string_view tok) {
    if (s.substr(pos, tok.size()) == tok) {
      pos += tok.size();
      return true;
    }
    return false;
  }
  std::int64_t integer() {
    const std::size_t start = pos;
    if (peek() == '-') ++pos;
    while (!done() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    return to_int(s.substr(start, pos - start), "integer");
  }
  [[noreturn]] void error(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, msg + " at offset " + std::to_string(pos) + " in '" + std::string(s) + "'");
  }
};

struct Parsed {
  // Value is scale_digits shifts of body (pi-digits, may be negative).
  int scale_digits = 0;
  std::optional<Rational> rational;
  OkElement body;
  std::optional<int> prec;
};

OkElement pi_power(RingParams ring, std::int64_t k) {
  if (k < 0) throw Error(ErrorCode::ParseError, "negative power of pi inside a sum");
  return OkElement::uniformizer_power(ring, static_cast<int>(std::min<std::int64_t>(k, ring.precision())));
}

Parsed parse_raw(RingParams ring, std::string_view text) {
  Parsed out;
  std::string_view main = text;
  if (const auto sp = text.find(' '); sp != std::string_view::npos) {
    main = text.substr(0, sp);
    std::string_view attr = text.substr(sp);
    while (!attr.empty() && attr.front() == ' ') attr.remove_prefix(1);
    if (attr.substr(0, 5) != "prec=") throw Error(ErrorCode::ParseError, "unexpected '" + std::string(attr) + "'");
    const auto n = to_int(attr.substr(5), "precision");
    if (n < 0 || n > ring.precision()) {
      throw Error(ErrorCode::ParseError, "prec=" + std::to_string(n) + " outside [0, " +
                                             std::to_string(ring.precision()) + "]");
    }
    out.prec = static_cast<int>(n);
  }
  Cursor c{main};
  const std::size_t star = main.find('*');
  if (star != std::string_view::npos && (c.eat("pi^") || c.eat("p^"))) {
    const bool is_pi = main[1] == 'i';
    const std::int64_t a = c.integer();
    if (!c.eat("*")) c.error("expected '*' after scale");
    const std::int64_t digits = is_pi ? a : a * static_cast<std::int64_t>(ring.e());
    if (digits > 4 * ring.precision() || digits < -4 * ring.precision()) c.error("scale exponent out of range");
    out.scale_digits = static_cast<int>(digits);
  }
  if (c.eat("(")) {
    OkElement acc = OkElement::zero(ring);
    bool first = true;
    while (!c.eat(")")) {
      if (c.done()) c.error("unterminated '('");
      bool neg = false;
      if (!first || c.peek() == '-' || c.peek() == '+') {
        if (c.eat("-")) {
          neg = true;
        } else if (!c.eat("+")) {
          c.error("expected '+' or '-'");
        }
      }
      first = false;
      OkElement term;
      if (c.eat("pi")) {
        term = pi_power(ring, c.eat("^") ? c.integer() : 1);
      } else {
        if (c.peek() == '-') c.error("unexpected '-'");
        term = OkElement::from_int(ring, c.integer());
        if (c.eat("*pi")) term = term * pi_power(ring, c.eat("^") ? c.integer() : 1);
      }
      acc = neg ? acc - term : acc + term;
    }
    out.body = acc;
  } else {
    const std::int64_t num = c.integer();
    if (c.eat("/")) {
      const std::int64_t den = c.integer();
      if (den == 0) c.error("zero denominator");
      out.rational = Rational(num, den);
    } else {
      out.body = OkElement::from_int(ring, num);
    }
  }
  if (!c.done()) c.error("trailing characters");
  return out;
}

}  // namespace

OkElement parse_element(RingParams ring, std::string_view text) {
  const Parsed r = parse_raw(ring, text);
  if (r.scale_digits < 0) throw Error(ErrorCode::NotIntegral, "negative scale in '" + std::string(text) + "'");
  OkElement x = r.rational ? OkElement::from_rational(ring, *r.rational) : r.body;
  x = x.shift_up(r.scale_digits);
  if (r.prec) x = x.with_precision(*r.prec);
  return x;
}

KElement parse_k_element(RingParams ring, std::string_view text) {
  const Parsed r = parse_raw(ring, text);
  KElement x = r.rational ? KElement::from_rational(ring, *r.rational) : KElement(r.body);
  OkElement num = x.numerator();
  int den = x.denominator_exponent();
  if (r.prec) num = num.with_precision(*r.prec);
  if (r.scale_digits >= 0) {
    const int absorbed = std::min(den, r.scale_digits);
    den -= absorbed;
    num = num.shift_up(r.scale_digits - absorbed);
  } else {
    den -= r.scale_digits;
  }
  return {num, den};
}

namespace {

std::string format_body(const OkElement& x) {
  const RingParams ring = x.ring();
  std::string out;
  if (ring.e() == 1) {
    out = std::to_string(x.component(0));
  } else {
    for (std::uint32_t j = 0; j < ring.e(); ++j) {
      const std::uint64_t c = x.component(j);
      if (c == 0) continue;
      if (!out.empty()) out += '+';
      out += std::to_string(c);
      if (j == 1) out += "*pi";
      if (j > 1) out += "*pi^" + std::to_string(j);
    }
    out = out.empty() ? "0" : "(" + out + ")";
  }
  return out;
}

}  // namespace

std::string format_element(const OkElement& x) {
  std::string out = format_body(x);
  const RingParams ring = x.ring();
  if (x.precision() < ring.precision()) out += " prec=" + std::to_string(x.precision());
  return out;
}

std::string format_k_element(const KElement& x) {
  if (x.denominator_exponent() == 0) return format_element(x.numerator());
  return "pi^-" + std::to_string(x.denominator_exponent()) + "*" + format_element(x.numerator());
}

std::vector<std::string> element_tokens(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) {
    if (tok.rfind("prec=", 0) == 0) {
      if (out.empty()) throw Error(ErrorCode::ParseError, "'" + tok + "' without an element");
      out.back() += " " + tok;
    } else {
      out.push_back(tok);
    }
  }
  return out;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

// Reads the next non-empty, non-comment line.
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

RingParams make_ring(std::int64_t p, std::int64_t e, std::int64_t n) {
  if (p < 3 || e < 1 || n < 1 || p > (1LL << 31) || e > 64 || n > 4096) {
    throw Error(ErrorCode::InvalidParams, "bad ring parameters");
  }
  return RingParams::make(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(e), static_cast<int>(n));
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// "i [j] rest": splits off the leading integer fields.
std::pair<std::vector<std::int64_t>, std::string> split_indices(const std::string& line, int count) {
  std::vector<std::int64_t> idx;
  std::string_view rest = line;
  for (int t = 0; t < count; ++t) {
    rest = strip(rest);
    const auto sp = rest.find_first_of(" \t");
    if (sp == std::string_view::npos) throw Error(ErrorCode::ParseError, "missing fields");
    idx.push_back(to_int(rest.substr(0, sp), "index"));
    rest.remove_prefix(sp);
  }
  return {idx, std::string(strip(rest))};
}

}  // namespace

SeriesFile read_series(std::istream& in, std::string_view source) {
  std::string line;
  int lineno = 0;
  if (!next_line(in, line, lineno)) fail(source, 0, "empty series file");
  std::vector<std::int64_t> nums;
  std::optional<int> prec;
  int den = 0;
  bool poly = false;
  Variable var = Variable::U;
  try {
    for (const auto& w : words(line)) {
      if (w == "poly") {
        poly = true;
      } else if (w.rfind("prec=", 0) == 0) {
        prec = static_cast<int>(to_int(std::string_view(w).substr(5), "precision"));
      } else if (w.rfind("den=", 0) == 0) {
        den = static_cast<int>(to_int(std::string_view(w).substr(4), "denominator"));
      } else if (w == "var=S" || w == "var=U") {
        var = w == "var=S" ? Variable::S : Variable::U;
      } else {
        nums.push_back(to_int(w, "header field"));
      }
    }
  } catch (const Error& e) {
    fail(source, lineno, e.what());
  }
  if (nums.size() != 6 && nums.size() != 7) fail(source, lineno, "header needs 'p e N dU [dS] k0 e0'");
  const bool bivariate = nums.size() == 7;
  RingParams ring;
  try {
    ring = make_ring(nums[0], nums[1], nums[2]);
  } catch (const Error& e) {
    fail(source, lineno, e.what());
  }
  const std::int64_t du = nums[3];
  const std::int64_t ds = bivariate ? nums[4] : 1;
  if (du < 1 || ds < 1 || du > 1 << 16 || ds > 1 << 12) fail(source, lineno, "bad truncation");
  const SeriesChart chart{nums[bivariate ? 5 : 4], nums[bivariate ? 6 : 5]};
  if (chart.scale == 0) fail(source, lineno, "e0 must be nonzero");
  const int header_prec = prec.value_or(ring.precision());
  if (header_prec < 0 || header_prec > ring.precision()) fail(source, lineno, "prec outside [0, N]");
  if (den < 0) fail(source, lineno, "negative den");

  std::vector<std::vector<OkElement>> grid(static_cast<std::size_t>(ds),
                                           std::vector<OkElement>(static_cast<std::size_t>(du),
                                                                  OkElement::zero(ring)));
  std::vector<int> row_prec(static_cast<std::size_t>(ds), header_prec);
  while (next_line(in, line, lineno)) {
    try {
      auto [idx, rest] = split_indices(line, bivariate ? 2 : 1);
      const std::int64_t i = idx[0], j = bivariate ? idx[1] : 0;
      if (i < 0 || i >= du || j < 0 || j >= ds) throw Error(ErrorCode::ParseError, "monomial index out of range");
      const auto toks = element_tokens(rest);
      if (toks.size() != 1) throw Error(ErrorCode::ParseError, "expected one element");
      const OkElement x = parse_element(ring, toks[0]);
      grid[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = x;
      row_prec[static_cast<std::size_t>(j)] = std::min(row_prec[static_cast<std::size_t>(j)], x.precision());
    } catch (const Error& e) {
      fail(source, lineno, e.what());
    }
  }

  auto build_row = [&](std::size_t j, Variable v) {
    FormalSeries f = FormalSeries::from_coefficients(ring, static_cast<int>(du), grid[j], poly, v);
    f = f.with_precision(row_prec[j]).shift_pi(-den);
    f.set_chart(chart);
    return f;
  };
  SeriesFile out;
  out.chart = chart;
  if (!bivariate) {
    out.series = build_row(0, var);
    return out;
  }
  std::vector<FormalSeries> rows;
  for (std::size_t j = 0; j < grid.size(); ++j) rows.push_back(build_row(j, Variable::U));
  out.series = BivariateSeries::from_rows(std::move(rows), static_cast<int>(ds), poly);
  return out;
}

SeriesFile read_series_file(const std::filesystem::path& path) {
  std::istringstream in(slurp(path));
  return read_series(in, path.string());
}

void write_series(std::ostream& out, const FormalSeries& f) {
  const RingParams r = f.ring();
  out << r.p() << ' ' << r.e() << ' ' << r.precision() << ' ' << f.truncation() << ' ' << f.chart().center << ' '
      << f.chart().scale;
  if (f.precision() < r.precision()) out << " prec=" << f.precision();
  if (f.denominator_exponent() > 0) out << " den=" << f.denominator_exponent();
  if (f.is_polynomial()) out << " poly";
  if (f.variable() == Variable::S) out << " var=S";
  out << '\n';
  for (int i = 0; i < f.truncation(); ++i) {
    const OkElement c = f.coefficient(i);
    if (c.is_zero()) continue;
    out << i << ' ' << format_body(c) << '\n';
  }
}

void write_series(std::ostream& out, const BivariateSeries& f, const SeriesChart& chart) {
  const RingParams r = f.ring();
  bool poly = f.is_polynomial_in_s();
  int max_prec = 0;
  for (int j = 0; j < f.truncation_s(); ++j) {
    poly = poly && f.row(j).is_polynomial();
    max_prec = std::max(max_prec, f.row(j).precision());
  }
  out << r.p() << ' ' << r.e() << ' ' << r.precision() << ' ' << f.truncation_u() << ' ' << f.truncation_s()
      << ' ' << chart.center << ' ' << chart.scale;
  if (max_prec < r.precision()) out << " prec=" << max_prec;
  if (poly) out << " poly";
  out << '\n';
  for (int j = 0; j < f.truncation_s(); ++j) {
    const FormalSeries& row = f.row(j);
    if (row.denominator_exponent() != 0) throw Error(ErrorCode::NotIntegral, "bivariate rows must be integral");
    const bool lowered = row.precision() < max_prec;
    bool wrote = false;
    for (int i = 0; i < row.truncation(); ++i) {
      const OkElement c = row.coefficient(i);
      if (c.is_zero()) continue;
      std::string text = format_body(c);
      if (lowered) text += " prec=" + std::to_string(row.precision());
      out << i << ' ' << j << ' ' << text << '\n';
      wrote = true;
    }
    if (lowered && !wrote) out << 0 << ' ' << j << " 0 prec=" << row.precision() << '\n';
  }
}

ModuleFile read_module_file(const std::filesystem::path& path, std::optional<ModulePresentation> fallback) {
  std::istringstream in(slurp(path));
  const std::string source = path.string();
  std::string line;
  int lineno = 0;
  if (!next_line(in, line, lineno)) fail(source, 0, "empty module file");
  const auto head = words(line);
  if (head.size() != 2) fail(source, lineno, "header needs 'vars free_rank'");
  ModuleFile out;
  ModulePresentation& m = out.module;
  try {
    m.vars = static_cast<int>(to_int(head[0], "vars"));
    m.free_rank = static_cast<int>(to_int(head[1], "free rank"));
  } catch (const Error& e) {
    fail(source, lineno, e.what());
  }
  if (m.vars != 1 && m.vars != 2) fail(source, lineno, "vars must be 1 or 2");
  if (m.free_rank < 0) fail(source, lineno, "negative free rank");
  bool have_ring = false;
  if (fallback) {
    m.ring = fallback->ring;
    m.truncation_u = fallback->truncation_u;
    m.truncation_s = fallback->truncation_s;
    out.chart = {};
  }
  while (next_line(in, line, lineno)) {
    const auto w = words(line);
    if (w.size() != 2) fail(source, lineno, "expected 'multiplicity path'");
    std::int64_t mult = 0;
    try {
      mult = to_int(w[0], "multiplicity");
    } catch (const Error& e) {
      fail(source, lineno, e.what());
    }
    if (mult < 1 || mult > 1 << 16) fail(source, lineno, "multiplicity must be positive");
    std::filesystem::path piece = w[1];
    if (piece.is_relative()) piece = path.parent_path() / piece;
    const SeriesFile sf = read_series_file(piece);
    const bool bivariate = std::holds_alternative<BivariateSeries>(sf.series);
    if (bivariate != (m.vars == 2)) fail(source, lineno, "series variable count does not match vars");
    if (bivariate) {
      const auto& g = std::get<BivariateSeries>(sf.series);
      if (!have_ring) {
        m.ring = g.ring();
        m.truncation_u = g.truncation_u();
        m.truncation_s = g.truncation_s();
      }
      m.torsion.push_back({g, static_cast<int>(mult)});
    } else {
      const auto& g = std::get<FormalSeries>(sf.series);
      if (!have_ring) {
        m.ring = g.ring();
        m.truncation_u = g.truncation();
      }
      m.torsion.push_back({g, static_cast<int>(mult)});
    }
    if (!have_ring) out.chart = sf.chart;
    have_ring = true;
  }
  if (!have_ring && !fallback) fail(source, 0, "module without torsion needs explicit ring parameters");
  try {
    m.validate();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MismatchedParams) fail(source, 0, e.what());
    throw;
  }
  return out;
}

MatrixRep2<OkElement> read_matrix_rep(std::istream& in, std::string_view source) {
  std::string line;
  int lineno = 0;
  if (!next_line(in, line, lineno)) fail(source, 0, "empty matrix-rep file");
  const auto head = words(line);
  if (head.size() != 4) fail(source, lineno, "header needs 'p e N t'");
  RingParams ring;
  std::int64_t t = 0;
  try {
    ring = make_ring(to_int(head[0], "p"), to_int(head[1], "e"), to_int(head[2], "N"));
    t = to_int(head[3], "t");
  } catch (const Error& e) {
    fail(source, lineno, e.what());
  }
  if (t < 0 || t > 64) fail(source, lineno, "t must be in [0, 64]");
  std::vector<Matrix2<OkElement>> gens;
  std::optional<Matrix2<OkElement>> c_image;
  while (next_line(in, line, lineno)) {
    auto toks = element_tokens(line);
    const bool is_c = !toks.empty() && toks[0] == "c";
    if (is_c) {
      if (c_image) fail(source, lineno, "duplicate c line");
      toks.erase(toks.begin());
    } else if (static_cast<std::int64_t>(gens.size()) == t) {
      fail(source, lineno, "more generator lines than t");
    }
    if (toks.size() != 4) fail(source, lineno, "expected 4 elements");
    Matrix2<OkElement> m;
    try {
      m = {parse_element(ring, toks[0]), parse_element(ring, toks[1]), parse_element(ring, toks[2]),
           parse_element(ring, toks[3])};
    } catch (const Error& e) {
      fail(source, lineno, e.what());
    }
    if (is_c) {
      c_image = m;
    } else {
      gens.push_back(m);
    }
  }
  if (static_cast<std::int64_t>(gens.size()) != t) {
    fail(source, 0, "expected " + std::to_string(t) + " generator lines, found " + std::to_string(gens.size()));
  }
  if (t == 0) {
    if (c_image) (void)MatrixRep2<OkElement>::with_conjugation({Matrix2<OkElement>::identity(OkElement::one(ring))}, *c_image);
    return MatrixRep2<OkElement>::with_prototype(OkElement::one(ring));
  }
  if (c_image) return MatrixRep2<OkElement>::with_conjugation(std::move(gens), *c_image);
  return MatrixRep2<OkElement>(std::move(gens));
}

MatrixRep2<OkElement> read_matrix_rep_file(const std::filesystem::path& path) {
  std::istringstream in(slurp(path));
  return read_matrix_rep(in, path.string());
}

void write_matrix_rep(std::ostream& out, const MatrixRep2<OkElement>& rho) {
  const RingParams r = rho.prototype().ring();
  out << r.p() << ' ' << r.e() << ' ' << r.precision() << ' ' << rho.generators() << '\n';
  for (int i = 1; i <= rho.generators(); ++i) {
    const auto& g = rho.generator(i);
    out << format_element(g.a) << ' ' << format_element(g.b) << ' ' << format_element(g.c) << ' '
        << format_element(g.d) << '\n';
  }
}

std::vector<InterpolationNode> read_nodes_file(const std::filesystem::path& path) {
  std::istringstream in(slurp(path));
  const std::string source = path.string();
  std::string line;
  int lineno = 0;
  if (!next_line(in, line, lineno)) fail(source, 0, "empty nodes file");
  const auto head = words(line);
  if (head.size() != 3) fail(source, lineno, "header needs 'p e N'");
  RingParams ring;
  try {
    ring = make_ring(to_int(head[0], "p"), to_int(head[1], "e"), to_int(head[2], "N"));
  } catch (const Error& e) {
    fail(source, lineno, e.what());
  }
  std::vector<InterpolationNode> nodes;
  while (next_line(in, line, lineno)) {
    const auto toks = element_tokens(line);
    if (toks.size() != 2) fail(source, lineno, "expected 'u value'");
    try {
      nodes.push_back({parse_element(ring, toks[0]), parse_k_element(ring, toks[1])});
    } catch (const Error& e) {
      fail(source, lineno, e.what());
    }
  }
  return nodes;
}

}  // namespace pf::io
