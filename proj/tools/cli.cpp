#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "pfam/family_lab.hpp"
#include "pfam/io.hpp"
#include "pfam/iwasawa.hpp"
#include "pfam/pseudo_rep.hpp"
#include "pfam/weierstrass.hpp"

namespace pfcli {

namespace {

using namespace pf;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

const char* yes(bool b) { return b ? "true" : "false"; }

Rational parse_rational(const std::string& flag, const std::string& s) {
  const auto slash = s.find('/');
  auto num = [&](std::string_view t) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
      throw UsageError(flag + ": expected a rational, got '" + s + "'");
    }
    return v;
  };
  const std::string_view sv = s;
  const std::int64_t n = num(sv.substr(0, slash));
  const std::int64_t d = slash == std::string::npos ? 1 : num(sv.substr(slash + 1));
  if (d == 0) throw UsageError(flag + ": zero denominator");
  return {n, d};
}

struct Config {
  std::optional<std::uint32_t> prime;
  std::uint32_t ram_index = 1;
  int precision = 20;
  int trunc_u = kDefaultTruncation;
  int trunc_s = kDefaultTruncation;
  std::optional<RingParams> ring;

  // Ring from the global flags; UsageError when --prime is missing.
  RingParams need_ring() const {
    if (!ring) throw UsageError("--prime is required for this subcommand");
    return *ring;
  }
};

const FormalSeries& univariate(const io::SeriesFile& sf, const std::string& path) {
  const auto* f = std::get_if<FormalSeries>(&sf.series);
  if (f == nullptr) throw Error(ErrorCode::InvalidArgument, path + ": expected a one-variable series");
  return *f;
}

void print_series(std::ostream& out, const FormalSeries& f) { io::write_series(out, f); }

io::ModuleFile load_module(const std::string& path, const Config& cfg) {
  std::optional<ModulePresentation> fallback;
  if (cfg.ring) {
    ModulePresentation m;
    m.ring = *cfg.ring;
    m.truncation_u = cfg.trunc_u;
    m.truncation_s = cfg.trunc_s;
    fallback = m;
  }
  return io::read_module_file(path, fallback);
}

OkElement point_for(const io::ModuleFile& mf, const std::optional<std::int64_t>& k, const std::string& u) {
  if (k) return weight_coordinate(mf.module.ring, *k, mf.chart);
  if (u.empty()) throw UsageError("one of --k or --u is required");
  return io::parse_element(mf.module.ring, u);
}

void print_specialization(std::ostream& out, const Specialization& s) {
  out << "rank=" << s.rank << '\n';
  for (auto i : s.vanishing) out << "vanishing piece=" << i << '\n';
  for (const auto& fp : s.finite_parts) {
    out << "finite piece=" << fp.piece << " order=" << io::format_element(fp.order)
        << " length=" << fp.length_digits << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& final_out, std::ostream& err) {
  // Subcommands write here; the text is released only after the command ends.
  std::ostringstream out;
  CLI::App app{"p-adic families toolkit", "pfam"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--prime", cfg.prime, "residue characteristic p");
  app.add_option("--ram-index", cfg.ram_index, "ramification index e");
  app.add_option("--precision", cfg.precision, "absolute precision N in pi-digits");
  app.add_option("--trunc-U", cfg.trunc_u, "U-truncation");
  app.add_option("--trunc-S", cfg.trunc_s, "S-truncation");

  std::function<void()> action;
  std::string series_path, module_path, rep_path, nodes_path, manifest_path, qexp_path;
  std::string at, u_text, slope_text = "0", x_text, y_text, u1_text, u2_text;
  std::optional<std::int64_t> k_opt;
  std::int64_t k0 = 2, bound = 0, n_index = 0;
  int radius_exp = 1, length = 5, search_len = 3;
  bool closed = false;
  std::vector<std::int64_t> sample_ks;

  auto* wprep = app.add_subcommand("wprep", "Weierstrass preparation of a series");
  wprep->add_option("--series", series_path, "series file")->required();
  wprep->callback([&] {
    action = [&] {
      const auto sf = io::read_series_file(series_path);
      const auto w = weierstrass_prep(univariate(sf, series_path));
      out << "mu=" << fmt(w.mu) << " lambda=" << w.lambda << '\n';
      out << "[distinguished]\n";
      print_series(out, w.distinguished);
      out << "[unit]\n";
      print_series(out, w.unit);
    };
  });

  auto* inv = app.add_subcommand("invariants", "mu and lambda of a series or module");
  auto* inv_group = inv->add_option_group("input");
  inv_group->add_option("--series", series_path, "series file");
  inv_group->add_option("--module", module_path, "module file");
  inv_group->require_option(1);
  inv->callback([&] {
    action = [&] {
      if (!series_path.empty()) {
        const auto sf = io::read_series_file(series_path);
        const auto& f = univariate(sf, series_path);
        const Rational mu = mu_invariant(f);
        const int lambda = lambda_invariant(f);
        out << "mu=" << fmt(mu) << " lambda=" << lambda << '\n';
      } else {
        const auto mf = load_module(module_path, cfg);
        const Rational mu = mu_of_module(mf.module);
        const int lambda = lambda_of_module(mf.module);
        out << "mu=" << fmt(mu) << " lambda=" << lambda << '\n';
      }
    };
  });

  auto* eval = app.add_subcommand("evaluate", "evaluate a series at a point");
  eval->add_option("--series", series_path, "series file")->required();
  auto* eval_pt = eval->add_option_group("point");
  eval_pt->add_option("--at", at, "element");
  eval_pt->add_option("--k", k_opt, "classical weight (u = (k - k0) / e0)");
  eval_pt->require_option(1);
  eval->callback([&] {
    action = [&] {
      const auto sf = io::read_series_file(series_path);
      const auto& f = univariate(sf, series_path);
      const OkElement u = k_opt ? weight_coordinate(f.ring(), *k_opt, sf.chart) : io::parse_element(f.ring(), at);
      if (!f.is_integral()) {
        out << "value=" << io::format_k_element(f.evaluate_k(u)) << '\n';
        return;
      }
      const auto ev = f.evaluate(u);
      out << "value=" << io::format_element(ev.value) << " tail_bound="
          << (ev.tail_bound_digits < 0 ? std::string("none") : std::to_string(ev.tail_bound_digits)) << '\n';
    };
  });

  auto* interp = app.add_subcommand("interpolate", "Newton interpolation through nodes");
  interp->add_option("--nodes", nodes_path, "nodes file")->required();
  interp->callback([&] {
    action = [&] {
      const auto nodes = io::read_nodes_file(nodes_path);
      const auto res = newton_interpolate(nodes, cfg.trunc_u);
      const auto rep = power_bounded_check(res.polynomial);
      out << "power_bounded=" << yes(rep.power_bounded) << " max_denominator=" << rep.max_denominator_digits
          << " min_precision=" << res.min_precision << '\n';
      print_series(out, res.polynomial);
    };
  });

  auto* cp = app.add_subcommand("classical-points", "classical weights in a disk below a slope");
  cp->add_option("--k0", k0, "disk centre")->required();
  cp->add_option("--radius-exp", radius_exp, "m, radius p^-m")->required();
  cp->add_option("--slope", slope_text, "slope bound alpha");
  cp->add_option("--bound", bound, "largest weight")->required();
  cp->add_flag("--closed", closed, "closed disk v(k - k0) >= m - 1");
  cp->callback([&] {
    action = [&] {
      if (!cfg.prime) throw UsageError("--prime is required for classical-points");
      const auto set = classical_points(*cfg.prime, k0, radius_exp, parse_rational("--slope", slope_text), bound,
                                        closed ? DiskKind::Closed : DiskKind::Open);
      for (auto k : set.points) out << k << '\n';
    };
  });

  auto* pseudo = app.add_subcommand("pseudo", "pseudo-representations");
  pseudo->require_subcommand(1);
  auto* pcheck = pseudo->add_subcommand("check", "check the defining relations");
  pcheck->add_option("--rep", rep_path, "matrix-rep file")->required();
  pcheck->add_option("--length", length, "total word length bound")->check(CLI::Range(0, 8));
  pcheck->callback([&] {
    action = [&] {
      const auto rho = io::read_matrix_rep_file(rep_path);
      const auto pi = pseudo_from_matrix(rho);
      const auto rep = check_wiles_relations(pi, exhaustive_sample(rho.generators(), length));
      out << "checks=" << rep.checks << " violations=" << rep.violations.size() << " status="
          << (rep.ok() ? "ok" : "violated") << '\n';
      for (std::size_t i = 0; i < rep.violations.size() && i < 10; ++i) {
        out << "violation " << rep.violations[i].relation;
        for (const auto& w : rep.violations[i].witness) out << ' ' << w.to_string();
        out << '\n';
      }
    };
  });
  auto* precon = pseudo->add_subcommand("reconstruct", "rebuild a matrix representation");
  precon->add_option("--rep", rep_path, "matrix-rep file")->required();
  precon->add_option("--search-len", search_len, "word length bound for sigma, tau")->check(CLI::Range(0, 6));
  precon->callback([&] {
    action = [&] {
      const auto rho = io::read_matrix_rep_file(rep_path);
      const auto rec = reconstruct(pseudo_from_matrix(rho), search_len);
      out << "sigma=" << rec.sigma.to_string() << " tau=" << rec.tau.to_string() << " mu=" << fmt(rec.mu) << '\n';
      io::write_matrix_rep(out, rec.to_matrix_rep());
    };
  });

  auto* glue = app.add_subcommand("glue", "degree <= 1 series with prescribed values at two points");
  glue->add_option("--x", x_text, "value at u1")->required();
  glue->add_option("--y", y_text, "value at u2")->required();
  glue->add_option("--u1", u1_text, "first point")->required();
  glue->add_option("--u2", u2_text, "second point")->required();
  glue->callback([&] {
    action = [&] {
      const RingParams r = cfg.need_ring();
      try {
        const auto f = glue_crt(io::parse_element(r, x_text), io::parse_element(r, y_text),
                                io::parse_element(r, u1_text), io::parse_element(r, u2_text), cfg.trunc_u);
        print_series(out, f);
      } catch (const IncompatibleGlue& e) {
        out << "incompatible obstruction=" << e.obstruction_digits() << " required=" << e.required_digits() << '\n';
        throw;
      }
    };
  });

  auto* spec = app.add_subcommand("specialize", "reduce a module modulo P_k");
  spec->add_option("--module", module_path, "module file")->required();
  auto* spec_pt = spec->add_option_group("point");
  spec_pt->add_option("--k", k_opt, "classical weight");
  spec_pt->add_option("--u", u_text, "point u_k as an element");
  spec_pt->require_option(1);
  spec->callback([&] {
    action = [&] {
      const auto mf = load_module(module_path, cfg);
      const OkElement u = point_for(mf, k_opt, u_text);
      if (mf.module.vars == 1) {
        print_specialization(out, specialize_at(mf.module, u));
        return;
      }
      const auto s = specialize_bivariate(mf.module, u);
      out << "free_rank=" << s.free_rank << '\n';
      for (std::size_t i = 0; i < s.torsion.size(); ++i) {
        const auto& g = std::get<FormalSeries>(s.torsion[i].g);
        out << "piece=" << i << " multiplicity=" << s.torsion[i].multiplicity;
        if (g.is_zero()) {
          out << " zero\n";
        } else {
          out << " mu=" << fmt(mu_invariant(g)) << " lambda=" << lambda_invariant(g) << '\n';
        }
      }
    };
  });

  auto* sweep = app.add_subcommand("sweep-lambda", "specialised rank over classical weights");
  sweep->add_option("--module", module_path, "module file")->required();
  sweep->add_option("--radius-exp", radius_exp, "m, radius p^-m")->required();
  sweep->add_option("--slope", slope_text, "slope bound alpha");
  sweep->add_option("--bound", bound, "largest weight")->required();
  sweep->add_flag("--closed", closed, "closed disk");
  sweep->callback([&] {
    action = [&] {
      const auto mf = load_module(module_path, cfg);
      const auto pts = classical_points(mf.module.ring.p(), mf.chart.center, radius_exp,
                                        parse_rational("--slope", slope_text), bound,
                                        closed ? DiskKind::Closed : DiskKind::Open);
      const auto rep = lambda_constancy_sweep(mf.module, pts, mf.chart);
      for (const auto& p : rep.points) out << "k=" << p.k << " lambda=" << p.lambda << '\n';
      out << "generic_lambda=" << rep.generic_lambda << " exceptions=" << rep.exceptional.size()
          << " bound=" << rep.exception_bound << " respected=" << yes(rep.bound_respected) << '\n';
      for (const auto& c : rep.certificates) {
        out << "certificate k=" << c.k << " char_value=" << io::format_element(c.value_at_point) << '\n';
      }
    };
  });

  auto* muc = app.add_subcommand("mu-criterion", "mu = 0 test for a two-variable module");
  muc->add_option("--module", module_path, "module file")->required();
  muc->add_option("--k", sample_ks, "weights at which to specialise");
  muc->callback([&] {
    action = [&] {
      const auto mf = load_module(module_path, cfg);
      const bool crit = mu_zero_criterion(mf.module);
      out << "mu_zero=" << yes(crit) << '\n';
      for (auto k : sample_ks) {
        const Rational mu = mu_of_specialization(mf.module, weight_coordinate(mf.module.ring, k, mf.chart));
        out << "k=" << k << " mu=" << fmt(mu) << '\n';
      }
    };
  });

  auto* fam = app.add_subcommand("family", "families of q-expansions");
  fam->require_subcommand(1);
  auto* finterp = fam->add_subcommand("interpolate", "interpolate a_n across sampled weights");
  finterp->add_option("--manifest", manifest_path, "family manifest")->required();
  finterp->add_option("--n", n_index, "coefficient index")->required()->check(CLI::PositiveNumber);
  finterp->callback([&] {
    action = [&] {
      const auto samples = load_family_manifest(manifest_path);
      const auto res = interpolate_family(samples, n_index, cfg.trunc_u);
      out << "n=" << n_index << " power_bounded=" << yes(res.integrality.power_bounded)
          << " max_denominator=" << res.integrality.max_denominator_digits
          << " reproduces=" << yes(res.reproduces_samples) << '\n';
      if (!res.integrality.power_bounded) {
        out << "offending_indices=";
        for (std::size_t i = 0; i < res.integrality.offending_indices.size(); ++i) {
          out << (i ? "," : "") << res.integrality.offending_indices[i];
        }
        out << " suspects=";
        for (std::size_t i = 0; i < res.suspects.size(); ++i) out << (i ? "," : "") << res.suspects[i];
        out << '\n';
      }
      print_series(out, res.interpolant.polynomial);
    };
  });
  auto* fhyp = fam->add_subcommand("check-hyp", "supersingularity and weight-window checks");
  fhyp->add_option("--qexp", qexp_path, "q-expansion file")->required();
  fhyp->callback([&] {
    action = [&] {
      const auto f = ingest_qexp(qexp_path);
      const std::uint32_t p = cfg.prime.value_or(f.p);
      const Rational& ap = f.coefficient(p);
      out << "label=" << f.label << " p=" << p << " k=" << f.weight << '\n';
      if (ap == Rational(0)) {
        out << "slope=inf\n";
      } else {
        out << "slope=" << rational_valuation(ap, p) << '\n';
      }
      out << "supersingular=" << yes(check_supersingular(f, p)) << '\n';
      const auto w = check_edixhoven_window(f, p);
      out << "edixhoven_window=" << yes(w.holds) << " reason=\"" << w.reason << "\"\n";
      const auto seed = check_seed_condition(f, p);
      out << "seed_condition=" << (seed ? (*seed ? "holds" : "fails") : "undetermined") << '\n';
      for (const auto& fact : f.facts) out << "fact " << fact << '\n';
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    final_out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    final_out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }
  if (cfg.prime) {
    try {
      cfg.ring = RingParams::make(*cfg.prime, cfg.ram_index, cfg.precision);
    } catch (const Error& e) {
      err << "usage error: --prime/--ram-index/--precision: " << e.what() << '\n';
      return 2;
    }
  }
  if (cfg.trunc_u < 1 || cfg.trunc_s < 1) {
    err << "usage error: --trunc-U and --trunc-S must be positive\n";
    return 2;
  }
  if (!action) {
    err << "usage error: no subcommand\n";
    return 2;
  }
  try {
    action();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    final_out << out.str();
    err << "error: " << e.what() << '\n';
    return 1;
  }
  final_out << out.str();
  return 0;
}

}  // namespace pfcli
