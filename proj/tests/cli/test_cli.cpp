#include <array>
#include <cstdio>
#include <sstream>
#include <sys/wait.h>

#include "cli.hpp"
#include "doctest.h"
#include "temp_dir.hpp"

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result pfam(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = pfcli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string data(const std::string& rel) { return std::string(PFAM_DATA_DIR) + "/" + rel; }

std::pair<int, std::string> shell(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 256> buf{};
  while (fgets(buf.data(), static_cast<int>(buf.size()), pipe) != nullptr) out += buf.data();
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("documented examples") {
  auto r = pfam({"invariants", "--series", data("series/cubic.series")});
  CHECK(r.code == 0);
  CHECK(r.out == "mu=0 lambda=3\n");
  r = pfam({"classical-points", "--prime", "3", "--k0", "2", "--radius-exp", "2", "--slope", "0", "--bound", "30"});
  CHECK(r.code == 0);
  CHECK(r.out == "2\n11\n20\n29\n");
  r = pfam({"classical-points", "--prime", "3", "--k0", "2", "--radius-exp", "2", "--bound", "30", "--closed"});
  CHECK(r.out == "2\n5\n8\n11\n14\n17\n20\n23\n26\n29\n");
  r = pfam({"--prime", "5", "classical-points", "--k0", "6", "--radius-exp", "1", "--slope", "5/2", "--bound", "30"});
  CHECK(r.out == "6\n11\n16\n21\n26\n");
}

TEST_CASE("exit codes") {
  CHECK(pfam({"frobnicate"}).code == 2);
  CHECK(pfam({}).code == 2);
  CHECK(pfam({"pseudo"}).code == 2);
  CHECK(pfam({"classical-points", "--k0", "2", "--radius-exp", "2", "--bound", "30"}).code == 2);
  const auto bad_flag = pfam({"classical-points", "--prime", "3", "--k0", "x", "--radius-exp", "2", "--bound", "3"});
  CHECK(bad_flag.code == 2);
  CHECK(bad_flag.err.find("--k0") != std::string::npos);
  CHECK(pfam({"--prime", "4", "classical-points", "--k0", "2", "--radius-exp", "2", "--bound", "30"}).code == 2);
  CHECK(pfam({"classical-points", "--prime", "3", "--k0", "2", "--radius-exp", "2", "--slope", "1/0", "--bound", "9"})
            .code == 2);
  CHECK(pfam({"invariants", "--series", data("series/cubic.series"), "--module", "x"}).code == 2);
  // Domain errors.
  CHECK(pfam({"invariants", "--series", "/nonexistent"}).code == 1);
  const auto nt = pfam({"invariants", "--module", data("modules/onevar.module")});
  CHECK(nt.code == 1);
  CHECK(nt.out.empty());
  CHECK(nt.err.find("NotTorsion") != std::string::npos);
  CHECK(pfam({"classical-points", "--prime", "3", "--k0", "2", "--radius-exp", "2", "--slope", "40", "--bound", "30"})
            .code == 1);
  const auto glue = pfam({"--prime", "3", "glue", "--x", "1", "--y", "2", "--u1", "3", "--u2", "6"});
  CHECK(glue.code == 1);
  CHECK(glue.out == "incompatible obstruction=0 required=1\n");
  CHECK(pfam({"help"}).code == 2);
  CHECK(pfam({"--help"}).code == 0);
}

TEST_CASE("subcommands on the sample data") {
  auto r = pfam({"wprep", "--series", data("series/cubic.series")});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("mu=0 lambda=3\n[distinguished]\n", 0) == 0);

  r = pfam({"evaluate", "--series", data("series/cubic.series"), "--k", "11"});
  CHECK(r.out == "value=45 tail_bound=none\n");
  r = pfam({"evaluate", "--series", data("series/cubic.series"), "--at", "(1)"});
  CHECK(r.out == "value=13 tail_bound=none\n");

  r = pfam({"specialize", "--module", data("modules/onevar.module"), "--k", "29"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("rank=2\nvanishing piece=0\n", 0) == 0);
  r = pfam({"specialize", "--module", data("modules/onevar.module"), "--u", "3"});
  CHECK(r.out.rfind("rank=1\n", 0) == 0);

  r = pfam({"sweep-lambda", "--module", data("modules/onevar.module"), "--radius-exp", "2", "--bound", "60"});
  CHECK(r.code == 0);
  CHECK(r.out.find("generic_lambda=1 exceptions=1 bound=4 respected=true\ncertificate k=29 char_value=0\n") !=
        std::string::npos);

  r = pfam({"mu-criterion", "--module", data("modules/mu_zero.module"), "--k", "11"});
  CHECK(r.out == "mu_zero=true\nk=11 mu=0\n");
  r = pfam({"mu-criterion", "--module", data("modules/mu_positive.module"), "--k", "11"});
  CHECK(r.out == "mu_zero=false\nk=11 mu=2\n");

  r = pfam({"pseudo", "check", "--rep", data("reps/two_gen.rep"), "--length", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("violations=0 status=ok") != std::string::npos);
  r = pfam({"pseudo", "reconstruct", "--rep", data("reps/two_gen.rep"), "--search-len", "2"});
  CHECK(r.out.rfind("sigma=g1 tau=g2 mu=0\n", 0) == 0);

  r = pfam({"interpolate", "--nodes", data("nodes/quadratic.nodes"), "--trunc-U", "4"});
  CHECK(r.out.rfind("power_bounded=false max_denominator=1", 0) == 0);

  r = pfam({"family", "interpolate", "--manifest", data("family/synthetic.manifest"), "--n", "2", "--trunc-U", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("n=2 power_bounded=true max_denominator=0 reproduces=true\n", 0) == 0);
  r = pfam({"family", "check-hyp", "--qexp", data("qexp/140B.qexp")});
  CHECK(r.out.find("slope=1\nsupersingular=true\nedixhoven_window=true") != std::string::npos);
  r = pfam({"family", "check-hyp", "--qexp", data("qexp/140B.qexp"), "--prime", "5"});
  CHECK(r.out.find("supersingular=false") != std::string::npos);
}

TEST_CASE("glue and bivariate specialisation") {
  pftest::TempDir tmp;
  auto r = pfam({"--prime", "3", "--precision", "10", "glue", "--x", "1", "--y", "4", "--u1", "3", "--u2", "6",
                 "--trunc-U", "4"});
  CHECK(r.code == 0);
  const auto series = tmp.write("g.series", r.out);
  r = pfam({"evaluate", "--series", series.string(), "--at", "6"});
  CHECK(r.out.rfind("value=4", 0) == 0);
  r = pfam({"specialize", "--module", data("modules/mu_positive.module"), "--k", "11"});
  CHECK(r.out == "free_rank=0\npiece=0 multiplicity=1 mu=0 lambda=1\npiece=1 multiplicity=2 mu=1 lambda=0\n");
  const auto free_mod = tmp.write("free.module", "1 2\n");
  r = pfam({"--prime", "3", "specialize", "--module", free_mod.string(), "--u", "3"});
  CHECK(r.out == "rank=2\n");
}

TEST_CASE("output is deterministic") {
  const std::vector<std::vector<std::string>> cmds{
      {"sweep-lambda", "--module", data("modules/onevar.module"), "--radius-exp", "2", "--bound", "100"},
      {"pseudo", "check", "--rep", data("reps/two_gen.rep"), "--length", "4"},
      {"family", "interpolate", "--manifest", data("family/synthetic.manifest"), "--n", "3"}};
  for (const auto& c : cmds) {
    const auto a = pfam(c), b = pfam(c);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("the installed binary") {
  const std::string bin = PFAM_BINARY;
  auto [code, out] = shell(bin + " classical-points --prime 3 --k0 2 --radius-exp 2 --slope 0 --bound 30");
  CHECK(code == 0);
  CHECK(out == "2\n11\n20\n29\n");
  std::tie(code, out) = shell(bin + " no-such-command 2>/dev/null");
  CHECK(code == 2);
  std::tie(code, out) = shell(bin + " invariants --series /nonexistent 2>/dev/null");
  CHECK(code == 1);
}
