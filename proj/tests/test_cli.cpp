#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "ringstab/report.hpp"
#include "ringstab/specfile.hpp"

using namespace ringstab;

extern std::string g_test_bin_dir;  // set from argv[0] by the test main

namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_file(const std::string& tag) {
  static int counter = 0;
  return fs::temp_directory_path() /
         ("ringstab_test_" + std::to_string(::getpid()) + "_" + tag + "_" +
          std::to_string(counter++));
}

fs::path write_spec(const std::string& text) {
  fs::path p = temp_file("spec");
  std::ofstream out(p, std::ios::binary);
  out << text;
  return p;
}

struct RunResult {
  int exit_code = -1;
  std::string out, err;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  fs::path outp = temp_file("stdout"), errp = temp_file("stderr");
  std::string cmd = env + "\"" + g_test_bin_dir + "/ringstab\" " + args +
                    " > " + outp.string() + " 2> " + errp.string();
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(outp);
  r.err = slurp(errp);
  fs::remove(outp);
  fs::remove(errp);
  return r;
}

const char* kZ2Spec = "n = 3\n[ring z2]\nfamily = zmod\nm = 2\n";
const char* kZ4Spec = "n = 3\n[ring z4]\nfamily = zmod\nm = 4\n";
const char* kZ6Spec = "n = 3\n[ring z6]\nfamily = zmod\nm = 6\n";

}  // namespace

TEST_CASE("spec parsing accepts every ring family") {
  std::string text =
      "# defaults\n"
      "n = 3\n"
      "cap = 100000\n"
      "\n"
      "[ring f2]\n"
      "family = zmod\n"
      "m = 2\n"
      "\n"
      "[ring f2x]\n"
      "family = trunc_poly\n"
      "base = f2\n"
      "k = 2\n"
      "\n"
      "[ring m2]\n"
      "family = matrix\n"
      "base = f2\n"
      "k = 2\n"
      "n = 2\n"
      "\n"
      "[ring ut2]\n"
      "family = upper_triangular\n"
      "base = f2\n"
      "k = 2\n"
      "cap = 5000\n"
      "\n"
      "[ring z3]\n"
      "family = zmod\n"
      "m = 3\n"
      "\n"
      "[ring prod]\n"
      "family = product\n"
      "parts = f2, z3\n"
      "\n"
      "[ring bool4]\n"
      "family = explicit\n"
      "order = 4\n"
      "add = 0,1,2,3, 1,0,3,2, 2,3,0,1, 3,2,1,0\n"
      "mul = 0,0,0,0, 0,1,0,1, 0,0,2,2, 0,1,2,3\n";
  SpecFile sf = parse_ring_spec_text(text);
  CHECK(sf.default_n == 3);
  CHECK(sf.default_cap == 100000);
  REQUIRE(sf.rings.size() == 7);
  CHECK(sf.find("f2") != nullptr);
  CHECK(sf.find("nope") == nullptr);
  CHECK(sf.find("f2")->ring->order() == 2);
  CHECK(sf.find("f2x")->ring->order() == 4);
  CHECK(sf.find("m2")->ring->order() == 16);
  CHECK(sf.find("ut2")->ring->order() == 8);
  CHECK(sf.find("prod")->ring->order() == 6);
  CHECK(sf.find("bool4")->ring->order() == 4);
  // per-ring overrides and inherited defaults
  CHECK(sf.find("m2")->n == 2);
  CHECK(sf.find("f2x")->n == 3);
  CHECK(sf.find("ut2")->cap == 5000);
  CHECK(sf.find("f2x")->cap == 100000);
  // the truncated polynomial generator squares to zero: code 2 is x
  const Ring& fx = sf.find("f2x")->ring;
  CHECK(fx->mul(2, 2) == fx->zero());
}

TEST_CASE("spec parse errors carry 1-based locations") {
  // unknown key inside a section (line 3)
  try {
    parse_ring_spec_text("[ring a]\nfamily = zmod\nbogus = 1\nm = 2\n");
    FAIL("expected SpecParseError");
  } catch (const SpecParseError& e) {
    CHECK(e.line == 3);
    CHECK(e.col >= 1);
  }
  // unknown top-level key
  CHECK_THROWS_AS(parse_ring_spec_text("shiny = yes\n"), SpecParseError);
  // duplicate ring name
  CHECK_THROWS_AS(parse_ring_spec_text("[ring a]\nfamily = zmod\nm = 2\n"
                                       "[ring a]\nfamily = zmod\nm = 3\n"),
                  SpecParseError);
  // unknown family
  CHECK_THROWS_AS(parse_ring_spec_text("[ring a]\nfamily = galaxy\nm = 2\n"),
                  SpecParseError);
  // missing family parameter
  CHECK_THROWS_AS(parse_ring_spec_text("[ring a]\nfamily = zmod\n"),
                  SpecParseError);
  // malformed section header
  CHECK_THROWS_AS(parse_ring_spec_text("[ring a\nfamily = zmod\nm = 2\n"),
                  SpecParseError);
  // base ring not declared before use
  CHECK_THROWS_AS(
      parse_ring_spec_text("[ring a]\nfamily = trunc_poly\nbase = q\nk = 2\n"),
      SpecParseError);
  // explicit table with the wrong number of entries
  CHECK_THROWS_AS(parse_ring_spec_text("[ring a]\nfamily = explicit\n"
                                       "order = 2\nadd = 0,1,1\n"
                                       "mul = 0,0,0,1\n"),
                  SpecParseError);
  // malformed number
  CHECK_THROWS_AS(parse_ring_spec_text("[ring a]\nfamily = zmod\nm = two\n"),
                  SpecParseError);
  // table that violates the ring axioms (non-associative mul)
  CHECK_THROWS_AS(parse_ring_spec_text("[ring a]\nfamily = explicit\n"
                                       "order = 2\nadd = 0,1,1,0\n"
                                       "mul = 0,1,1,1\n"),
                  RingstabError);
}

TEST_CASE("report JSON round trip is lossless and canonical") {
  Report rep;
  rep.version = "9.9.9";
  SuiteResult s;
  s.suite = "identities";
  s.ring_name = "z4";
  s.ring_descriptor = "zmod(4)";
  s.n = 3;
  CheckResult a;
  a.name = "alpha";
  a.detail = "fine";
  a.data["count"] = "12";
  CheckResult b;
  b.name = "beta";
  b.status = Status::fail;
  b.witnesses = {"1,0,0,0,1,0,0,0,1"};
  CheckResult c;
  c.name = "gamma";
  c.status = Status::unverified;
  s.checks = {a, b, c};
  rep.suites = {s};

  CHECK(s.status() == Status::fail);  // fail dominates unverified
  CHECK(rep.status() == Status::fail);
  CHECK(report_exit_code(rep) == 1);

  std::string j = report_to_json(rep);
  Report back = report_from_json(j);
  CHECK(back == rep);
  CHECK(report_to_json(back) == j);  // canonical: serialize is a fixed point

  auto parsed = nlohmann::json::parse(j);
  CHECK(parsed.at("tool") == "ringstab");
  CHECK(parsed.at("schema_version") == 1);
  CHECK(parsed.at("status") == "fail");
  CHECK(parsed.at("checks_passed") == 1);
  CHECK(parsed.at("checks_failed") == 1);
  CHECK(parsed.at("checks_unverified") == 1);
  CHECK(parsed.at("suites").size() == 1);

  // exit codes for the other two aggregate states
  rep.suites[0].checks = {a};
  CHECK(report_exit_code(rep) == 0);
  rep.suites[0].checks = {a, c};
  CHECK(rep.status() == Status::unverified);
  CHECK(report_exit_code(rep) == 2);

  // text rendering mentions the suite and the per-check statuses
  Timings t = {{"identities z4", 0.25}};
  std::string text = report_to_text(rep, &t);
  CHECK(text.find("identities") != std::string::npos);
  CHECK(text.find("0.25") != std::string::npos);

  CHECK(status_from_name("pass") == Status::pass);
  CHECK(status_from_name("fail") == Status::fail);
  CHECK(status_from_name("unverified") == Status::unverified);
  CHECK_THROWS_AS(status_from_name("maybe"), RingstabError);

  Ring r = FiniteRing::zmod(2);
  CHECK(encode_matrix(Mat::identity(r, 3)) == "1,0,0,0,1,0,0,0,1");
}

TEST_CASE("cli: passing run emits schema-valid json and exit 0") {
  fs::path spec = write_spec(kZ2Spec);
  RunResult r = run_cli("identities --spec " + spec.string());
  CHECK(r.exit_code == 0);
  CHECK(r.err.empty());
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("tool") == "ringstab");
  CHECK(j.at("status") == "pass");
  CHECK(j.at("checks_failed") == 0);
  CHECK(j.at("suites")[0].at("suite") == "identities");
  CHECK(j.at("suites")[0].at("ring") == "z2");
  fs::remove(spec);
}

TEST_CASE("cli: identical invocations produce byte-identical output") {
  fs::path spec = write_spec(kZ4Spec);
  std::string args = "identities --spec " + spec.string();
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
  fs::remove(spec);
}

TEST_CASE("cli: --out redirects the payload away from stdout") {
  fs::path spec = write_spec(kZ2Spec);
  fs::path out = temp_file("payload");
  RunResult r = run_cli("identities --spec " + spec.string() + " --out " +
                        out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  std::string payload = slurp(out);
  auto j = nlohmann::json::parse(payload);
  CHECK(j.at("status") == "pass");
  fs::remove(out);
  fs::remove(spec);
}

TEST_CASE("cli: text format renders a human summary") {
  fs::path spec = write_spec(kZ2Spec);
  RunResult r = run_cli("identities --spec " + spec.string() +
                        " --format text");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("identities") != std::string::npos);
  CHECK(r.out.find("PASS") != std::string::npos);
  fs::remove(spec);
}

TEST_CASE("cli: --ideal restricts a suite to one ideal") {
  fs::path spec = write_spec(kZ6Spec);
  RunResult r = run_cli("lemma1 --spec " + spec.string() + " --ideal 2");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("status") == "pass");
  // exactly one relative subgroup comparison: the selected ideal
  CHECK(j.at("suites")[0].at("checks").size() == 1);
  // a code outside any proper ideal selection still parses; a non-element
  // must be rejected as a usage error
  RunResult bad = run_cli("lemma1 --spec " + spec.string() + " --ideal 9");
  CHECK(bad.exit_code == 3);
  fs::remove(spec);
}

TEST_CASE("cli: usage and parse failures exit 3") {
  RunResult nospec = run_cli("identities");
  CHECK(nospec.exit_code == 3);

  fs::path spec = write_spec(kZ2Spec);
  RunResult badsuite = run_cli("wibble --spec " + spec.string());
  CHECK(badsuite.exit_code == 3);
  CHECK(!badsuite.err.empty());

  RunResult badn = run_cli("lemma1 --spec " + spec.string() + " --n 2");
  CHECK(badn.exit_code == 3);  // dimension 2 only supports the identities
  RunResult okn = run_cli("identities --spec " + spec.string() + " --n 2");
  CHECK(okn.exit_code == 0);

  RunResult badfmt = run_cli("identities --spec " + spec.string() +
                             " --format yaml");
  CHECK(badfmt.exit_code == 3);
  fs::remove(spec);

  fs::path garbage = write_spec("this is not a spec\n");
  RunResult g = run_cli("identities --spec " + garbage.string());
  CHECK(g.exit_code == 3);
  CHECK(!g.err.empty());
  fs::remove(garbage);

  RunResult missing = run_cli("identities --spec /nonexistent/file.spec");
  CHECK(missing.exit_code == 3);
}

TEST_CASE("cli: cap environment override and unverified exit code") {
  fs::path spec = write_spec(kZ4Spec);
  // a cap too small to enumerate the invertible group: commutator checks
  // degrade to unverified, exit code 2
  RunResult tiny = run_cli("commutator --spec " + spec.string(),
                           "RINGSTAB_CAP=10 ");
  CHECK(tiny.exit_code == 2);
  auto j = nlohmann::json::parse(tiny.out);
  CHECK(j.at("status") == "unverified");
  CHECK(j.at("checks_failed") == 0);

  // an explicit --cap wins over the environment
  RunResult big = run_cli("commutator --spec " + spec.string() +
                          " --cap 4194304",
                          "RINGSTAB_CAP=10 ");
  CHECK(big.exit_code == 0);

  // malformed environment value is a usage error
  RunResult bad = run_cli("identities --spec " + spec.string(),
                          "RINGSTAB_CAP=abc ");
  CHECK(bad.exit_code == 3);
  fs::remove(spec);
}

TEST_CASE("cli: --version and --help exit cleanly") {
  RunResult v = run_cli("--version");
  CHECK(v.exit_code == 0);
  CHECK(v.out.find("1.0.0") != std::string::npos);
  RunResult h = run_cli("--help");
  CHECK(h.exit_code == 0);
  CHECK(h.out.find("--spec") != std::string::npos);
}
