#include "dml/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "dml/corpus.hpp"
#include "dml/report.hpp"
#include "doctest.h"

using namespace dml;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args, std::string* out = nullptr) {
  const char* bin = std::getenv("DMLCHECK_BIN");
  REQUIRE_MESSAGE(bin, "DMLCHECK_BIN not set");
  std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
  if (out) {
    cmd = std::string(bin) + " " + args + " 2>/dev/null > /tmp/dmlcheck_out.txt";
    int rc = std::system(cmd.c_str());
    *out = slurp("/tmp/dmlcheck_out.txt");
    return WEXITSTATUS(rc);
  }
  int rc = std::system((cmd + " > /dev/null").c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("lattice documents round trip") {
  for (const FiniteLattice& L :
       {divisor_lattice(12), powerset(3), pentagon_n5(), chain(4), kite()}) {
    std::ostringstream out;
    write_lattice_doc(out, L);
    std::istringstream in(out.str());
    FiniteLattice back = read_lattice_doc(in);
    CHECK(back.size() == L.size());
    CHECK(back.labels() == L.labels());
    CHECK(back.cover_pairs() == L.cover_pairs());
    CHECK(back.leq_table() == L.leq_table());
  }
}

TEST_CASE("parse errors carry line numbers") {
  std::istringstream missing("lattice\nelements 2\nlabels 0\ncovers\nend\n");
  try {
    read_lattice_doc(missing);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }

  std::istringstream unknown("lattice\nelements 2\nlabels 0 1\ncovers\n0 2\nend\n");
  CHECK_THROWS_AS(read_lattice_doc(unknown), ParseError);

  std::istringstream junk("widget\n");
  CHECK_THROWS_AS(validate_document(junk), ParseError);
}

TEST_CASE("quantale documents") {
  std::string text =
      "quantale\n"
      "elements 4\n"
      "labels 0 a b 1\n"
      "covers\n"
      "0 a\n0 b\na 1\nb 1\n"
      "product\n"
      "0 0 0 0\n"
      "0 a 0 a\n"
      "0 0 b b\n"
      "0 a b 1\n"
      "end\n";
  std::istringstream in(text);
  Quantale Q = read_quantale_doc(in);
  CHECK(Q.size() == 4);
  CHECK(Q.semiprime());

  std::ostringstream out;
  write_quantale_doc(out, Q);
  std::istringstream in2(out.str());
  Quantale Q2 = read_quantale_doc(in2);
  CHECK(Q2.product_table() == Q.product_table());

  // a product escaping below the meet is rejected at validation
  std::string bad =
      "quantale\n"
      "elements 3\n"
      "labels 0 m 1\n"
      "covers\n"
      "0 m\nm 1\n"
      "product\n"
      "0 0 0\n"
      "0 1 m\n"
      "0 m 1\n"
      "end\n";
  std::istringstream inbad(bad);
  CHECK_THROWS_AS(read_quantale_doc(inbad), ValidationError);
}

TEST_CASE("ring and module documents") {
  auto f2 = ring_Fp(2);
  REQUIRE(f2.ok());
  std::ostringstream out;
  write_ring_doc(out, f2.value());
  std::istringstream in(out.str());
  FiniteRing back = read_ring_doc(in);
  CHECK(back.size() == 2);
  CHECK(back.one() == 1);

  auto z4 = module_regular(std::make_shared<const FiniteRing>(
      [] {
        auto r = ring_Zn(4);
        REQUIRE(r.ok());
        return std::move(r).value();
      }()));
  REQUIRE(z4.ok());
  std::ostringstream mout;
  write_module_doc(mout, z4.value());
  std::istringstream min(mout.str());
  FiniteModule mback = read_module_doc(min);
  CHECK(mback.size() == 4);
  CHECK(mback.submodules().size() == 3);

  std::istringstream vin(mout.str());
  CHECK(validate_document(vin).substr(0, 9) == "ok module");
}

TEST_CASE("corpus parsing") {
  std::istringstream ok("# demo\nentry a ring Z6\nentry b ring T2(F2)\n");
  auto entries = parse_corpus(ok);
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].id == "a");
  BuiltEntry built = build_entry(entries[0], Bounds{}, ".");
  REQUIRE(built.module.has_value());
  CHECK(built.module->size() == 6);
  BuiltEntry built2 = build_entry(entries[1], Bounds{}, ".");
  CHECK(built2.module->size() == 8);

  std::istringstream dup("entry a ring Z6\nentry a ring Z4\n");
  CHECK_THROWS_AS(parse_corpus(dup), ParseError);

  std::istringstream badkind("entry a widget Z6\n");
  CHECK_THROWS_AS(parse_corpus(badkind), ParseError);

  std::istringstream badexpr("entry a ring Q8\n");
  auto e3 = parse_corpus(badexpr);
  CHECK_THROWS_AS(build_entry(e3[0], Bounds{}, "."), ParseError);

  std::istringstream pins("entry a ring Z6 expect semiprime=true\n");
  auto e4 = parse_corpus(pins);
  CHECK(e4[0].expected.at("semiprime") == true);
}

TEST_CASE("builtin corpus builds and its pins hold") {
  const auto& entries = builtin_corpus();
  CHECK(entries.size() >= 20);
  auto reports = run_harnesses(entries, Bounds{}, HarnessSelection{}, 2, ".");
  for (const auto& r : reports) {
    CAPTURE(r.id);
    CHECK(!r.skipped);
    CHECK(!r.build_error);
    CHECK(r.disagreements.empty());
    CHECK(r.pin_failures.empty());
  }
  CHECK(report_exit_code(reports) == 0);
}

TEST_CASE("stable report sections are byte identical across runs and jobs") {
  const auto& entries = builtin_corpus();
  auto r1 = run_harnesses(entries, Bounds{}, HarnessSelection{}, 1, ".");
  auto r2 = run_harnesses(entries, Bounds{}, HarnessSelection{}, 4, ".");
  CHECK(stable_report_text(r1, "builtin") == stable_report_text(r2, "builtin"));
}

TEST_CASE("pinned expectations gate the exit code") {
  std::istringstream wrong("entry z6 ring Z6 expect semiprime=false\n");
  auto entries = parse_corpus(wrong);
  auto reports = run_harnesses(entries, Bounds{}, HarnessSelection{}, 1, ".");
  REQUIRE(reports.size() == 1);
  CHECK(!reports[0].pin_failures.empty());
  CHECK(report_exit_code(reports) == 1);
}

TEST_CASE("resource bounds skip entries without failing the run") {
  std::istringstream in("entry big ring Z12\n");
  auto entries = parse_corpus(in);
  Bounds small;
  small.max_module_order = 8;
  auto reports = run_harnesses(entries, small, HarnessSelection{}, 1, ".");
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].skipped);
  CHECK(reports[0].skip_reason.find("module") != std::string::npos);
  CHECK(report_exit_code(reports) == 0);
}

TEST_CASE("shipped example corpus is clean") {
  const char* src = std::getenv("DMLCHECK_SOURCE_DIR");
  if (!src) return;
  std::string dir = std::string(src) + "/data";
  std::ifstream in(dir + "/example.corpus");
  REQUIRE(in.good());
  auto entries = parse_corpus(in);
  CHECK(entries.size() == 6);
  auto reports = run_harnesses(entries, Bounds{}, HarnessSelection{}, 2, dir);
  for (const auto& r : reports) {
    CAPTURE(r.id);
    CHECK(r.disagreements.empty());
    CHECK(r.pin_failures.empty());
  }
  // the document-loaded quantale is the De Morgan failure case
  bool found = false;
  for (const auto& r : reports)
    if (r.id == "vee") {
      found = true;
      CHECK(r.predicates.at("dml") == false);
      CHECK(r.predicates.at("semiprime") == true);
    }
  CHECK(found);
}

TEST_CASE("bounds specs") {
  Bounds b;
  b.apply_spec("module=32,ring=8,homcap=4096");
  CHECK(b.max_module_order == 32);
  CHECK(b.max_ring_order == 8);
  CHECK(b.max_hom_candidates == 4096);
  CHECK_THROWS_AS(b.apply_spec("module"), std::invalid_argument);
  CHECK_THROWS_AS(b.apply_spec("widget=3"), std::invalid_argument);
  CHECK_THROWS_AS(b.apply_spec("module=-1"), std::invalid_argument);
}

TEST_CASE("dot export shape") {
  std::string dot = lattice_dot(divisor_lattice(6));
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("\"(2)\"") != std::string::npos);
  // the diamond has four covers
  int edges = 0;
  for (size_t p = dot.find("->"); p != std::string::npos; p = dot.find("->", p + 1))
    ++edges;
  CHECK(edges == 4);
  CHECK(lattice_dot(divisor_lattice(6)) == dot);  // deterministic
}

TEST_CASE("cli end to end") {
  if (!std::getenv("DMLCHECK_BIN")) return;  // library-only contexts

  CHECK(run_cli("list-builtins") == 0);

  std::string out1, out2;
  CHECK(run_cli("run --no-timings --jobs 2", &out1) == 0);
  CHECK(run_cli("run --no-timings --jobs 1", &out2) == 0);
  CHECK(out1 == out2);
  CHECK(out1.find("entry z6") != std::string::npos);

  // corpus with a failing pin exits 1
  std::ofstream bad("/tmp/dml_bad.corpus");
  bad << "entry z4 ring Z4 expect semiprime=true\n";
  bad.close();
  CHECK(run_cli("run --corpus /tmp/dml_bad.corpus") == 1);

  // malformed corpus exits 2
  std::ofstream broken("/tmp/dml_broken.corpus");
  broken << "entry only_two_fields\n";
  broken.close();
  CHECK(run_cli("validate /tmp/dml_broken.corpus") == 2);
  CHECK(run_cli("run --corpus /tmp/dml_broken.corpus") == 2);

  // partial harness selection still exits clean; unevaluated pins are
  // reported rather than failed
  CHECK(run_cli("run --laws --no-timings") == 0);
  CHECK(run_cli("run --spectra --jobs 1 --no-timings") == 0);

  // export a Hasse diagram and a spectrum
  CHECK(run_cli("export --entry z6 --what lattice --out /tmp/dml_z6.dot") == 0);
  CHECK(run_cli("export --entry z6 --what fi --out /tmp/dml_z6fi.dot") == 0);
  CHECK(run_cli("export --entry z6 --what psi --out /tmp/dml_z6psi.dot") == 0);
  std::string dot = slurp("/tmp/dml_z6.dot");
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(run_cli("export --entry z6 --what spectrum --out /tmp/dml_z6spec.dot") ==
        0);
  CHECK(run_cli("export --entry z6 --what nonsense --out /tmp/dml_x.dot") == 2);
  CHECK(run_cli("export --entry missing --what lattice --out /tmp/dml_x.dot") ==
        2);

  // validate a written document
  std::ofstream latf("/tmp/dml_lat.doc");
  write_lattice_doc(latf, divisor_lattice(6));
  latf.close();
  CHECK(run_cli("validate /tmp/dml_lat.doc") == 0);

  // the shipped counterexample corpus must be flagged, with reproducers
  if (const char* src = std::getenv("DMLCHECK_SOURCE_DIR")) {
    std::string corpus = std::string(src) + "/data/counterexamples.corpus";
    std::string out;
    CHECK(run_cli("run --corpus " + corpus + " --no-timings", &out) == 1);
    CHECK(out.find("disagreement") != std::string::npos);
  }

  // bound overrides skip oversized entries without failing the run
  std::ofstream sized("/tmp/dml_sized.corpus");
  sized << "entry z12 ring Z12\n";
  sized.close();
  std::string out;
  CHECK(run_cli("run --corpus /tmp/dml_sized.corpus --bounds module=8 "
                "--no-timings",
                &out) == 0);
  CHECK(out.find("skipped") != std::string::npos);
}
