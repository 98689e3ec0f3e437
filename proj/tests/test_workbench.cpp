#include "doctest.h"

#include <fstream>
#include <sstream>

#include "aca/workbench.hpp"

using namespace aca;

namespace {

int run(const std::vector<std::string>& argv, std::string* out_text = nullptr) {
  std::ostringstream ss;
  int code = run_command(argv, ss);
  if (out_text) *out_text = ss.str();
  return code;
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "/tmp/aca_test_" + name;
  std::ofstream f(path);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("spec files round trip through print and parse") {
  std::vector<std::pair<std::string, std::map<std::string, std::string>>> entries = {
      {"shift", {{"field", "5"}}},
      {"affine", {{"field", "5"}}},
      {"pointwise", {{"f", "t1^2+1"}, {"field", "7"}}},
      {"sl2-difference", {{"field", "5"}}},
      {"triangular", {{"m", "2"}, {"alpha", "1,1"}, {"p", "0|t1^2"}, {"field", "5"}}},
      {"triangular", {{"m", "3"}, {"alpha", "1,2,3"}, {"p", "1|t1|t1*t2"}, {"field", "7"}}},
      {"real-quadratic", {}},
      {"frobenius", {{"p", "3"}, {"k", "2"}}},
  };
  for (const auto& [name, params] : entries) {
    CatalogEntry entry = example_catalog(name, params);
    std::string printed = entry.spec.print();
    AutomatonSpec reparsed = AutomatonSpec::parse(printed);
    CHECK(reparsed.print() == printed);
    // the spec builds a valid automaton
    CellularAutomaton ca = reparsed.build();
    CHECK(ca.alphabet_ambient() == entry.spec.alphabet_ambient);
    if (entry.inverse) {
      AutomatonSpec inv = AutomatonSpec::parse(entry.inverse->print());
      CHECK(inv.print() == entry.inverse->print());
    }
  }
}

TEST_CASE("spec parsing: stated examples and error positions") {
  // the shift
  AutomatonSpec sh = AutomatonSpec::parse(
      "field: 5\ngroup: 1\nalphabet: 1\nmemory: 1\nrule: x[1][1]\n");
  CellularAutomaton ca = sh.build();
  CHECK(ca.memory() == Window(1, {{1}}));

  // the real quadratic rule
  AutomatonSpec rq = AutomatonSpec::parse(
      "field: Q\ngroup: 1\nalphabet: 1\nmemory: 0; 1\nrule: x[1][1] - x[0][1]^2\n");
  CHECK(rq.rule_polys[0] == "-x[0][1]^2+x[1][1]");

  // malformed exponent: 'rule: x[1][1]^' on line 5
  try {
    AutomatonSpec::parse("field: 5\ngroup: 1\nalphabet: 1\nmemory: 1\nrule: x[1][1]^\n");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 5);
  }
  // missing required keys
  CHECK_THROWS_AS(AutomatonSpec::parse("group: 1\nalphabet: 1\nmemory: 0\nrule: x[0][1]\n"),
                  ParseError);
  // wrong rule count
  CHECK_THROWS_AS(
      AutomatonSpec::parse("field: 5\ngroup: 1\nalphabet: 2\nmemory: 0\nrule: x[0][1]\n"),
      ParseError);
}

TEST_CASE("catalog: triangular inverse data matches the recursion by hand") {
  CatalogEntry tri =
      example_catalog("triangular", {{"m", "2"}, {"alpha", "1,1"}, {"p", "0|t1^2"}, {"field", "5"}});
  REQUIRE(tri.inverse.has_value());
  // forward: y1 = x1(n+1), y2 = x2(n+2) + x1(n+1)^2
  CHECK(tri.spec.rule_polys[0] == "x[1][1]");
  CHECK(tri.spec.rule_polys[1] == "x[1][1]^2+x[2][2]");
  // inverse: Q1 = 0, Q2 = -t1^2: x1(n) = y1(n-1), x2(n) = y2(n-2) - y1(n-2)^2
  CHECK(tri.inverse->rule_polys[0] == "x[-1][1]");
  CHECK(tri.inverse->rule_polys[1] == "4*x[-2][1]^2+x[-2][2]");

  // invalid parameters: a zero coefficient
  CHECK_THROWS_AS(
      example_catalog("triangular", {{"m", "2"}, {"alpha", "0,1"}, {"p", "0|t1"}, {"field", "5"}}),
      DomainError);
  CHECK_THROWS_AS(example_catalog("affine", {{"alpha", "0"}}), DomainError);
  CHECK_THROWS_AS(example_catalog("no-such-thing", {}), DomainError);
}

TEST_CASE("catalog: affine automaton is bijective with the affine inverse") {
  CatalogEntry aff = example_catalog("affine", {{"alpha", "2"}, {"beta", "3"}, {"field", "5"}});
  REQUIRE(aff.inverse.has_value());
  CHECK(aff.inverse->memory == std::vector<Cell>{{-1}});
  CellularAutomaton fwd = aff.spec.build();
  CellularAutomaton inv = aff.inverse->build();
  // composing gives the identity function on patterns
  CellularAutomaton round = ca_compose(inv, fwd);
  MinimalMemoryResult min = ca_minimal_memory(round);
  CHECK(min.minimal_memory == Window(1, {{0}}));
  CHECK(min.automaton.rule().components[0] ==
        MultiPoly::variable(fwd.field(), min.automaton.rule().components[0].roster(), 0));
}

TEST_CASE("catalog: frobenius inverse interpolation has functional degree p^(k-1)") {
  for (long long p : {2LL, 3LL}) {
    for (int k = 1; k <= 3; ++k) {
      FieldRef field = k == 1 ? Field::prime(p) : Field::extension_default(p, k);
      // interpolate the inverse of x -> x^p on all field points
      std::vector<Point> pts;
      std::vector<FieldElement> preimages;
      for (unsigned long long i = 0; i < field->q; ++i) {
        FieldElement x = FieldElement::from_index(field, i);
        pts.push_back({x.pow(p)});
        preimages.push_back(x);
      }
      MultiPoly inv = interpolate_on_points(pts, preimages, 1, field);
      MultiPoly nf = functional_normal_form(inv);
      long long expected_degree = 1;
      for (int i = 0; i < k - 1; ++i) expected_degree *= p;
      CHECK(nf.total_degree() == expected_degree);
      // the interpolant really inverts Frobenius everywhere
      for (unsigned long long i = 0; i < field->q; ++i) {
        FieldElement x = FieldElement::from_index(field, i);
        CHECK(nf.eval({x.pow(p)}) == x);
      }
    }
  }
}

TEST_CASE("run_command: invert on the triangular spec returns the closed form") {
  CatalogEntry tri =
      example_catalog("triangular", {{"m", "2"}, {"alpha", "1,1"}, {"p", "0|t1^2"}, {"field", "5"}});
  std::string spec_path = write_temp("t2.aca", tri.spec.print());
  std::string out;
  int code = run({"invert", "--spec", spec_path, "--depth", "4"}, &out);
  CHECK(code == 0);
  CHECK(out.find("verdict=inverse-found") != std::string::npos);
  CHECK(out.find("rule: x[-1][1]") != std::string::npos);
  CHECK(out.find("rule: 4*x[-2][1]^2+x[-2][2]") != std::string::npos);
}

TEST_CASE("run_command: thresholds output is byte exact") {
  std::string out;
  int code = run({"thresholds", "--k", "5"}, &out);
  CHECK(code == 0);
  CHECK(out == "1 2 5 26 677\n");
}

TEST_CASE("run_command: surjunctivity of the affine rule") {
  CatalogEntry aff = example_catalog("affine", {{"field", "5"}});
  std::string spec_path = write_temp("aff.aca", aff.spec.print());
  std::string out;
  int code = run({"surjunctivity", "--spec", spec_path, "--lattices", "1,2,3,4"}, &out);
  CHECK(code == 0);
  CHECK(out.find("verdict=injective-implies-surjective-observed") != std::string::npos);
  for (const char* frag : {"lattice=1", "lattice=2", "lattice=3", "lattice=4"})
    CHECK(out.find(frag) != std::string::npos);
}

TEST_CASE("run_command: exit codes 1, 2, 3") {
  // usage errors
  CHECK(run({"no-such-command"}) == 1);
  CHECK(run({"invert"}) == 1);  // missing --spec
  CHECK(run({"invert", "--spec", "/no/such/file.aca"}) == 1);

  // mathematical obstruction: the xor rule is not injective
  std::string xor_path = write_temp(
      "xor.aca", "field: 2\ngroup: 1\nalphabet: 1\nmemory: 0; 1\nrule: x[0][1]+x[1][1]\n");
  std::string out;
  CHECK(run({"invert", "--spec", xor_path, "--depth", "2"}, &out) == 2);
  CHECK(out.find("certificate:") != std::string::npos);

  // the shrinking demo obstruction
  CHECK(run({"mlcheck", "--demo", "shrinking", "--field", "3", "--depth", "4"}, &out) == 2);
  CHECK(out.find("level=2") != std::string::npos);  // q - 1 = 2

  // budget exhaustion
  CatalogEntry tri = example_catalog(
      "triangular", {{"m", "3"}, {"alpha", "1,1,1"}, {"p", "0|t1^2|t2^2"}, {"field", "5"}});
  std::string tri_path = write_temp("t3.aca", tri.spec.print());
  CHECK(run({"invert", "--spec", tri_path, "--budget", "3"}, &out) == 3);
  CHECK(out.find("status=budget-exhausted") != std::string::npos);
}

TEST_CASE("run_command: eval, compose, minmem, restrict, periodic") {
  CatalogEntry sh = example_catalog("shift", {{"field", "5"}});
  std::string spec_path = write_temp("shift.aca", sh.spec.print());
  std::string pattern_path = write_temp("p.pat", "0 : 1\n1 : 2\n2 : 3\n");
  std::string out;

  CHECK(run({"eval", "--spec", spec_path, "--pattern", pattern_path}, &out) == 0);
  CHECK(out.find("0 : 2") != std::string::npos);
  CHECK(out.find("1 : 3") != std::string::npos);

  CHECK(run({"compose", "--spec", spec_path, "--with", spec_path}, &out) == 0);
  CHECK(out.find("memory: 2") != std::string::npos);

  std::string padded_path = write_temp(
      "padded.aca", "field: 5\ngroup: 1\nalphabet: 1\nmemory: 0; 1\nrule: x[1][1]\n");
  CHECK(run({"minmem", "--spec", padded_path}, &out) == 0);
  CHECK(out.find("minimal_memory=1") != std::string::npos);

  std::string sh2_path = write_temp("shift2.aca", example_catalog("shift", {{"by", "2"}, {"field", "5"}}).spec.print());
  CHECK(run({"restrict", "--spec", sh2_path, "--lattice", "2"}, &out) == 0);
  CHECK(out.find("memory: 1") != std::string::npos);

  CHECK(run({"periodic", "--spec", spec_path, "--lattice", "3"}, &out) == 0);
  CHECK(out.find("index=3") != std::string::npos);

  CHECK(run({"image", "--spec", spec_path, "--depth", "1", "--points"}, &out) == 0);
  CHECK(out.find("image_inside_closure=yes") != std::string::npos);
}

TEST_CASE("run_command: closedimage exit codes and reports") {
  std::string and_path = write_temp(
      "and.aca", "field: 2\ngroup: 1\nalphabet: 1\nmemory: 0; 1\nrule: x[0][1]*x[1][1]\n");
  std::string out;
  CHECK(run({"closedimage", "--spec", and_path, "--target-constant", "1", "--depth", "2"}, &out) ==
        0);
  CHECK(out.find("verdict=preimage-found") != std::string::npos);

  // over Q only symbolic evidence
  CatalogEntry rq = example_catalog("real-quadratic", {});
  std::string rq_path = write_temp("rq.aca", rq.spec.print());
  CHECK(run({"closedimage", "--spec", rq_path, "--target-constant", "1", "--depth", "2"}, &out) ==
        0);
  CHECK(out.find("verdict=symbolic-evidence-only") != std::string::npos);
}

TEST_CASE("run_command: reports are byte-stable") {
  CatalogEntry sh = example_catalog("shift", {{"field", "5"}});
  std::string spec_path = write_temp("shift_golden.aca", sh.spec.print());
  std::string a, b;
  run({"periodic", "--spec", spec_path, "--lattice", "2"}, &a);
  run({"periodic", "--spec", spec_path, "--lattice", "2"}, &b);
  CHECK(a == b);
  CHECK(a.find("elapsed_ms") == std::string::npos);  // timing only on request
}

TEST_CASE("run_command: selftest passes") {
  std::string out;
  CHECK(run({"selftest", "--seed", "7"}, &out) == 0);
  CHECK(out.find("selftest=pass") != std::string::npos);
  CHECK(out.find("FAIL") == std::string::npos);
}

TEST_CASE("pattern files round trip") {
  FieldRef f9 = Field::extension_default(3, 2);
  AlgebraicSet line = AlgebraicSet::full(f9, 1);
  Pattern p = Pattern::parse("0 : w+1\n1 : 2*w\n-1 : 0\n", line, 1);
  CHECK(p.support() == Window(1, {{-1}, {0}, {1}}));
  Pattern q = Pattern::parse(p.to_text(), line, 1);
  CHECK(p == q);
}
