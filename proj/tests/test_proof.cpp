#include "cdp/proof.hpp"

#include <fstream>
#include <sstream>

#include "cdp/corpus.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cdp;
using namespace cdp::testing;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Proof golden() {
  return parse_proof(slurp(std::string(CDP_DATA_DIR) + "/xcb25.proof"));
}

std::vector<std::pair<std::string, Formula>> basis_goals() {
  std::vector<std::pair<std::string, Formula>> goals;
  for (const NamedFormula& nf : corpus::two_basis())
    goals.emplace_back(nf.name, nf.formula);
  return goals;
}

}  // namespace

TEST_CASE("the bundled 25-step proof verifies with the expected metrics") {
  Proof p = golden();
  CHECK(p.steps.size() == 26);  // one axiom + 25 deductions
  ProofMetrics m = verify(p, basis_goals());
  CHECK(m.length == 25);
  CHECK(m.level == 19);
  CHECK(m.max_weight == 47);
  CHECK(m.max_distinct_vars == 12);
}

TEST_CASE("the OTTER-format listing parses to the same verified proof") {
  Proof p =
      parse_proof(slurp(std::string(CDP_DATA_DIR) + "/xcb25_otter.proof"));
  ProofMetrics m = verify(p, basis_goals());
  CHECK(m.length == 25);
  CHECK(m.level == 19);
  Proof q = golden();
  REQUIRE(p.steps.size() == q.steps.size());
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    CHECK(p.steps[i].id == q.steps[i].id);
    CHECK(p.steps[i].parents == q.steps[i].parents);
    CHECK(p.steps[i].formula == q.steps[i].formula);
  }
}

TEST_CASE("the level of step 120 alone is 11") {
  Proof p = golden();
  while (!p.steps.empty() && p.steps.back().id > 120) p.steps.pop_back();
  p.targets.clear();
  ProofMetrics m = verify(p);
  CHECK(m.level == 11);
  CHECK(m.length == 16);
}

TEST_CASE("tampering with a step is detected") {
  Proof p = golden();
  for (ProofStep& s : p.steps)
    if (s.id == 120) s.formula = fml("e(x,x)");
  try {
    verify(p);
    FAIL("tampered proof verified");
  } catch (const VerifyError& e) {
    CHECK(e.kind() == VerifyError::Kind::step_mismatch);
    CHECK(e.step_id() == 120);
  }
}

TEST_CASE("render and parse round-trip the bundled proof byte-exactly") {
  std::string text = slurp(std::string(CDP_DATA_DIR) + "/xcb25.proof");
  Proof p = parse_proof(text);
  CHECK(render(p) == text);
  CHECK(render(parse_proof(render(p))) == render(p));
}

TEST_CASE("parse_proof error cases") {
  CHECK_THROWS_AS(parse_proof("7 [cd,9,3] P(x)."), ParseError);  // forward ref
  CHECK_THROWS_AS(parse_proof("1 [axiom] P(e(x,x)).\n"
                              "1 [axiom] P(e(y,y))."),
                  ParseError);  // id reuse
  CHECK_THROWS_AS(parse_proof("1 [axiom] e(x,x)"), ParseError);  // no period
  CHECK_THROWS_AS(parse_proof("1 [what] P(e(x,x))."), ParseError);
  CHECK_THROWS_AS(parse_proof("x [axiom] P(e(x,x))."), ParseError);
  // hyper histories need a nucleus and two premisses
  CHECK_THROWS_AS(parse_proof("1 [axiom] P(e(x,e(e(e(x,y),e(z,y)),z))).\n"
                              "2 [hyper,1,1] P(e(x,x))."),
                  ParseError);
}

TEST_CASE("verify rejects structural corruption") {
  Proof p;
  p.steps.push_back({2, std::nullopt, fml("e(x,x)")});
  p.steps.push_back({1, std::nullopt, fml("e(y,y)")});
  CHECK_THROWS_AS(verify(p), VerifyError);

  Proof q;
  q.steps.push_back({1, std::nullopt, fml(kXcb)});
  q.steps.push_back({3, std::make_pair(1u, 2u), fml(kClause105)});
  try {
    verify(q);
    FAIL("missing reference accepted");
  } catch (const VerifyError& e) {
    CHECK(e.kind() == VerifyError::Kind::bad_reference);
  }
}

TEST_CASE("verify checks claimed targets against goal formulas") {
  Proof p = golden();
  ProofMetrics m = verify(p, basis_goals());
  CHECK(m.length == 25);

  // a goal the proof does not claim
  std::vector<std::pair<std::string, Formula>> goals = basis_goals();
  goals.emplace_back("reflexivity", fml("e(x,x)"));
  CHECK_THROWS_AS(verify(p, goals), VerifyError);

  // a claim pointing at the wrong step
  Proof q = golden();
  q.targets["symmetry"] = 128;
  try {
    verify(q, basis_goals());
    FAIL("wrong target step accepted");
  } catch (const VerifyError& e) {
    CHECK(e.kind() == VerifyError::Kind::target_unproved);
    CHECK(e.target() == "symmetry");
  }
}

TEST_CASE("a final step that subsumes the target satisfies it") {
  Proof p;
  p.steps.push_back({1, std::nullopt, fml("e(x,x)")});
  p.targets["inst"] = 1;
  std::vector<std::pair<std::string, Formula>> goals;
  goals.emplace_back("inst", fml("e(e(a,b),e(a,b))"));
  ProofMetrics m = verify(p, goals);
  CHECK(m.length == 0);
}

TEST_CASE("metrics are stable under renaming of step formulas") {
  Proof p = golden();
  std::vector<NameId> odd;
  for (std::size_t k = 0; k < 16; ++k)
    odd.push_back(Names::intern("q" + std::to_string(k)));
  for (ProofStep& s : p.steps) s.formula = rename_with(s.formula, odd);
  ProofMetrics m = verify(p, basis_goals());
  CHECK(m.length == 25);
  CHECK(m.level == 19);
  CHECK(m.max_weight == 47);
  CHECK(m.max_distinct_vars == 12);
}
