#include "cdp/corpus.hpp"

#include "doctest.h"
#include "helpers.hpp"

using namespace cdp;
using namespace cdp::testing;

TEST_CASE("named formulas") {
  CHECK(format_formula(corpus::get("XCB").formula) == kXcb);
  CHECK(format_formula(corpus::get("XHN").formula) ==
        "e(x,e(e(y,z),e(e(z,x),y)))");
  CHECK(format_formula(corpus::get("transitivity").formula) ==
        "e(e(x,y),e(e(y,z),e(x,z)))");
  CHECK_THROWS_AS(corpus::get("XYZ"), std::out_of_range);
}

TEST_CASE("exactly fourteen shortest single axioms of length eleven") {
  auto axioms = corpus::shortest_axioms();
  CHECK(axioms.size() == 14);
  for (const NamedFormula& nf : axioms) {
    CHECK(nf.has_tag(FormulaTag::shortest_axiom));
    CHECK(symbol_count(nf.formula) == 11);
    CHECK(two_property(nf.formula));
  }
  CHECK(axioms.back().name == "XCB");
  std::size_t tagged = 0;
  for (const NamedFormula& nf : corpus::all())
    if (nf.has_tag(FormulaTag::shortest_axiom)) ++tagged;
  CHECK(tagged == 14);
}

TEST_CASE("bases") {
  auto two = corpus::two_basis();
  REQUIRE(two.size() == 2);
  CHECK(two[0].name == "transitivity");
  CHECK(format_formula(two[0].formula) == "e(e(x,y),e(e(y,z),e(x,z)))");
  CHECK(two[1].name == "symmetry");
  CHECK(format_formula(two[1].formula) == "e(e(x,y),e(y,x))");

  auto three = corpus::three_basis();
  REQUIRE(three.size() == 3);
  CHECK(three[0].name == "reflexivity");
  CHECK(format_formula(three[0].formula) == "e(x,x)");
}

TEST_CASE("the fifteen 7-symbol targets") {
  auto targets = corpus::seven_symbol_targets();
  CHECK(targets.size() == 15);
  bool found = false;
  for (const NamedFormula& nf : targets) {
    CHECK(symbol_count(nf.formula) == 7);
    CHECK(two_property(nf.formula));
    if (is_variant(nf.formula, fml("e(e(e(x,y),x),y)"))) found = true;
  }
  CHECK(found);
}

TEST_CASE("the four too-weak formulas") {
  std::size_t weak = 0;
  for (const NamedFormula& nf : corpus::all())
    if (nf.has_tag(FormulaTag::too_weak)) ++weak;
  CHECK(weak == 4);
  CHECK(corpus::get("XJL").has_tag(FormulaTag::too_weak));
  CHECK(symbol_count(corpus::get("BXO").formula) == 11);
}

TEST_CASE("every corpus formula is a 2-property equivalential theorem") {
  for (const NamedFormula& nf : corpus::all()) {
    CHECK(is_ec_theorem(nf.formula));
    CHECK(two_property(nf.formula));
    CHECK(is_canonical(nf.formula));
  }
}

TEST_CASE("reverse lookup by variant") {
  const NamedFormula* nf = corpus::find_variant(fml("e(e(a,b),e(b,a))"));
  REQUIRE(nf != nullptr);
  CHECK(nf->name == "symmetry");
  CHECK(corpus::find_variant(fml("e(e(a,b),e(a,b))")) != nullptr);
  CHECK(corpus::find_variant(fml("e(e(x,y),e(e(x,z),e(y,z)))")) == nullptr);
}
