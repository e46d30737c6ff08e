#include "cdp/formula.hpp"

#include <algorithm>
#include <set>

#include "doctest.h"
#include "helpers.hpp"

using namespace cdp;
using namespace cdp::testing;

TEST_CASE("parse accepts the clause wrapper and trailing period") {
  Formula f = parse_formula("P(e(x,e(e(e(x,y),e(z,y)),z))).");
  CHECK(format_formula(f) == kXcb);
  CHECK(f == fml(kXcb));
}

TEST_CASE("parse of a bare variable") {
  Formula f = parse_formula("x");
  CHECK(f.is_variable());
  CHECK(format_formula(f) == "x");
}

TEST_CASE("parse failures") {
  CHECK_THROWS_AS(parse_formula("e(x,y"), ParseError);
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_formula("   "), ParseError);
  CHECK_THROWS_AS(parse_formula("e(x,y)z"), ParseError);
  CHECK_THROWS_AS(parse_formula("e()"), ParseError);
  CHECK_THROWS_AS(parse_formula("e(x,)"), ParseError);
  CHECK_THROWS_AS(parse_formula("e(X,y)"), ParseError);
  // arity is fixed per symbol name
  parse_formula("g(x,y,z)");
  CHECK_THROWS_AS(parse_formula("g(x,y)"), ParseError);
  CHECK_THROWS_AS(parse_formula("e(x,y,z)"), ParseError);
}

TEST_CASE("whitespace and line breaks between tokens are ignored") {
  Formula f = parse_formula("P( e( x ,\n  e(e(e(x,y),e(z,y)),\n z) ) ).");
  CHECK(format_formula(f) == kXcb);
}

TEST_CASE("format emits the paper notation") {
  CHECK(format_formula(fml(kXcb)) == kXcb);
  CHECK(format_formula(fml("e(e(e(e(x,y),e(z,y)),z),x)")) == kClause123);
}

TEST_CASE("symbol_count") {
  CHECK(symbol_count(fml(kXcb)) == 11);
  CHECK(symbol_count(fml("e(x,x)")) == 3);
  CHECK(symbol_count(fml(kClause115)) == 47);
  CHECK(symbol_count(fml(kClause119)) == 47);
}

TEST_CASE("canonical_rename uses first-occurrence order") {
  CHECK(format_formula(canonical_rename(fml("e(b,a)"))) == "e(x,y)");
  CHECK(format_formula(canonical_rename(fml("e(e(q,q),p)"))) == "e(e(x,x),y)");
  Formula f = canonical_rename(fml("e(e(c,b),e(a,c))"));
  CHECK(format_formula(f) == "e(e(x,y),e(z,x))");
  CHECK(canonical_rename(f) == f);
}

TEST_CASE("canonical names continue with v6, v7, ...") {
  CHECK(Names::canonical_text(5) == "w");
  CHECK(Names::canonical_text(6) == "v6");
  CHECK(Names::canonical_text(11) == "v11");
}

TEST_CASE("is_variant") {
  CHECK(is_variant(fml("e(x,y)"), fml("e(u,v)")));
  CHECK_FALSE(is_variant(fml("e(x,y)"), fml("e(y,y)")));
  CHECK(is_variant(fml("e(x,x)"), fml("e(z,z)")));
}

TEST_CASE("is_variant is an equivalence relation on random formulas") {
  RandomFormulas gen(20240811);
  std::vector<Formula> pool;
  for (int i = 0; i < 60; ++i) pool.push_back(gen.next());
  for (const Formula& a : pool) CHECK(is_variant(a, a));
  for (const Formula& a : pool)
    for (const Formula& b : pool) {
      CHECK(is_variant(a, b) == is_variant(b, a));
      if (!is_variant(a, b)) continue;
      for (const Formula& c : pool)
        if (is_variant(b, c)) CHECK(is_variant(a, c));
    }
}

TEST_CASE("round trip: parse after format") {
  RandomFormulas gen(7);
  for (int i = 0; i < 500; ++i) {
    Formula f = gen.next();
    CHECK(parse_formula(format_formula(f)) == f);
  }
}

TEST_CASE("two_property") {
  CHECK(two_property(fml("e(e(x,y),e(y,x))")));
  CHECK_FALSE(two_property(fml("e(e(y,y),e(y,y))")));
  CHECK(two_property(fml("e(x,x)")));
  CHECK(two_property(fml(kXcb)));
}

TEST_CASE("is_ec_theorem") {
  CHECK(is_ec_theorem(fml("e(e(y,y),e(y,y))")));
  CHECK_FALSE(is_ec_theorem(fml("e(x,y)")));
  CHECK(is_ec_theorem(fml(kXcb)));
  CHECK_THROWS_AS(is_ec_theorem(fml("f(x,x)")), std::invalid_argument);
}

TEST_CASE("canonical_rename preserves counts and the oracles") {
  RandomFormulas gen(99);
  for (int i = 0; i < 200; ++i) {
    Formula f = gen.next();
    Formula c = canonical_rename(f);
    CHECK(symbol_count(c) == symbol_count(f));
    CHECK(two_property(c) == two_property(f));
    CHECK(is_ec_theorem(c) == is_ec_theorem(f));
    CHECK(canonical_rename(c) == c);
  }
}

TEST_CASE("contains_variant_subformula") {
  Formula xcb = fml(kXcb);
  CHECK(contains_variant_subformula(fml(kClause105), xcb));
  CHECK_FALSE(contains_variant_subformula(fml("e(e(x,y),e(x,y))"), xcb));
  CHECK(contains_variant_subformula(xcb, xcb));
  CHECK(contains_variant_subformula(fml(kClause115), xcb));
  CHECK(contains_variant_subformula(fml("e(e(a,a),b)"), fml("e(x,x)")));
  CHECK_FALSE(contains_variant_subformula(fml("e(e(a,b),a)"), fml("e(x,x)")));
}

TEST_CASE("distinct_var_count") {
  CHECK(distinct_var_count(fml(kXcb)) == 3);
  CHECK(distinct_var_count(fml(kClause119)) == 12);
  CHECK(distinct_var_count(fml("e(x,x)")) == 1);
}

namespace {

// independent counts: Catalan(l-1) tree shapes, (l-1)!! pairings
long long catalan(int n) {
  std::vector<long long> c(static_cast<std::size_t>(n) + 1, 0);
  c[0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j < i; ++j)
      c[static_cast<std::size_t>(i)] +=
          c[static_cast<std::size_t>(j)] *
          c[static_cast<std::size_t>(i - 1 - j)];
  return c[static_cast<std::size_t>(n)];
}

long long perfect_pairings(int leaves) {
  if (leaves % 2 != 0) return 0;
  long long p = 1;
  for (int k = leaves - 1; k > 0; k -= 2) p *= k;
  return p;
}

}  // namespace

TEST_CASE("two-property enumeration counts") {
  CHECK(enumerate_two_property_theorems(3).size() == 1);
  CHECK(format_formula(enumerate_two_property_theorems(3)[0]) == "e(x,x)");
  CHECK(enumerate_two_property_theorems(5).empty());
  CHECK(enumerate_two_property_theorems(7).size() == 15);
  CHECK(enumerate_two_property_theorems(4).empty());
  CHECK(enumerate_two_property_theorems(11).size() == 630);
}

TEST_CASE("enumeration counts match shapes times pairings on small sizes") {
  for (std::size_t n : {3u, 5u, 7u}) {
    int leaves = static_cast<int>((n + 1) / 2);
    long long expected = catalan(leaves - 1) * perfect_pairings(leaves);
    CHECK(static_cast<long long>(enumerate_two_property_theorems(n).size()) ==
          expected);
  }
}

TEST_CASE("enumerated theorems are canonical, 2-property EC theorems") {
  auto all = enumerate_two_property_theorems(7);
  std::set<std::string> texts;
  for (const Formula& f : all) {
    CHECK(symbol_count(f) == 7);
    CHECK(two_property(f));
    CHECK(is_ec_theorem(f));
    CHECK(is_canonical(f));
    texts.insert(format_formula(f));
  }
  CHECK(texts.size() == all.size());  // pairwise non-variant
  CHECK(std::is_sorted(texts.begin(), texts.end()));
  CHECK(texts.count("e(e(e(x,y),x),y)") == 1);
  CHECK(texts.count("e(e(x,y),e(y,x))") == 1);
}

TEST_CASE("general enumeration subsumes the 2-property one") {
  auto all = enumerate_formulas(7);
  auto two = enumerate_two_property_theorems(7);
  CHECK(all.size() > two.size());
  std::set<std::vector<std::int32_t>> codes;
  for (const Formula& f : all) codes.insert(f.codes());
  CHECK(codes.size() == all.size());
  for (const Formula& f : two) CHECK(codes.count(f.codes()) == 1);
}
