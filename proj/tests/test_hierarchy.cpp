#include <doctest.h>

#include "gen.hpp"
#include "provlab/hierarchy.hpp"

using namespace provlab;

namespace {

std::string cls(const char *src) { return classify(parse(src)).str(); }

}  // namespace

TEST_CASE("classification of sample formulas") {
  CHECK(cls("0 = 0") == "Delta0");
  CHECK(cls("!A y <= x . y = y") == "Delta0");
  CHECK(cls("!E x (x = 0)") == "Sigma1");
  CHECK(cls("!A x (x = 0)") == "Pi1");
  CHECK(cls("!A x !E y (x = y)") == "Pi2");
  CHECK(cls("!E x !A y !E z (x + y = z)") == "Sigma3");
  CHECK(cls("!A x (x = 0) -> 0 = 0") == "Sigma1");
  CHECK(cls("~!E x (x = 0)") == "Pi1");
  CHECK(cls("Atom[Prf](x, y)") == "Delta0");
  CHECK(cls("!E y (Atom[Prf](x, y))") == "Sigma1");
  CHECK(cls("Atom[Phi](x)") == "Sigma1");
  CHECK(cls("Atom[Xi]()") == "Pi1");
  CHECK(cls("!A z < y . Atom[Phi](z)") == "Sigma1");
  // Sigma1 and Pi1 conjoined sit in both Sigma2 and Pi2.
  CHECK(cls("!E x (x = 0) & !A y (y = 0)") == "Sigma2");
  auto r = rank(parse("!E x (x = 0) & !A y (y = 0)"));
  CHECK(r.sigma == 2);
  CHECK(r.pi == 2);
}

TEST_CASE("membership and inclusion") {
  auto f = parse("!E x (x = 0)");
  CHECK(is_in(f, Level::sigma(1)));
  CHECK(is_in(f, Level::pi(2)));
  CHECK_FALSE(is_in(f, Level::pi(1)));
  CHECK_FALSE(is_in(f, Level::delta0()));
  CHECK(level_leq(Level::delta0(), Level::pi(1)));
  CHECK(level_leq(Level::sigma(1), Level::sigma(2)));
  CHECK(level_leq(Level::sigma(1), Level::pi(2)));
  CHECK_FALSE(level_leq(Level::sigma(2), Level::pi(2)));
}

TEST_CASE("rank respects negation and normal form") {
  gen::Rng rng(31);
  gen::FormulaOpts o;
  for (int i = 0; i < 1000; ++i) {
    auto f = gen::formula(rng, 5, o);
    Rank a = rank(f), n = rank(lnot(f)), m = rank(nnf(f));
    REQUIRE(n.sigma == a.pi);
    REQUIRE(n.pi == a.sigma);
    REQUIRE(m.sigma == a.sigma);
    REQUIRE(m.pi == a.pi);
    // Adjacent classes differ by at most one index.
    REQUIRE(a.sigma <= a.pi + 1);
    REQUIRE(a.pi <= a.sigma + 1);
    Level l = classify(f);
    REQUIRE(is_in(f, l));
    if (!quantifier_free(f)) {
      Rank e = rank(exists("x", f));
      REQUIRE(e.sigma == std::max(1u, a.sigma));
    }
  }
}
