#include <doctest.h>

#include "provlab/coding.hpp"
#include "provlab/diagonal.hpp"

using namespace provlab;

namespace {

// Collect every Fun[sub] subterm of a formula.
void collect_sub(const TermPtr &t, std::vector<TermPtr> &out) {
  if (t->kind == TermKind::Fun && t->name == "sub") out.push_back(t);
  for (auto &a : t->args) collect_sub(a, out);
}

void collect_sub(const FormulaPtr &f, std::vector<TermPtr> &out) {
  for (auto &t : f->terms) collect_sub(t, out);
  for (auto &s : f->subs) collect_sub(s, out);
}

// The diagonal term inside phi must denote the code of phi itself.
void check_self_reference(const FixedPoint &fp) {
  std::vector<TermPtr> subs;
  collect_sub(fp.sentence, subs);
  REQUIRE(subs.size() == 1);
  CHECK(eval_term(subs[0], {}) == gn(fp.sentence));
  CHECK(free_vars(fp.sentence).empty());
  CHECK(fp.cert.holds());
  CHECK(fp.cert.rhs == gn(fp.sentence));
  CHECK(equal(fp.cert.phi, fp.sentence));
  CHECK(equal(substitute(fp.cert.theta, "x", lit(gn(fp.cert.theta))),
              fp.sentence));
}

}  // namespace

TEST_CASE("godel sentence") {
  auto fp = fixed_point(godel_context());
  check_self_reference(fp);
  CHECK(fp.sentence->kind == FormulaKind::Not);
  auto again = fixed_point(godel_context());
  CHECK(equal(again.sentence, fp.sentence));
}

TEST_CASE("jeroslow sentence") {
  auto fp = fixed_point(jeroslow_context());
  check_self_reference(fp);
  // neg applied to the diagonal term denotes the code of the negation.
  auto arg = fp.sentence->terms[0];
  CHECK(eval_term(arg, {}) == gn(lnot(fp.sentence)));
}

TEST_CASE("contexts with other variable names") {
  auto fp = fixed_point(parse("!E y (Atom[Prf](v, y))"));
  check_self_reference(fp);
}

TEST_CASE("vacuous context") {
  CHECK_THROWS_AS(fixed_point(parse("0 = 0")), ContextError);
  CHECK_THROWS_AS(fixed_point(parse("x = y")), ContextError);
  auto fp = fixed_point(parse("0 = 0"), "x");
  CHECK(fp.cert.holds());
  CHECK(equal(fp.sentence, parse("0 = 0")));
  CHECK(evaluate(fp.sentence, {}, 0) == Verdict::True);
}
