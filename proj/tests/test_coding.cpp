#include <doctest.h>

#include <algorithm>
#include <functional>

#include "gen.hpp"
#include "provlab/coding.hpp"

using namespace provlab;

namespace {

// Position of (a, b) in the diagonal walk (0,0) (1,0) (0,1) (2,0) ...
unsigned long walk_index(unsigned a, unsigned b) {
  unsigned long idx = 0;
  for (unsigned d = 0;; ++d)
    for (unsigned j = 0; j <= d; ++j, ++idx)
      if (d - j == a && j == b) return idx;
}

// Encoder that reads free variables straight from an assignment, so that
// dotted instances can be computed without building the substituted formula.
Nat ref_code(const TermPtr &t, const Assignment &env) {
  auto P = [](const Nat &a, const Nat &b) -> Nat { return (a + b) * (a + b + 1) / 2 + b; };
  switch (t->kind) {
    case TermKind::Var: {
      auto it = env.find(t->name);
      if (it == env.end()) return P(tag::Var, encode_name(t->name));
      Nat v = P(tag::Zero, 0);
      for (unsigned long i = 0; i < it->second.get_ui(); ++i) v = P(0, v);
      return v;
    }
    case TermKind::Zero: return P(tag::Zero, 0);
    case TermKind::Succ: return P(tag::Succ, ref_code(t->args[0], env));
    case TermKind::Add:
      return P(tag::Add, P(ref_code(t->args[0], env), ref_code(t->args[1], env)));
    case TermKind::Mul:
      return P(tag::Mul, P(ref_code(t->args[0], env), ref_code(t->args[1], env)));
    default: FAIL("unexpected term"); return 0;
  }
}

Nat ref_code(const FormulaPtr &f, const Assignment &env) {
  auto P = [](const Nat &a, const Nat &b) -> Nat { return (a + b) * (a + b + 1) / 2 + b; };
  switch (f->kind) {
    case FormulaKind::Eq:
      return P(tag::Eq, P(ref_code(f->terms[0], env), ref_code(f->terms[1], env)));
    case FormulaKind::Not: return P(tag::Not, ref_code(f->subs[0], env));
    case FormulaKind::And:
      return P(tag::And, P(ref_code(f->subs[0], env), ref_code(f->subs[1], env)));
    case FormulaKind::Or:
      return P(tag::Or, P(ref_code(f->subs[0], env), ref_code(f->subs[1], env)));
    case FormulaKind::Imp:
      return P(tag::Imp, P(ref_code(f->subs[0], env), ref_code(f->subs[1], env)));
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      Assignment inner = env;
      inner.erase(f->name);
      unsigned tg = f->kind == FormulaKind::Forall ? tag::Forall : tag::Exists;
      return P(tg, P(encode_name(f->name), ref_code(f->subs[0], inner)));
    }
    default: FAIL("unexpected formula"); return 0;
  }
}

}  // namespace

TEST_CASE("pairing") {
  CHECK(pair(0, 0) == 0);
  CHECK(pair(0, 1) == 2);
  for (unsigned a = 0; a <= 12; ++a)
    for (unsigned b = 0; b <= 12; ++b)
      REQUIRE(pair(a, b) == walk_index(a, b));
  gen::Rng rng(21);
  for (int i = 0; i < 10000; ++i) {
    Nat a = rng(), b = rng();
    if (i % 3 == 0) a *= Nat(rng()) * Nat(rng());
    auto [x, y] = unpair(pair(a, b));
    REQUIRE(x == a);
    REQUIRE(y == b);
  }
}

TEST_CASE("successor and numeral recurrences") {
  CHECK(gn(succ(zero())) == pair(0, gn(zero())));
  CHECK(equal(numeral(0), zero()));
  CHECK(equal(numeral(2), succ(succ(zero()))));
  CHECK(gn(numeral(3)) == num_value(3));
  CHECK(num_value(0) == gn(zero()));
  for (unsigned n = 0; n < 20; ++n) {
    REQUIRE(num_value(n + 1) == pair(0, num_value(n)));
  }
  CHECK(gn(numeral(12)) == num_value(12));
}

TEST_CASE("names and literals") {
  CHECK(decode_name(encode_name("x'1")) == "x'1");
  CHECK_THROWS_AS(decode_name(Nat(0)), DecodeError);
  CHECK(equal(code_term(0), zero()));
  CHECK(equal(decode_term(gn(lit(3230))), lit(3230)));
  CHECK_THROWS_AS(decode_term(pair(tag::Lit, 0)), DecodeError);
}

TEST_CASE("decode inverts encode on generated syntax") {
  gen::Rng rng(22);
  gen::FormulaOpts o;
  for (int i = 0; i < 400; ++i) {
    auto f = gen::formula(rng, 4, o);
    Nat g = gn(f);
    REQUIRE(equal(decode_formula(g), f));
    REQUIRE_FALSE(is_formula_code(gn(gen::term(rng, 3))));
  }
}

TEST_CASE("dotted instances") {
  CHECK(dotted_instance(eq(var("x"), var("x")), {{"x", 0}}) ==
        gn(eq(zero(), zero())));
  CHECK_THROWS(dotted_instance(eq(var("x"), var("y")), {{"x", 0}}));

  gen::Rng rng(23);
  gen::FormulaOpts o;
  o.atoms = false;
  o.executable = true;
  o.unbounded = true;
  o.term_depth = 2;
  for (int i = 0; i < 500; ++i) {
    auto f = gen::formula(rng, 4, o);
    // Bounded quantifiers are outside the reference encoder.
    bool bounded = false;
    std::function<void(const FormulaPtr &)> scan = [&](const FormulaPtr &g) {
      bounded |= is_bounded(g->kind);
      for (auto &s : g->subs) scan(s);
    };
    scan(f);
    if (bounded) continue;
    Assignment a = {{"x", gen::pick(rng, 5)}, {"y", gen::pick(rng, 5)},
                    {"z", gen::pick(rng, 5)}};
    Assignment used;
    for (auto &v : free_vars(f)) used[v] = a[v];
    REQUIRE(dotted_instance(f, used) == ref_code(f, used));
  }
}

TEST_CASE("substitution identity for a successor argument") {
  // code(phi(y, v))[s(x)/v] evaluated at x = n equals code(phi(y, s(x))) at n.
  const char *samples[] = {"y + v = s(0)", "!E z (z * v = y)",
                           "~(v = y) & !A w (w + y = v)", "v = v -> y = 0"};
  for (const char *src : samples) {
    auto phi = parse(src);
    auto shifted = substitute(phi, "v", succ(var("x")));
    for (unsigned n = 0; n <= 10; ++n)
      for (unsigned m = 0; m <= 2; ++m) {
        Nat a = dotted_instance(phi, {{"y", m}, {"v", n + 1}});
        Nat b = dotted_instance(shifted, {{"y", m}, {"x", n}});
        REQUIRE(a == b);
      }
  }
}

TEST_CASE("sub_eval") {
  CHECK(sub_eval(gn(eq(var("x"), var("x"))), 0) == gn(eq(zero(), zero())));
  CHECK(sub_eval(gn(eq(var("x"), var("y"))), 7) ==
        gn(eq(lit(7), var("y"))));
  CHECK_THROWS_AS(sub_eval(gn(zero()), 0), DecodeError);
  CHECK_THROWS_AS(sub_eval(3, 0), DecodeError);
}

TEST_CASE("gn is injective on small terms") {
  // Depth counts leaves as 1; all terms of depth <= 3 over {0, x, y}.
  std::vector<TermPtr> level = {zero(), var("x"), var("y")};
  std::vector<TermPtr> all = level;
  for (int d = 2; d <= 3; ++d) {
    std::vector<TermPtr> next = {zero(), var("x"), var("y")};
    for (auto &a : all) next.push_back(succ(a));
    for (auto &a : all)
      for (auto &b : all) {
        next.push_back(add(a, b));
        next.push_back(mul(a, b));
      }
    all = next;
  }
  CHECK(all.size() == 1179);
  std::vector<Nat> codes;
  for (auto &t : all) codes.push_back(gn(t));
  std::sort(codes.begin(), codes.end());
  CHECK(std::adjacent_find(codes.begin(), codes.end()) == codes.end());
}

TEST_CASE("coding scheme table") {
  auto j = coding_scheme();
  CHECK(j["tags"][0]["constructor"] == "Succ");
  CHECK(j["tags"].size() == tag::Count);
}
