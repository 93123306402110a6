#include <doctest.h>

#include "provlab/coding.hpp"
#include "provlab/gallery.hpp"
#include "provlab/hierarchy.hpp"

using namespace provlab;

namespace {

PredicateTemplate tmpl(const std::string &name) {
  return std::get<PredicateTemplate>(gallery(name));
}

bool mentions(const FormulaPtr &f, const std::string &sym);

bool mentions(const TermPtr &t, const std::string &sym) {
  if (t->kind == TermKind::Fun && t->name == sym) return true;
  for (auto &a : t->args)
    if (mentions(a, sym)) return true;
  return false;
}

bool mentions(const FormulaPtr &f, const std::string &sym) {
  if (f->kind == FormulaKind::Atom && f->name == sym) return true;
  for (auto &t : f->terms)
    if (mentions(t, sym)) return true;
  for (auto &s : f->subs)
    if (mentions(s, sym)) return true;
  return false;
}

}  // namespace

TEST_CASE("consistency statements") {
  auto pr = standard_pr();
  CHECK(print(make_con(ConVariant::L, pr)) == "~!E y (Atom[Prf](#3230, y))");
  CHECK(print(make_con(ConVariant::G, pr)) ==
        "!E x (Atom[Fml](x) & ~!E y (Atom[Prf](x, y)))");
  CHECK(print(make_con(ConVariant::H, pr)) ==
        "!A x (Atom[Fml](x) & !E y (Atom[Prf](x, y)) -> "
        "~!E y (Atom[Prf](Fun[neg](x), y)))");
  CHECK(print(make_con(ConVariant::Sigma1, pr)) ==
        "!E x (Atom[Sigma](#1, x) & Atom[Sent](x) & ~!E y (Atom[Prf](x, y)))");
  CHECK(gn(neq(zero(), zero())) == 3230);
  CHECK(classify(make_con(ConVariant::L, pr)).str() == "Pi1");
  CHECK(classify(make_con(ConVariant::H, pr)).str() == "Pi1");
  CHECK(classify(make_con(ConVariant::G, pr)).str() == "Sigma2");
  CHECK(classify(make_con(ConVariant::Sigma1, pr)).str() == "Sigma2");
  // neg realizes the code of the negation.
  auto g = gn(eq(zero(), zero()));
  CHECK(eval_term(fun("neg", {lit(g)}), {}) == gn(lnot(eq(zero(), zero()))));
}

TEST_CASE("every template classifies to its declared level") {
  for (auto &name : catalog()) {
    auto e = gallery(name);
    if (auto *t = std::get_if<PredicateTemplate>(&e)) {
      CHECK_MESSAGE(classify(t->formula) == t->declared_level, name);
      CHECK(free_vars(t->formula) == std::set<std::string>{"x"});
      CHECK_FALSE(t->citation.empty());
    } else {
      CHECK_FALSE(std::get<MetadataOnly>(e).citation.empty());
    }
  }
  CHECK_THROWS_AS(gallery("PR_VII"), GalleryError);
}

TEST_CASE("named shapes") {
  CHECK(print(tmpl("Mostowski").formula) ==
        "!E y (Atom[Prf](x, y) & ~Atom[Prf](#3230, y))");
  CHECK(print(tmpl("Psi").formula) == "~(x = x)");
  CHECK(print(tmpl("PR_star").formula) ==
        "!E y (Atom[PrfA0](x, y)) | !E y (Atom[PrfA1](x, y))");
  auto vi = print(tmpl("PR_VI").formula);
  CHECK(vi.rfind("!E y (Atom[Prf](x, y)) & ~(x = #", 0) == 0);
  auto fdt = tmpl("FDT").formula;
  CHECK(mentions(fdt, "PrL"));
  CHECK(mentions(fdt, "imp"));
  CHECK(mentions(fdt, "PrfT0"));
  CHECK(tmpl("T0").formula->kind == FormulaKind::Or);
}

TEST_CASE("psi rejects every numeral") {
  auto psi = tmpl("Psi");
  for (unsigned n = 0; n <= 20; ++n)
    CHECK(evaluate(instantiate(psi, numeral(n)), {}, 0) == Verdict::False);
}

TEST_CASE("the finite numeration accepts exactly the axiom codes") {
  auto t0 = tmpl("T0");
  for (auto &a : q_axioms())
    CHECK(evaluate(t0.formula, {{"x", gn(a)}}, 0) == Verdict::True);
  for (unsigned n = 0; n < 200; ++n)
    CHECK(evaluate(t0.formula, {{"x", n}}, 0) == Verdict::False);
}

TEST_CASE("conj denotes the code of a conjunction") {
  auto &q = q_axioms();
  auto t = fun("conj", {lit(gn(q[0])), lit(gn(q[3]))});
  CHECK(eval_term(t, {}) == gn(land(q[0], q[3])));
}

TEST_CASE("pr_delta guard shape") {
  auto t = pr_delta(parse("x <= z | Atom[Even](x)"));
  CHECK(print(t.formula) ==
        "!E y (Atom[Prf](x, y) & !A z < y . (Atom[Prf](#3230, z) -> "
        "Atom[Le](x, z) | Atom[Even](x)))");
  CHECK(classify(t.formula).str() == "Sigma1");
  CHECK_THROWS_AS(pr_delta(parse("!E w (w = x)")), GalleryError);
  CHECK_THROWS_AS(pr_delta(parse("Atom[Phi](x)")), GalleryError);
  CHECK_THROWS_AS(pr_delta(parse("x = w")), GalleryError);
  for (const char *d : {"x = z", "Atom[Prf](x, z)", "!A w <= z . ~(w = x)"}) {
    auto f = pr_delta(parse(d)).formula;
    auto body = f->subs[0];
    REQUIRE(body->kind == FormulaKind::And);
    auto guard = body->subs[1];
    CHECK(guard->kind == FormulaKind::BForall);
    CHECK(guard->strict);
    CHECK(print(guard->subs[0]->subs[0]) == "Atom[Prf](#3230, z)");
    CHECK(equal(guard->subs[0]->subs[1], parse(d)));
  }
}

TEST_CASE("parity normalization") {
  auto one = tmpl("PR_I");
  CHECK(count_logical_symbols(one.formula) % 2 == 1);
  auto raw = pr_delta(parse("x <= z"));
  CHECK(count_logical_symbols(raw.formula) == 4);
  auto fixed = parity_normalize(raw);
  CHECK(count_logical_symbols(fixed.formula) == count_logical_symbols(raw.formula) + 1);
  CHECK(equal(parity_normalize(fixed).formula, fixed.formula));
  auto odd = tmpl("Mostowski");
  CHECK(count_logical_symbols(odd.formula) % 2 == 1);
  CHECK(equal(parity_normalize(odd).formula, odd.formula));
  // The code of any instance is odd in logical symbols, so Even rejects it.
  auto even = atom_interp("Even");
  for (unsigned n = 0; n < 5; ++n)
    CHECK_FALSE(even({dotted_instance(one.formula, {{"x", n}})}));
}

TEST_CASE("structural markers") {
  CHECK(mentions(tmpl("PR_II").formula, "n"));
  CHECK(mentions(tmpl("PR_III").formula, "Sigma"));
  CHECK_FALSE(mentions(tmpl("PR_I").formula, "n"));
}
