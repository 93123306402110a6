#include "provlab/gallery.hpp"

#include "provlab/coding.hpp"
#include "provlab/hierarchy.hpp"

namespace provlab {

namespace {

TermPtr falsum_code() { return lit(gn(neq(zero(), zero()))); }

TermPtr x() { return var("x"); }

FormulaPtr pr(const std::string &prf, const TermPtr &t) {
  return exists("y", atom(prf, {t, var("y")}));
}

// Code of the conjunction of the list, as conj terms over literals.
TermPtr conj_code(const std::vector<FormulaPtr> &fs, size_t i = 0) {
  if (i + 1 == fs.size()) return lit(gn(fs[i]));
  return fun("conj", {lit(gn(fs[i])), conj_code(fs, i + 1)});
}

PredicateTemplate finite_numeration() {
  FormulaPtr f;
  for (auto &a : q_axioms()) {
    auto g = eq(x(), lit(gn(a)));
    f = f ? lor(f, g) : g;
  }
  return {"T0", f, Level::delta0(), "defT0"};
}

PredicateTemplate pr_star() {
  return {"PR_star", lor(pr("PrfA0", x()), pr("PrfA1", x())), Level::sigma(1),
          "MT2"};
}

PredicateTemplate pr_vi() {
  auto xi = lor(atom("Xi", {}), eq(zero(), succ(zero())));
  auto f = land(pr("Prf", x()), neq(x(), lit(gn(lnot(xi)))));
  return {"PR_VI", f, Level::sigma(1), "WP6"};
}

PredicateTemplate fdt() {
  auto rhs = atom("PrL", {fun("imp", {conj_code(q_axioms()), x()})});
  return {"FDT", liff(pr("PrfT0", x()), rhs), Level::sigma(2), "FDT"};
}

const std::vector<MetadataOnly> &metadata() {
  static const std::vector<MetadataOnly> table = {
      {"Feferman", Level::sigma(2), "exFef",
       "built from a Pi1 numeration of T; not expressible over Prf"},
      {"Arai_A1", Level::sigma(1), "exAra",
       "Rosser-style predicate over a proof predicate chosen by a fixed point"},
      {"Arai_A2", Level::sigma(1), "exAra",
       "Rosser-style predicate over a proof predicate chosen by a fixed point"},
      {"Kurahashi_R1", Level::sigma(1), "exKur", "external construction"},
      {"Kurahashi_R2", Level::sigma(1), "exKur", "external construction"},
      {"Kurahashi_R3", Level::sigma(1), "exKur", "external construction"},
      {"PR_IV", Level::sigma(1), "WP4",
       "needs a computable relation defined by simultaneous fixed points"},
      {"PR_V", Level::sigma(1), "WP5",
       "Rosser-style witness comparison with a fixed-point parameter"},
  };
  return table;
}

}  // namespace

std::string to_string(ConVariant v) {
  switch (v) {
    case ConVariant::H: return "H";
    case ConVariant::L: return "L";
    case ConVariant::G: return "G";
    case ConVariant::Sigma1: return "Sigma1";
  }
  return "?";
}

ConVariant parse_con_variant(const std::string &s) {
  if (s == "H") return ConVariant::H;
  if (s == "L") return ConVariant::L;
  if (s == "G") return ConVariant::G;
  if (s == "Sigma1" || s == "S1") return ConVariant::Sigma1;
  throw GalleryError("unknown consistency variant: " + s);
}

FormulaPtr instantiate(const PredicateTemplate &phi, const TermPtr &t) {
  return substitute(phi.formula, "x", t);
}

FormulaPtr make_con(ConVariant v, const PredicateTemplate &phi) {
  auto P = [&](const TermPtr &t) { return instantiate(phi, t); };
  auto fml = atom("Fml", {x()});
  switch (v) {
    case ConVariant::H:
      return forall("x", limp(land(fml, P(x())),
                              lnot(P(fun("neg", {x()})))));
    case ConVariant::L: return lnot(P(falsum_code()));
    case ConVariant::G: return exists("x", land(fml, lnot(P(x()))));
    case ConVariant::Sigma1:
      return exists("x", land(land(atom("Sigma", {lit(1), x()}),
                                   atom("Sent", {x()})),
                              lnot(P(x()))));
  }
  return nullptr;
}

PredicateTemplate pr_delta(const FormulaPtr &delta, const std::string &name) {
  if (!is_in(delta, Level::delta0()))
    throw GalleryError("delta must be Delta0 or a registered Delta1 atom: " +
                       print(delta));
  for (auto &v : free_vars(delta))
    if (v != "x" && v != "z")
      throw GalleryError("delta has a free variable other than x, z: " + v);
  auto guard = bforall("z", var("y"),
                       limp(atom("Prf", {falsum_code(), var("z")}), delta), true);
  auto f = exists("y", land(atom("Prf", {x(), var("y")}), guard));
  return {name.empty() ? "PR[" + print(delta) + "]" : name, f, Level::sigma(1),
          "defPRdelta"};
}

PredicateTemplate parity_normalize(const PredicateTemplate &t) {
  if (count_logical_symbols(t.formula) % 2 == 1) return t;
  PredicateTemplate out = t;
  out.formula = land(t.formula, eq(zero(), zero()));
  return out;
}

PredicateTemplate standard_pr() {
  return {"PR_T", pr("Prf", x()), Level::sigma(1), "defPR"};
}

const std::vector<FormulaPtr> &q_axioms() {
  static const std::vector<FormulaPtr> axioms = {
      parse("!A x ~(s(x) = 0)"),
      parse("!A x !A y (s(x) = s(y) -> x = y)"),
      parse("!A x (~(x = 0) -> !E y (x = s(y)))"),
      parse("!A x (x + 0 = x)"),
      parse("!A x !A y (x + s(y) = s(x + y))"),
      parse("!A x (x * 0 = 0)"),
      parse("!A x !A y (x * s(y) = x * y + x)"),
  };
  return axioms;
}

std::vector<std::string> catalog() {
  std::vector<std::string> names = {"PR_T", "T0",     "PR_Q",   "Psi",
                                    "Mostowski", "PR_I", "PR_II", "PR_III",
                                    "PR_VI", "PR_star", "FDT"};
  for (auto &m : metadata()) names.push_back(m.name);
  return names;
}

GalleryEntry gallery(const std::string &name) {
  if (name == "PR_T") return standard_pr();
  if (name == "T0") return finite_numeration();
  if (name == "PR_Q")
    return PredicateTemplate{"PR_Q", pr("PrfT0", x()), Level::sigma(1), "exQ"};
  if (name == "Psi")
    return PredicateTemplate{"Psi", neq(x(), x()), Level::delta0(), "exN"};
  if (name == "Mostowski") {
    auto f = exists("y", land(atom("Prf", {x(), var("y")}),
                              lnot(atom("Prf", {falsum_code(), var("y")}))));
    return PredicateTemplate{"Mostowski", f, Level::sigma(1), "exMos"};
  }
  if (name == "PR_I") {
    auto t = parity_normalize(pr_delta(parse("x <= z | Atom[Even](x)"), "PR_I"));
    t.citation = "WP1";
    return t;
  }
  if (name == "PR_II") {
    auto t = pr_delta(parse("Fun[n](x) <= z | Atom[Even](x)"), "PR_II");
    t.citation = "WP2";
    return t;
  }
  if (name == "PR_III") {
    auto t = pr_delta(parse("Atom[Sigma](z, x)"), "PR_III");
    t.citation = "WP3";
    return t;
  }
  if (name == "PR_VI") return pr_vi();
  if (name == "PR_star") return pr_star();
  if (name == "FDT") return fdt();
  for (auto &m : metadata())
    if (m.name == name) return m;
  throw GalleryError("unknown gallery entry: " + name);
}

nlohmann::json to_json(const GalleryEntry &e) {
  if (auto *t = std::get_if<PredicateTemplate>(&e))
    return {{"name", t->name},
            {"kind", "template"},
            {"formula", print(t->formula)},
            {"declared_level", t->declared_level.str()},
            {"classified_level", classify(t->formula).str()},
            {"citation", t->citation}};
  auto &m = std::get<MetadataOnly>(e);
  return {{"name", m.name},
          {"kind", "metadata"},
          {"declared_level", m.declared_level.str()},
          {"citation", m.citation},
          {"reason", m.reason}};
}

}  // namespace provlab
