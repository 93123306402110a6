// Random syntax generators shared by the property tests.

#ifndef PROVLAB_TESTS_GEN_HPP_
#define PROVLAB_TESTS_GEN_HPP_

#include <random>
#include <string>
#include <vector>

#include "provlab/modal.hpp"
#include "provlab/syntax.hpp"

namespace gen {

using namespace provlab;
using Rng = std::mt19937_64;

inline unsigned pick(Rng &r, unsigned n) {
  return std::uniform_int_distribution<unsigned>(0, n - 1)(r);
}

struct TermOpts {
  std::vector<std::string> vars = {"x", "y", "z"};
  bool extras = false;  // literals and function symbols
};

inline TermPtr term(Rng &r, unsigned depth, const TermOpts &o = {}) {
  if (depth <= 1 || pick(r, 4) == 0) {
    unsigned k = pick(r, o.extras ? 3 : 2);
    if (k == 0) return zero();
    if (k == 1) return var(o.vars[pick(r, o.vars.size())]);
    return lit(1 + pick(r, 50));
  }
  unsigned k = pick(r, o.extras ? 5 : 3);
  switch (k) {
    case 0: return succ(term(r, depth - 1, o));
    case 1: return add(term(r, depth - 1, o), term(r, depth - 1, o));
    case 2: return mul(term(r, depth - 1, o), term(r, depth - 1, o));
    case 3: return fun("neg", {term(r, depth - 1, o)});
    default: return fun("sub", {term(r, depth - 1, o), term(r, depth - 1, o)});
  }
}

struct FormulaOpts {
  std::vector<std::string> vars = {"x", "y", "z"};
  bool quantifiers = true;
  bool unbounded = true;
  bool atoms = true;       // registered atoms, printed as Atom[..]
  bool executable = false; // only atoms with an interpretation
  unsigned term_depth = 3;
};

inline FormulaPtr formula(Rng &r, unsigned depth, const FormulaOpts &o) {
  TermOpts to{o.vars, !o.executable};
  if (depth <= 1 || pick(r, 5) == 0) {
    unsigned k = pick(r, o.atoms ? 3 : 1);
    if (k == 0 || k == 2 && o.executable)
      return eq(term(r, o.term_depth, to), term(r, o.term_depth, to));
    if (k == 1 && o.executable)
      return atom("Le", {term(r, o.term_depth, to), term(r, o.term_depth, to)});
    static const char *names[] = {"Prf", "Le", "PrfA0"};
    if (k == 1)
      return atom(names[pick(r, 3)],
                  {term(r, o.term_depth, to), term(r, o.term_depth, to)});
    return pick(r, 2) ? atom("Phi", {term(r, o.term_depth, to)})
                      : atom("Xi", {});
  }
  unsigned k = pick(r, o.quantifiers ? 6 : 4);
  auto sub = [&] { return formula(r, depth - 1, o); };
  switch (k) {
    case 0: return lnot(sub());
    case 1: return land(sub(), sub());
    case 2: return lor(sub(), sub());
    case 3: return limp(sub(), sub());
    default: {
      std::string v = o.vars[pick(r, o.vars.size())];
      unsigned q = pick(r, o.unbounded ? 4 : 2);
      if (q < 2) {
        // Small bounds keep evaluation cheap.
        TermPtr b = term(r, 2, TermOpts{o.vars, false});
        bool strict = pick(r, 2) == 0;
        return q == 0 ? bforall(v, b, sub(), strict)
                      : bexists(v, b, sub(), strict);
      }
      return q == 2 ? forall(v, sub()) : exists(v, sub());
    }
  }
}

inline ModalPtr modal(Rng &r, unsigned depth, bool bimodal,
                      const std::vector<std::string> &vars = {"p", "q"}) {
  if (depth == 0 || pick(r, 4) == 0) {
    if (pick(r, 5) == 0) return mbot();
    return mvar(vars[pick(r, vars.size())]);
  }
  switch (pick(r, 6)) {
    case 0: return mnot(modal(r, depth - 1, bimodal, vars));
    case 1: return mand(modal(r, depth - 1, bimodal, vars),
                        modal(r, depth - 1, bimodal, vars));
    case 2: return mor(modal(r, depth - 1, bimodal, vars),
                       modal(r, depth - 1, bimodal, vars));
    case 3: return mimp(modal(r, depth - 1, bimodal, vars),
                        modal(r, depth - 1, bimodal, vars));
    default: return mbox(bimodal ? pick(r, 2) : 0,
                         modal(r, depth - 1, bimodal, vars));
  }
}

}  // namespace gen

#endif
