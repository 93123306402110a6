// Quantifier-free formulas to existentially quantified disjunctions of
// equation systems whose right-hand sides have complexity at most 1.

#ifndef PROVLAB_FLATTEN_HPP_
#define PROVLAB_FLATTEN_HPP_

#include <optional>

#include "provlab/syntax.hpp"

namespace provlab {

struct FlattenError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

constexpr unsigned kMaxLiterals = 12;

struct Equation {
  std::string lhs;
  TermPtr rhs;
};

struct EquationSystem {
  std::vector<Equation> equations;
  std::vector<std::string> auxiliaries;  // introduced by flattening
};

struct MTLNormalForm {
  std::vector<std::string> existential_vars;
  std::vector<EquationSystem> disjuncts;
};

// nnf, then t0 = t1 becomes Ez (z = t0 & z = t1) and ~(t0 = t1) becomes
// Ez0 Ez1 (t0 + s(z0) = t1 | t1 + s(z1) = t0), with the new quantifiers
// in front.
FormulaPtr eliminate_atoms(const FormulaPtr &phi);

// One decomposition of the first equation with complexity above 1.
EquationSystem flatten_step(const EquationSystem &sys);
EquationSystem flatten_terms(const std::vector<Equation> &sys);
bool is_flat(const EquationSystem &sys);

MTLNormalForm mtl_normal_form(const FormulaPtr &phi);

// E vars (D0 | D1 | ...), each Di the conjunction of its equations.
FormulaPtr to_formula(const MTLNormalForm &nf);
FormulaPtr to_formula(const EquationSystem &sys);

struct OracleResult {
  bool equivalent = true;
  unsigned long assignments = 0;
  std::optional<Assignment> counterexample;
  bool phi_value = false, nf_value = false;  // at the counterexample
};

// Exhaustive over free variables in {0..domain_bound}; existential values
// are searched up to the largest value of a term of phi plus domain_bound
// plus slack.
OracleResult oracle_check(const FormulaPtr &phi, const MTLNormalForm &nf,
                          unsigned domain_bound, unsigned slack = 0);
bool equivalence_oracle(const FormulaPtr &phi, const MTLNormalForm &nf,
                        unsigned domain_bound);

// Does some choice of the existentials satisfy a disjunct under `a`?
bool nf_holds(const MTLNormalForm &nf, const Assignment &a, const Nat &limit);

nlohmann::json to_json(const EquationSystem &sys);
nlohmann::json to_json(const MTLNormalForm &nf);
nlohmann::json to_json(const OracleResult &r);

}  // namespace provlab

#endif
