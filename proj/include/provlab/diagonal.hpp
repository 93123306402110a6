// Diagonalization: theta(x) := psi(sub(x, x)) and phi := theta(code of theta).

#ifndef PROVLAB_DIAGONAL_HPP_
#define PROVLAB_DIAGONAL_HPP_

#include "provlab/syntax.hpp"

namespace provlab {

struct FixedPointCertificate {
  FormulaPtr theta;
  FormulaPtr phi;
  Nat lhs;  // sub_eval(gn theta, gn theta)
  Nat rhs;  // gn phi
  bool holds() const { return lhs == rhs; }
};

struct FixedPoint {
  FormulaPtr sentence;
  FixedPointCertificate cert;
};

struct ContextError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The designated variable is the single free variable of psi; a closed
// psi is rejected.
FixedPoint fixed_point(const FormulaPtr &psi);
// Explicit designated variable; psi may be vacuous in it.
FixedPoint fixed_point(const FormulaPtr &psi, const std::string &designated);

// ~Phi(x) and Phi(neg(x)).
FormulaPtr godel_context();
FormulaPtr jeroslow_context();

}  // namespace provlab

#endif
