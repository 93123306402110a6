#include "provlab/diagonal.hpp"

#include "provlab/coding.hpp"

namespace provlab {

FixedPoint fixed_point(const FormulaPtr &psi) {
  auto fv = free_vars(psi);
  if (fv.empty()) throw ContextError("context is closed");
  if (fv.size() > 1) throw ContextError("context has several free variables");
  return fixed_point(psi, *fv.begin());
}

FixedPoint fixed_point(const FormulaPtr &psi, const std::string &designated) {
  for (auto &v : free_vars(psi))
    if (v != designated)
      throw ContextError("context has free variable " + v +
                         " besides the designated one");
  FormulaPtr ctx = psi;
  if (designated != kDiagVar) ctx = substitute(psi, designated, var(kDiagVar));

  FormulaPtr theta =
      substitute(ctx, kDiagVar, fun("sub", {var(kDiagVar), var(kDiagVar)}));
  Nat g = gn(theta);
  FormulaPtr phi = substitute(theta, kDiagVar, code_term(g));

  FixedPointCertificate cert{theta, phi, sub_eval(g, g), gn(phi)};
  return {phi, cert};
}

FormulaPtr godel_context() { return lnot(atom("Phi", {var("x")})); }

FormulaPtr jeroslow_context() {
  return atom("Phi", {fun("neg", {var("x")})});
}

}  // namespace provlab
