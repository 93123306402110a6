// Goedel numbering by tagged Cantor pairing.
//
//   gn(node) = pair(tag, payload)
//
// Succ has tag 0, so gn(s(t)) = pair(0, gn(t)).  Lists are coded as
// 0 for the empty list and pair(head, tail) + 1 otherwise.  Identifiers are
// read as base-128 digits behind a leading 1.

#ifndef PROVLAB_CODING_HPP_
#define PROVLAB_CODING_HPP_

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "provlab/syntax.hpp"

namespace provlab {

namespace tag {
// Terms
constexpr unsigned Succ = 0, Zero = 1, Var = 2, Add = 3, Mul = 4, Lit = 5,
                   Fun = 6;
// Formulas
constexpr unsigned Eq = 7, Atom = 8, Not = 9, And = 10, Or = 11, Imp = 12,
                   Forall = 13, Exists = 14, BForall = 15, BExists = 16,
                   BForallLt = 17, BExistsLt = 18;
constexpr unsigned Count = 19;
}  // namespace tag

struct DecodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Nat pair(const Nat &a, const Nat &b);
std::pair<Nat, Nat> unpair(const Nat &z);

Nat encode_name(const std::string &s);
std::string decode_name(const Nat &n);  // throws DecodeError

Nat gn(const TermPtr &t);
Nat gn(const FormulaPtr &f);

// Throw DecodeError unless `n` is the code of a term (resp. formula).
TermPtr decode_term(const Nat &n);
FormulaPtr decode_formula(const Nat &n);
bool is_formula_code(const Nat &n);

// s applied n times to 0.  Refuses sizes that cannot be materialized.
TermPtr numeral(const Nat &n);
Nat num_value(const Nat &n);

// gn of phi with numeral(A(x)) substituted for every free x.
Nat dotted_instance(const FormulaPtr &phi, const Assignment &a);

// The variable that sub acts on.
inline const std::string kDiagVar = "x";

// Closed name used for a code inside formulas: 0 for zero, otherwise the
// compact literal.  Unary numerals of real codes are astronomically deep.
TermPtr code_term(const Nat &n);

// gn(phi[code_term(b)/x]) where phi is the formula coded by a.
Nat sub_eval(const Nat &a, const Nat &b);

nlohmann::json coding_scheme();
inline const char *kCodingVersion = "tag-pair-1";

}  // namespace provlab

#endif
