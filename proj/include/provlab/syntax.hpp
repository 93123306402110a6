// Terms and formulas of first-order arithmetic over {0, s, +, *}, plus
// registered extension atoms and function symbols.

#ifndef PROVLAB_SYNTAX_HPP_
#define PROVLAB_SYNTAX_HPP_

#include <gmpxx.h>

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace provlab {

using Nat = mpz_class;

struct Level {
  enum Class { Delta0, Sigma, Pi };
  Class cls = Delta0;
  unsigned index = 0;

  static Level delta0() { return {Delta0, 0}; }
  static Level sigma(unsigned n) { return {Sigma, n}; }
  static Level pi(unsigned n) { return {Pi, n}; }
  bool operator==(const Level &o) const {
    return cls == o.cls && (cls == Delta0 || index == o.index);
  }
  std::string str() const;  // "Delta0", "Sigma1", "Pi2"
};

std::optional<Level> parse_level(const std::string &s);

// ---------------------------------------------------------------- terms

enum class TermKind { Zero, Succ, Add, Mul, Var, Lit, Fun };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Lit is a compact closed name for a natural (never 0; see lit()).
// Fun applies a registered function symbol such as sub or neg.
struct Term {
  TermKind kind;
  std::string name;
  Nat value;
  std::vector<TermPtr> args;
};

TermPtr zero();
TermPtr succ(TermPtr t);
TermPtr add(TermPtr a, TermPtr b);
TermPtr mul(TermPtr a, TermPtr b);
TermPtr var(const std::string &name);
TermPtr lit(const Nat &n);  // lit(0) is zero()
TermPtr fun(const std::string &sym, std::vector<TermPtr> args);

// ------------------------------------------------------------- formulas

enum class FormulaKind {
  Eq, Atom, Not, And, Or, Imp, Forall, Exists, BForall, BExists
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Bounded quantifiers carry `strict` for the x < t form.
struct Formula {
  FormulaKind kind;
  std::string name;  // atom symbol or bound variable
  std::vector<TermPtr> terms;  // Eq: lhs, rhs; Atom: args; bounded: bound
  std::vector<FormulaPtr> subs;
  bool strict = false;
};

FormulaPtr eq(TermPtr a, TermPtr b);
FormulaPtr neq(TermPtr a, TermPtr b);
FormulaPtr atom(const std::string &sym, std::vector<TermPtr> args);
FormulaPtr lnot(FormulaPtr f);
FormulaPtr land(FormulaPtr a, FormulaPtr b);
FormulaPtr lor(FormulaPtr a, FormulaPtr b);
FormulaPtr limp(FormulaPtr a, FormulaPtr b);
FormulaPtr liff(FormulaPtr a, FormulaPtr b);
FormulaPtr forall(const std::string &v, FormulaPtr body);
FormulaPtr exists(const std::string &v, FormulaPtr body);
FormulaPtr bforall(const std::string &v, TermPtr bound, FormulaPtr body,
                   bool strict = false);
FormulaPtr bexists(const std::string &v, TermPtr bound, FormulaPtr body,
                   bool strict = false);

bool equal(const TermPtr &a, const TermPtr &b);
bool equal(const FormulaPtr &a, const FormulaPtr &b);

bool is_quantifier(FormulaKind k);
bool is_bounded(FormulaKind k);

// --------------------------------------------------------------- registry

using AtomInterp = std::function<bool(const std::vector<Nat> &)>;
using FunInterp = std::function<Nat(const std::vector<Nat> &)>;

struct AtomInfo {
  std::string name;
  unsigned arity;
  Level level;  // Delta1 atoms are registered as Delta0
  bool delta1;
  AtomInfo(std::string n, unsigned a, Level l, bool d1)
      : name(std::move(n)), arity(a), level(l), delta1(d1) {}
  AtomInfo() : arity(0), delta1(false) {}
};

struct FunInfo {
  std::string name;
  unsigned arity;
};

const AtomInfo *find_atom(const std::string &name);
const FunInfo *find_fun(const std::string &name);
const std::vector<AtomInfo> &atom_table();
const std::vector<FunInfo> &fun_table();

// Executable interpretations; empty when the symbol is uninterpreted.
AtomInterp atom_interp(const std::string &name);
FunInterp fun_interp(const std::string &name);

// ----------------------------------------------------------------- errors

struct SyntaxError : std::runtime_error {
  int line, column;
  SyntaxError(const std::string &msg, int l, int c);
};

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// -------------------------------------------------------- text and json

FormulaPtr parse(const std::string &text);
TermPtr parse_term(const std::string &text);
std::string print(const FormulaPtr &f);
std::string print(const TermPtr &t);

nlohmann::json to_json(const TermPtr &t);
nlohmann::json to_json(const FormulaPtr &f);

// ------------------------------------------------------------- operations

std::set<std::string> free_vars(const TermPtr &t);
std::set<std::string> free_vars(const FormulaPtr &f);
std::set<std::string> all_vars(const FormulaPtr &f);  // free and bound

// Smallest `base<i>` (i >= 1) not in `taken`; base has trailing digits
// stripped first.
std::string fresh_name(const std::string &base,
                       const std::set<std::string> &taken);

TermPtr substitute(const TermPtr &t, const std::string &v, const TermPtr &s);
FormulaPtr substitute(const FormulaPtr &f, const std::string &v,
                      const TermPtr &s);

FormulaPtr nnf(const FormulaPtr &f);

unsigned count_logical_symbols(const FormulaPtr &f);
unsigned count_negations(const FormulaPtr &f);
unsigned term_complexity(const TermPtr &t);
unsigned depth(const TermPtr &t);
unsigned depth(const FormulaPtr &f);

bool quantifier_free(const FormulaPtr &f);
// Only Eq atoms and terms built from 0, s, +, *, variables.
bool core_signature(const FormulaPtr &f);
bool core_signature(const TermPtr &t);

enum class Verdict { False, True, Unknown };
std::string to_string(Verdict v);

using Assignment = std::map<std::string, Nat>;

Nat eval_term(const TermPtr &t, const Assignment &a);
Verdict evaluate(const FormulaPtr &f, const Assignment &a,
                 unsigned long witness_bound);

}  // namespace provlab

#endif
