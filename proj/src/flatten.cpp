#include "provlab/flatten.hpp"

#include <algorithm>
#include <functional>

namespace provlab {

namespace {

class Names {
 public:
  explicit Names(std::set<std::string> used) : used_(std::move(used)) {}

  std::string split() { return next("z", z_); }
  std::string aux() { return next("w", w_); }
  void reserve(const std::string &v) { used_.insert(v); }

 private:
  std::string next(const std::string &base, unsigned &i) {
    std::string s;
    do s = base + std::to_string(i++);
    while (used_.count(s));
    used_.insert(s);
    return s;
  }

  std::set<std::string> used_;
  unsigned z_ = 0, w_ = 1;
};

void term_vars(const TermPtr &t, std::set<std::string> &out) {
  if (t->kind == TermKind::Var) out.insert(t->name);
  for (auto &a : t->args) term_vars(a, out);
}

unsigned count_literals(const FormulaPtr &f) {
  unsigned n = f->kind == FormulaKind::Eq || f->kind == FormulaKind::Atom;
  for (auto &s : f->subs) n += count_literals(s);
  return n;
}

void check_input(const FormulaPtr &phi) {
  if (!quantifier_free(phi)) throw FlattenError("quantifier in input");
  if (!core_signature(phi))
    throw FlattenError("input uses symbols outside 0, s, +, *");
  if (count_literals(phi) > kMaxLiterals)
    throw FlattenError("more than " + std::to_string(kMaxLiterals) +
                       " literals");
}

// The positive matrix after atom elimination, with its new variables.
FormulaPtr eliminate(const FormulaPtr &f, Names &names,
                     std::vector<std::string> &prefix) {
  switch (f->kind) {
    case FormulaKind::Eq: {
      auto z = names.split();
      prefix.push_back(z);
      return land(eq(var(z), f->terms[0]), eq(var(z), f->terms[1]));
    }
    case FormulaKind::Not: {
      auto &e = f->subs[0];
      auto z0 = names.split(), z1 = names.split();
      prefix.push_back(z0);
      prefix.push_back(z1);
      auto t0 = e->terms[0], t1 = e->terms[1];
      return lor(eq(add(t0, succ(var(z0))), t1),
                 eq(add(t1, succ(var(z1))), t0));
    }
    case FormulaKind::And:
      return land(eliminate(f->subs[0], names, prefix),
                  eliminate(f->subs[1], names, prefix));
    case FormulaKind::Or:
      return lor(eliminate(f->subs[0], names, prefix),
                 eliminate(f->subs[1], names, prefix));
    default: throw FlattenError("unexpected connective after nnf");
  }
}

using Clause = std::vector<FormulaPtr>;

std::vector<Clause> dnf(const FormulaPtr &f) {
  if (f->kind == FormulaKind::Eq) return {{f}};
  auto a = dnf(f->subs[0]), b = dnf(f->subs[1]);
  if (f->kind == FormulaKind::Or) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }
  std::vector<Clause> out;
  for (auto &x : a)
    for (auto &y : b) {
      Clause c = x;
      c.insert(c.end(), y.begin(), y.end());
      out.push_back(c);
    }
  return out;
}

TermPtr rebuild(const TermPtr &t, std::vector<TermPtr> args) {
  switch (t->kind) {
    case TermKind::Succ: return succ(args[0]);
    case TermKind::Add: return add(args[0], args[1]);
    case TermKind::Mul: return mul(args[0], args[1]);
    default: return t;
  }
}

// Replace every non-variable argument of the rhs by a fresh variable.
std::vector<Equation> decompose(const Equation &e, Names &names,
                                std::vector<std::string> &aux) {
  std::vector<TermPtr> args;
  std::vector<Equation> pending;
  for (auto &a : e.rhs->args) {
    if (a->kind == TermKind::Var) {
      args.push_back(a);
      continue;
    }
    auto w = names.aux();
    aux.push_back(w);
    args.push_back(var(w));
    pending.push_back({w, a});
  }
  std::vector<Equation> out = {{e.lhs, rebuild(e.rhs, args)}};
  out.insert(out.end(), pending.begin(), pending.end());
  return out;
}

void flatten_into(const Equation &e, Names &names, EquationSystem &out) {
  if (term_complexity(e.rhs) <= 1) {
    out.equations.push_back(e);
    return;
  }
  auto parts = decompose(e, names, out.auxiliaries);
  out.equations.push_back(parts[0]);
  for (size_t i = 1; i < parts.size(); ++i) flatten_into(parts[i], names, out);
}

std::set<std::string> system_vars(const std::vector<Equation> &sys) {
  std::set<std::string> s;
  for (auto &e : sys) {
    s.insert(e.lhs);
    term_vars(e.rhs, s);
  }
  return s;
}

// ------------------------------------------------------------ solving

using Partial = std::map<std::string, Nat>;

std::optional<Nat> lookup(const Partial &p, const TermPtr &t) {
  auto it = p.find(t->name);
  if (it == p.end()) return std::nullopt;
  return it->second;
}

bool all_known(const Partial &p, const TermPtr &t) {
  if (t->kind == TermKind::Var) return p.count(t->name);
  for (auto &a : t->args)
    if (!all_known(p, a)) return false;
  return true;
}

enum class Step { Conflict, Progress, Stuck, Done };

// Set v := n, or check it when already set.
Step assign(Partial &p, const std::string &v, const Nat &n) {
  auto it = p.find(v);
  if (it != p.end()) return it->second == n ? Step::Done : Step::Conflict;
  if (n < 0) return Step::Conflict;
  p[v] = n;
  return Step::Progress;
}

// Forward evaluation when the rhs is known, backward solving for the
// flat shapes otherwise.
Step propagate(const Equation &e, Partial &p) {
  if (all_known(p, e.rhs)) return assign(p, e.lhs, eval_term(e.rhs, p));
  auto v = p.find(e.lhs);
  if (v == p.end()) return Step::Stuck;
  const Nat &n = v->second;
  auto &r = e.rhs;
  auto is_var = [](const TermPtr &t) { return t->kind == TermKind::Var; };
  switch (r->kind) {
    case TermKind::Var: return assign(p, r->name, n);
    case TermKind::Succ:
      if (!is_var(r->args[0])) return Step::Stuck;
      if (n == 0) return Step::Conflict;
      return assign(p, r->args[0]->name, n - 1);
    case TermKind::Add:
    case TermKind::Mul: {
      auto &a = r->args[0], &b = r->args[1];
      if (!is_var(a) || !is_var(b)) return Step::Stuck;
      bool plus = r->kind == TermKind::Add;
      if (a->name == b->name) {
        if (plus) {
          if (n % 2 != 0) return Step::Conflict;
          return assign(p, a->name, n / 2);
        }
        Nat s = sqrt(n);
        if (s * s != n) return Step::Conflict;
        return assign(p, a->name, s);
      }
      auto ka = lookup(p, a), kb = lookup(p, b);
      const TermPtr &unknown = ka ? b : a;
      std::optional<Nat> known = ka ? ka : kb;
      if (!known) return Step::Stuck;
      if (plus) {
        if (*known > n) return Step::Conflict;
        return assign(p, unknown->name, n - *known);
      }
      if (*known == 0) return n == 0 ? Step::Stuck : Step::Conflict;
      if (n % *known != 0) return Step::Conflict;
      return assign(p, unknown->name, n / *known);
    }
    default: return Step::Stuck;
  }
}

bool solve(const std::vector<Equation> &eqs, Partial p, const Nat &limit) {
  for (;;) {
    bool progress = false, open = false;
    for (auto &e : eqs) {
      Step s = propagate(e, p);
      if (s == Step::Conflict) return false;
      if (s == Step::Progress) progress = true;
      if (s == Step::Stuck) open = true;
    }
    if (!open) return true;
    if (!progress) break;
  }
  // Branch on the first unknown variable of an open equation.
  std::string pick;
  for (auto &e : eqs) {
    std::set<std::string> vs = {e.lhs};
    term_vars(e.rhs, vs);
    for (auto &v : vs)
      if (!p.count(v)) {
        pick = v;
        break;
      }
    if (!pick.empty()) break;
  }
  for (Nat n = 0; n <= limit; ++n) {
    Partial q = p;
    q[pick] = n;
    if (solve(eqs, q, limit)) return true;
  }
  return false;
}

void max_term_value(const TermPtr &t, const Assignment &a, Nat &best) {
  Nat v = eval_term(t, a);
  if (v > best) best = v;
  for (auto &x : t->args) max_term_value(x, a, best);
}

void max_value(const FormulaPtr &f, const Assignment &a, Nat &best) {
  for (auto &t : f->terms) max_term_value(t, a, best);
  for (auto &s : f->subs) max_value(s, a, best);
}

}  // namespace

FormulaPtr eliminate_atoms(const FormulaPtr &phi) {
  check_input(phi);
  Names names(all_vars(phi));
  std::vector<std::string> prefix;
  FormulaPtr m = eliminate(nnf(phi), names, prefix);
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) m = exists(*it, m);
  return m;
}

EquationSystem flatten_step(const EquationSystem &sys) {
  EquationSystem out = sys;
  Names names(system_vars(sys.equations));
  for (size_t i = 0; i < sys.equations.size(); ++i) {
    if (term_complexity(sys.equations[i].rhs) <= 1) continue;
    auto parts = decompose(sys.equations[i], names, out.auxiliaries);
    out.equations.erase(out.equations.begin() + i);
    out.equations.insert(out.equations.begin() + i, parts.begin(), parts.end());
    break;
  }
  return out;
}

EquationSystem flatten_terms(const std::vector<Equation> &sys) {
  Names names(system_vars(sys));
  EquationSystem out;
  for (auto &e : sys) flatten_into(e, names, out);
  return out;
}

bool is_flat(const EquationSystem &sys) {
  return std::all_of(sys.equations.begin(), sys.equations.end(),
                     [](const Equation &e) { return term_complexity(e.rhs) <= 1; });
}

MTLNormalForm mtl_normal_form(const FormulaPtr &phi) {
  check_input(phi);
  Names names(all_vars(phi));
  MTLNormalForm nf;
  FormulaPtr matrix = eliminate(nnf(phi), names, nf.existential_vars);
  for (auto &clause : dnf(matrix)) {
    std::vector<Equation> eqs;
    for (auto &lit : clause) {
      auto &a = lit->terms[0], &b = lit->terms[1];
      if (a->kind == TermKind::Var) {
        eqs.push_back({a->name, b});
      } else if (b->kind == TermKind::Var) {
        eqs.push_back({b->name, a});
      } else {
        auto z = names.split();
        nf.existential_vars.push_back(z);
        eqs.push_back({z, a});
        eqs.push_back({z, b});
      }
    }
    EquationSystem sys;
    for (auto &e : eqs) flatten_into(e, names, sys);
    nf.existential_vars.insert(nf.existential_vars.end(),
                               sys.auxiliaries.begin(), sys.auxiliaries.end());
    nf.disjuncts.push_back(std::move(sys));
  }
  return nf;
}

FormulaPtr to_formula(const EquationSystem &sys) {
  FormulaPtr f;
  for (auto &e : sys.equations) {
    auto g = eq(var(e.lhs), e.rhs);
    f = f ? land(f, g) : g;
  }
  return f ? f : eq(zero(), zero());
}

FormulaPtr to_formula(const MTLNormalForm &nf) {
  FormulaPtr f;
  for (auto &d : nf.disjuncts) {
    auto g = to_formula(d);
    f = f ? lor(f, g) : g;
  }
  if (!f) f = lnot(eq(zero(), zero()));
  for (auto it = nf.existential_vars.rbegin(); it != nf.existential_vars.rend();
       ++it)
    f = exists(*it, f);
  return f;
}

bool nf_holds(const MTLNormalForm &nf, const Assignment &a, const Nat &limit) {
  for (auto &d : nf.disjuncts) {
    Partial p;
    std::set<std::string> ex(nf.existential_vars.begin(),
                             nf.existential_vars.end());
    for (auto &[k, v] : a)
      if (!ex.count(k)) p[k] = v;
    if (solve(d.equations, p, limit)) return true;
  }
  return false;
}

OracleResult oracle_check(const FormulaPtr &phi, const MTLNormalForm &nf,
                          unsigned domain_bound, unsigned slack) {
  OracleResult r;
  auto fv = free_vars(phi);
  std::vector<std::string> vars(fv.begin(), fv.end());
  std::set<std::string> ex(nf.existential_vars.begin(),
                           nf.existential_vars.end());
  for (auto &d : nf.disjuncts)
    for (auto &v : system_vars(d.equations))
      if (!fv.count(v) && !ex.count(v)) {
        r.equivalent = false;
        return r;
      }
  std::vector<unsigned> digits(vars.size(), 0);
  for (;;) {
    Assignment a;
    for (size_t i = 0; i < vars.size(); ++i) a[vars[i]] = digits[i];
    ++r.assignments;
    bool lhs = evaluate(phi, a, 0) == Verdict::True;
    Nat limit = 0;
    max_value(phi, a, limit);
    limit += domain_bound + slack;
    bool rhs = nf_holds(nf, a, limit);
    if (lhs != rhs) {
      r.equivalent = false;
      r.counterexample = a;
      r.phi_value = lhs;
      r.nf_value = rhs;
      return r;
    }
    size_t i = 0;
    while (i < digits.size() && digits[i] == domain_bound) digits[i++] = 0;
    if (i == digits.size()) break;
    ++digits[i];
  }
  return r;
}

bool equivalence_oracle(const FormulaPtr &phi, const MTLNormalForm &nf,
                        unsigned domain_bound) {
  return oracle_check(phi, nf, domain_bound).equivalent;
}

nlohmann::json to_json(const EquationSystem &sys) {
  nlohmann::json eqs = nlohmann::json::array();
  for (auto &e : sys.equations)
    eqs.push_back({{"lhs", e.lhs}, {"rhs", print(e.rhs)}});
  return {{"equations", eqs}, {"auxiliaries", sys.auxiliaries}};
}

nlohmann::json to_json(const MTLNormalForm &nf) {
  nlohmann::json ds = nlohmann::json::array();
  for (auto &d : nf.disjuncts) ds.push_back(to_json(d));
  return {{"existential_vars", nf.existential_vars}, {"disjuncts", ds}};
}

nlohmann::json to_json(const OracleResult &r) {
  nlohmann::json j = {{"equivalent", r.equivalent},
                      {"assignments", r.assignments}};
  if (r.counterexample) {
    nlohmann::json a = nlohmann::json::object();
    for (auto &[k, v] : *r.counterexample) a[k] = v.get_str();
    j["counterexample"] = a;
    j["phi"] = r.phi_value;
    j["normal_form"] = r.nf_value;
  }
  return j;
}

}  // namespace provlab
