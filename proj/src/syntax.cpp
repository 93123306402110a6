#include "provlab/syntax.hpp"

#include <cctype>

namespace provlab {

std::string Level::str() const {
  switch (cls) {
    case Delta0: return "Delta0";
    case Sigma: return "Sigma" + std::to_string(index);
    case Pi: return "Pi" + std::to_string(index);
  }
  return "?";
}

std::optional<Level> parse_level(const std::string &s) {
  if (s == "Delta0" || s == "D0" || s == "delta0") return Level::delta0();
  auto num = [&](size_t from) -> std::optional<unsigned> {
    if (from >= s.size()) return std::nullopt;
    for (size_t i = from; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
    unsigned n = static_cast<unsigned>(std::stoul(s.substr(from)));
    if (n == 0) return std::nullopt;
    return n;
  };
  for (const char *p : {"Sigma", "sigma", "S"}) {
    std::string pre(p);
    if (s.rfind(pre, 0) == 0)
      if (auto n = num(pre.size())) return Level::sigma(*n);
  }
  for (const char *p : {"Pi", "pi", "P"}) {
    std::string pre(p);
    if (s.rfind(pre, 0) == 0)
      if (auto n = num(pre.size())) return Level::pi(*n);
  }
  return std::nullopt;
}

SyntaxError::SyntaxError(const std::string &msg, int l, int c)
    : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " +
                         msg),
      line(l), column(c) {}

// ----------------------------------------------------------- constructors

namespace {

TermPtr mk_term(TermKind k, std::string name, Nat value,
                std::vector<TermPtr> args) {
  return std::make_shared<const Term>(
      Term{k, std::move(name), std::move(value), std::move(args)});
}

FormulaPtr mk_formula(FormulaKind k, std::string name,
                      std::vector<TermPtr> terms,
                      std::vector<FormulaPtr> subs, bool strict = false) {
  return std::make_shared<const Formula>(Formula{
      k, std::move(name), std::move(terms), std::move(subs), strict});
}

}  // namespace

TermPtr zero() {
  static const TermPtr z = mk_term(TermKind::Zero, "", 0, {});
  return z;
}
TermPtr succ(TermPtr t) { return mk_term(TermKind::Succ, "", 0, {t}); }
TermPtr add(TermPtr a, TermPtr b) {
  return mk_term(TermKind::Add, "", 0, {a, b});
}
TermPtr mul(TermPtr a, TermPtr b) {
  return mk_term(TermKind::Mul, "", 0, {a, b});
}
TermPtr var(const std::string &name) {
  return mk_term(TermKind::Var, name, 0, {});
}
TermPtr lit(const Nat &n) {
  if (n < 0) throw std::invalid_argument("negative literal");
  if (n == 0) return zero();
  return mk_term(TermKind::Lit, "", n, {});
}
TermPtr fun(const std::string &sym, std::vector<TermPtr> args) {
  return mk_term(TermKind::Fun, sym, 0, std::move(args));
}

FormulaPtr eq(TermPtr a, TermPtr b) {
  return mk_formula(FormulaKind::Eq, "", {a, b}, {});
}
FormulaPtr neq(TermPtr a, TermPtr b) { return lnot(eq(a, b)); }
FormulaPtr atom(const std::string &sym, std::vector<TermPtr> args) {
  return mk_formula(FormulaKind::Atom, sym, std::move(args), {});
}
FormulaPtr lnot(FormulaPtr f) {
  return mk_formula(FormulaKind::Not, "", {}, {f});
}
FormulaPtr land(FormulaPtr a, FormulaPtr b) {
  return mk_formula(FormulaKind::And, "", {}, {a, b});
}
FormulaPtr lor(FormulaPtr a, FormulaPtr b) {
  return mk_formula(FormulaKind::Or, "", {}, {a, b});
}
FormulaPtr limp(FormulaPtr a, FormulaPtr b) {
  return mk_formula(FormulaKind::Imp, "", {}, {a, b});
}
FormulaPtr liff(FormulaPtr a, FormulaPtr b) {
  return land(limp(a, b), limp(b, a));
}
FormulaPtr forall(const std::string &v, FormulaPtr body) {
  return mk_formula(FormulaKind::Forall, v, {}, {body});
}
FormulaPtr exists(const std::string &v, FormulaPtr body) {
  return mk_formula(FormulaKind::Exists, v, {}, {body});
}
FormulaPtr bforall(const std::string &v, TermPtr bound, FormulaPtr body,
                   bool strict) {
  return mk_formula(FormulaKind::BForall, v, {bound}, {body}, strict);
}
FormulaPtr bexists(const std::string &v, TermPtr bound, FormulaPtr body,
                   bool strict) {
  return mk_formula(FormulaKind::BExists, v, {bound}, {body}, strict);
}

bool is_quantifier(FormulaKind k) {
  return k == FormulaKind::Forall || k == FormulaKind::Exists ||
         k == FormulaKind::BForall || k == FormulaKind::BExists;
}
bool is_bounded(FormulaKind k) {
  return k == FormulaKind::BForall || k == FormulaKind::BExists;
}

bool equal(const TermPtr &a, const TermPtr &b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->name != b->name || a->value != b->value ||
      a->args.size() != b->args.size())
    return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!equal(a->args[i], b->args[i])) return false;
  return true;
}

bool equal(const FormulaPtr &a, const FormulaPtr &b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->name != b->name || a->strict != b->strict ||
      a->terms.size() != b->terms.size() || a->subs.size() != b->subs.size())
    return false;
  for (size_t i = 0; i < a->terms.size(); ++i)
    if (!equal(a->terms[i], b->terms[i])) return false;
  for (size_t i = 0; i < a->subs.size(); ++i)
    if (!equal(a->subs[i], b->subs[i])) return false;
  return true;
}

// ------------------------------------------------------------- variables

namespace {

void collect(const TermPtr &t, std::set<std::string> &out) {
  if (t->kind == TermKind::Var) out.insert(t->name);
  for (auto &a : t->args) collect(a, out);
}

void collect_free(const FormulaPtr &f, std::set<std::string> &out) {
  for (auto &t : f->terms) collect(t, out);
  if (is_quantifier(f->kind)) {
    std::set<std::string> inner;
    collect_free(f->subs[0], inner);
    inner.erase(f->name);
    out.insert(inner.begin(), inner.end());
    return;
  }
  for (auto &s : f->subs) collect_free(s, out);
}

void collect_all(const FormulaPtr &f, std::set<std::string> &out) {
  for (auto &t : f->terms) collect(t, out);
  if (is_quantifier(f->kind)) out.insert(f->name);
  for (auto &s : f->subs) collect_all(s, out);
}

}  // namespace

std::set<std::string> free_vars(const TermPtr &t) {
  std::set<std::string> out;
  collect(t, out);
  return out;
}

std::set<std::string> free_vars(const FormulaPtr &f) {
  std::set<std::string> out;
  collect_free(f, out);
  return out;
}

std::set<std::string> all_vars(const FormulaPtr &f) {
  std::set<std::string> out;
  collect_all(f, out);
  return out;
}

std::string fresh_name(const std::string &base,
                       const std::set<std::string> &taken) {
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back())))
    stem.pop_back();
  if (stem.empty()) stem = "v";
  for (unsigned i = 1;; ++i) {
    std::string cand = stem + std::to_string(i);
    if (!taken.count(cand)) return cand;
  }
}

// ----------------------------------------------------------- substitution

TermPtr substitute(const TermPtr &t, const std::string &v, const TermPtr &s) {
  if (t->kind == TermKind::Var) return t->name == v ? s : t;
  if (t->args.empty()) return t;
  std::vector<TermPtr> args;
  bool changed = false;
  for (auto &a : t->args) {
    args.push_back(substitute(a, v, s));
    changed |= args.back() != a;
  }
  if (!changed) return t;
  return mk_term(t->kind, t->name, t->value, std::move(args));
}

FormulaPtr substitute(const FormulaPtr &f, const std::string &v,
                      const TermPtr &s) {
  std::vector<TermPtr> terms;
  for (auto &t : f->terms) terms.push_back(substitute(t, v, s));

  if (is_quantifier(f->kind)) {
    const FormulaPtr &body = f->subs[0];
    if (f->name == v || !free_vars(body).count(v))
      return mk_formula(f->kind, f->name, terms, {body}, f->strict);
    auto sv = free_vars(s);
    std::string bound = f->name;
    FormulaPtr b = body;
    if (sv.count(bound)) {
      std::set<std::string> taken = all_vars(body);
      taken.insert(sv.begin(), sv.end());
      taken.insert(v);
      bound = fresh_name(f->name, taken);
      b = substitute(body, f->name, var(bound));
    }
    return mk_formula(f->kind, bound, terms, {substitute(b, v, s)},
                      f->strict);
  }

  std::vector<FormulaPtr> subs;
  for (auto &g : f->subs) subs.push_back(substitute(g, v, s));
  return mk_formula(f->kind, f->name, std::move(terms), std::move(subs),
                    f->strict);
}

// -------------------------------------------------------------------- nnf

namespace {

FormulaPtr nnf_neg(const FormulaPtr &f);

FormulaPtr nnf_pos(const FormulaPtr &f) {
  switch (f->kind) {
    case FormulaKind::Eq:
    case FormulaKind::Atom:
      return f;
    case FormulaKind::Not:
      return nnf_neg(f->subs[0]);
    case FormulaKind::And:
      return land(nnf_pos(f->subs[0]), nnf_pos(f->subs[1]));
    case FormulaKind::Or:
      return lor(nnf_pos(f->subs[0]), nnf_pos(f->subs[1]));
    case FormulaKind::Imp:
      return lor(nnf_neg(f->subs[0]), nnf_pos(f->subs[1]));
    default:
      return mk_formula(f->kind, f->name, f->terms, {nnf_pos(f->subs[0])},
                        f->strict);
  }
}

FormulaPtr nnf_neg(const FormulaPtr &f) {
  switch (f->kind) {
    case FormulaKind::Eq:
    case FormulaKind::Atom:
      return lnot(f);
    case FormulaKind::Not:
      return nnf_pos(f->subs[0]);
    case FormulaKind::And:
      return lor(nnf_neg(f->subs[0]), nnf_neg(f->subs[1]));
    case FormulaKind::Or:
      return land(nnf_neg(f->subs[0]), nnf_neg(f->subs[1]));
    case FormulaKind::Imp:
      return land(nnf_pos(f->subs[0]), nnf_neg(f->subs[1]));
    case FormulaKind::Forall:
      return exists(f->name, nnf_neg(f->subs[0]));
    case FormulaKind::Exists:
      return forall(f->name, nnf_neg(f->subs[0]));
    case FormulaKind::BForall:
      return bexists(f->name, f->terms[0], nnf_neg(f->subs[0]), f->strict);
    case FormulaKind::BExists:
      return bforall(f->name, f->terms[0], nnf_neg(f->subs[0]), f->strict);
  }
  return f;
}

}  // namespace

FormulaPtr nnf(const FormulaPtr &f) { return nnf_pos(f); }

// --------------------------------------------------------------- measures

unsigned count_logical_symbols(const FormulaPtr &f) {
  unsigned n = (f->kind == FormulaKind::Eq || f->kind == FormulaKind::Atom)
                   ? 0 : 1;
  for (auto &s : f->subs) n += count_logical_symbols(s);
  return n;
}

unsigned count_negations(const FormulaPtr &f) {
  unsigned n = f->kind == FormulaKind::Not ? 1 : 0;
  for (auto &s : f->subs) n += count_negations(s);
  return n;
}

unsigned term_complexity(const TermPtr &t) {
  unsigned n = t->kind == TermKind::Var ? 0 : 1;
  for (auto &a : t->args) n += term_complexity(a);
  return n;
}

unsigned depth(const TermPtr &t) {
  unsigned d = 0;
  for (auto &a : t->args) d = std::max(d, depth(a));
  return d + 1;
}

unsigned depth(const FormulaPtr &f) {
  unsigned d = 0;
  for (auto &t : f->terms) d = std::max(d, depth(t));
  for (auto &s : f->subs) d = std::max(d, depth(s));
  return d + 1;
}

bool quantifier_free(const FormulaPtr &f) {
  if (is_quantifier(f->kind)) return false;
  for (auto &s : f->subs)
    if (!quantifier_free(s)) return false;
  return true;
}

bool core_signature(const TermPtr &t) {
  if (t->kind == TermKind::Lit || t->kind == TermKind::Fun) return false;
  for (auto &a : t->args)
    if (!core_signature(a)) return false;
  return true;
}

bool core_signature(const FormulaPtr &f) {
  if (f->kind == FormulaKind::Atom) return false;
  for (auto &t : f->terms)
    if (!core_signature(t)) return false;
  for (auto &s : f->subs)
    if (!core_signature(s)) return false;
  return true;
}

// ------------------------------------------------------------- evaluation

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

Nat eval_term(const TermPtr &t, const Assignment &a) {
  switch (t->kind) {
    case TermKind::Zero: return 0;
    case TermKind::Succ: return eval_term(t->args[0], a) + 1;
    case TermKind::Add:
      return eval_term(t->args[0], a) + eval_term(t->args[1], a);
    case TermKind::Mul:
      return eval_term(t->args[0], a) * eval_term(t->args[1], a);
    case TermKind::Lit: return t->value;
    case TermKind::Var: {
      auto it = a.find(t->name);
      if (it == a.end()) throw EvalError("unassigned variable " + t->name);
      return it->second;
    }
    case TermKind::Fun: {
      auto fn = fun_interp(t->name);
      if (!fn) throw EvalError("function symbol without interpretation: " +
                               t->name);
      std::vector<Nat> vals;
      for (auto &x : t->args) vals.push_back(eval_term(x, a));
      return fn(vals);
    }
  }
  return 0;
}

namespace {

constexpr unsigned long kMaxBoundedRange = 10'000'000;

Verdict vnot(Verdict v) {
  if (v == Verdict::True) return Verdict::False;
  if (v == Verdict::False) return Verdict::True;
  return v;
}
Verdict vand(Verdict a, Verdict b) {
  if (a == Verdict::False || b == Verdict::False) return Verdict::False;
  if (a == Verdict::True && b == Verdict::True) return Verdict::True;
  return Verdict::Unknown;
}
Verdict vor(Verdict a, Verdict b) { return vnot(vand(vnot(a), vnot(b))); }

Verdict eval(const FormulaPtr &f, Assignment &a, unsigned long bound) {
  switch (f->kind) {
    case FormulaKind::Eq:
      return eval_term(f->terms[0], a) == eval_term(f->terms[1], a)
                 ? Verdict::True : Verdict::False;
    case FormulaKind::Atom: {
      auto fn = atom_interp(f->name);
      if (!fn) throw EvalError("atom without interpretation: " + f->name);
      std::vector<Nat> vals;
      for (auto &x : f->terms) vals.push_back(eval_term(x, a));
      return fn(vals) ? Verdict::True : Verdict::False;
    }
    case FormulaKind::Not: return vnot(eval(f->subs[0], a, bound));
    case FormulaKind::And: {
      Verdict l = eval(f->subs[0], a, bound);
      if (l == Verdict::False) return l;
      return vand(l, eval(f->subs[1], a, bound));
    }
    case FormulaKind::Or: {
      Verdict l = eval(f->subs[0], a, bound);
      if (l == Verdict::True) return l;
      return vor(l, eval(f->subs[1], a, bound));
    }
    case FormulaKind::Imp: {
      Verdict l = vnot(eval(f->subs[0], a, bound));
      if (l == Verdict::True) return l;
      return vor(l, eval(f->subs[1], a, bound));
    }
    default: break;
  }

  // Quantifiers: iterate the variable, restoring any outer binding after.
  const bool universal =
      f->kind == FormulaKind::Forall || f->kind == FormulaKind::BForall;
  unsigned long top = bound;
  bool exact = false;
  bool empty = false;
  if (is_bounded(f->kind)) {
    Nat b = eval_term(f->terms[0], a);
    if (f->strict) {
      if (b == 0) empty = true;
      else b -= 1;
    }
    if (!empty && b > kMaxBoundedRange)
      throw EvalError("bounded quantifier range too large");
    top = empty ? 0 : b.get_ui();
    exact = true;
  }
  std::optional<Nat> saved;
  if (auto it = a.find(f->name); it != a.end()) saved = it->second;

  Verdict acc = universal ? Verdict::True : Verdict::False;
  if (!empty) {
    for (unsigned long w = 0; w <= top; ++w) {
      a[f->name] = w;
      Verdict r = eval(f->subs[0], a, bound);
      acc = universal ? vand(acc, r) : vor(acc, r);
      if (acc == (universal ? Verdict::False : Verdict::True)) break;
    }
  }
  if (saved) a[f->name] = *saved;
  else a.erase(f->name);

  if (!exact && acc != (universal ? Verdict::False : Verdict::True))
    return Verdict::Unknown;
  return acc;
}

}  // namespace

Verdict evaluate(const FormulaPtr &f, const Assignment &a,
                 unsigned long witness_bound) {
  Assignment work = a;
  return eval(f, work, witness_bound);
}

}  // namespace provlab
