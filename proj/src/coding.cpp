#include "provlab/coding.hpp"

#include <cctype>

namespace provlab {

Nat pair(const Nat &a, const Nat &b) {
  Nat s = a + b;
  return s * (s + 1) / 2 + b;
}

std::pair<Nat, Nat> unpair(const Nat &z) {
  if (z < 0) throw std::invalid_argument("unpair of negative number");
  // w = floor((sqrt(8z + 1) - 1) / 2)
  Nat disc = 8 * z + 1;
  Nat root;
  mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
  Nat w = (root - 1) / 2;
  Nat t = w * (w + 1) / 2;
  Nat b = z - t;
  Nat a = w - b;
  return {a, b};
}

Nat encode_name(const std::string &s) {
  Nat n = 1;
  for (unsigned char c : s) {
    if (c >= 128) throw std::invalid_argument("non-ASCII identifier");
    n = n * 128 + c;
  }
  return n;
}

std::string decode_name(const Nat &n) {
  if (n < 1) throw DecodeError("bad identifier code");
  if (mpz_sizeinbase(n.get_mpz_t(), 2) > 7 * 64 + 1)
    throw DecodeError("identifier too long");
  std::string out;
  Nat m = n;
  while (m > 1) {
    Nat d = m % 128;
    out.insert(out.begin(), static_cast<char>(d.get_ui()));
    m /= 128;
  }
  if (m != 1) throw DecodeError("bad identifier code");
  if (out.empty()) throw DecodeError("empty identifier");
  auto ok_start = [](char c) { return std::isalpha((unsigned char)c) || c == '_'; };
  auto ok = [](char c) {
    return std::isalnum((unsigned char)c) || c == '_' || c == '\'';
  };
  if (!ok_start(out[0])) throw DecodeError("bad identifier");
  for (char c : out)
    if (!ok(c)) throw DecodeError("bad identifier");
  return out;
}

namespace {

Nat encode_list(const std::vector<Nat> &items) {
  Nat acc = 0;
  for (auto it = items.rbegin(); it != items.rend(); ++it)
    acc = pair(*it, acc) + 1;
  return acc;
}

std::vector<Nat> decode_list(const Nat &n, size_t limit) {
  std::vector<Nat> out;
  Nat cur = n;
  while (cur != 0) {
    if (out.size() >= limit) throw DecodeError("list too long");
    auto [h, t] = unpair(cur - 1);
    out.push_back(h);
    cur = t;
  }
  return out;
}

}  // namespace

Nat gn(const TermPtr &t) {
  switch (t->kind) {
    case TermKind::Zero: return pair(tag::Zero, 0);
    case TermKind::Succ: return pair(tag::Succ, gn(t->args[0]));
    case TermKind::Var: return pair(tag::Var, encode_name(t->name));
    case TermKind::Add:
      return pair(tag::Add, pair(gn(t->args[0]), gn(t->args[1])));
    case TermKind::Mul:
      return pair(tag::Mul, pair(gn(t->args[0]), gn(t->args[1])));
    case TermKind::Lit: return pair(tag::Lit, t->value);
    case TermKind::Fun: {
      std::vector<Nat> codes;
      for (auto &a : t->args) codes.push_back(gn(a));
      return pair(tag::Fun, pair(encode_name(t->name), encode_list(codes)));
    }
  }
  return 0;
}

Nat gn(const FormulaPtr &f) {
  switch (f->kind) {
    case FormulaKind::Eq:
      return pair(tag::Eq, pair(gn(f->terms[0]), gn(f->terms[1])));
    case FormulaKind::Atom: {
      std::vector<Nat> codes;
      for (auto &a : f->terms) codes.push_back(gn(a));
      return pair(tag::Atom, pair(encode_name(f->name), encode_list(codes)));
    }
    case FormulaKind::Not: return pair(tag::Not, gn(f->subs[0]));
    case FormulaKind::And:
      return pair(tag::And, pair(gn(f->subs[0]), gn(f->subs[1])));
    case FormulaKind::Or:
      return pair(tag::Or, pair(gn(f->subs[0]), gn(f->subs[1])));
    case FormulaKind::Imp:
      return pair(tag::Imp, pair(gn(f->subs[0]), gn(f->subs[1])));
    case FormulaKind::Forall:
      return pair(tag::Forall, pair(encode_name(f->name), gn(f->subs[0])));
    case FormulaKind::Exists:
      return pair(tag::Exists, pair(encode_name(f->name), gn(f->subs[0])));
    case FormulaKind::BForall:
    case FormulaKind::BExists: {
      unsigned tg = f->kind == FormulaKind::BForall
                        ? (f->strict ? tag::BForallLt : tag::BForall)
                        : (f->strict ? tag::BExistsLt : tag::BExists);
      return pair(tg, pair(encode_name(f->name),
                           pair(gn(f->terms[0]), gn(f->subs[0]))));
    }
  }
  return 0;
}

namespace {

unsigned small_tag(const Nat &t) {
  if (t >= tag::Count) throw DecodeError("unknown tag");
  return static_cast<unsigned>(t.get_ui());
}

}  // namespace

TermPtr decode_term(const Nat &n) {
  if (n < 0) throw DecodeError("negative code");
  auto [t, p] = unpair(n);
  switch (small_tag(t)) {
    case tag::Zero:
      if (p != 0) throw DecodeError("bad zero payload");
      return zero();
    case tag::Succ: return succ(decode_term(p));
    case tag::Var: return var(decode_name(p));
    case tag::Add: {
      auto [a, b] = unpair(p);
      return add(decode_term(a), decode_term(b));
    }
    case tag::Mul: {
      auto [a, b] = unpair(p);
      return mul(decode_term(a), decode_term(b));
    }
    case tag::Lit:
      if (p == 0) throw DecodeError("literal 0 is not canonical");
      return lit(p);
    case tag::Fun: {
      auto [nm, lst] = unpair(p);
      std::string name = decode_name(nm);
      const FunInfo *info = find_fun(name);
      if (!info) throw DecodeError("unknown function symbol " + name);
      auto codes = decode_list(lst, info->arity + 1);
      if (codes.size() != info->arity) throw DecodeError("arity mismatch");
      std::vector<TermPtr> args;
      for (auto &c : codes) args.push_back(decode_term(c));
      return fun(name, std::move(args));
    }
    default:
      throw DecodeError("not a term code");
  }
}

FormulaPtr decode_formula(const Nat &n) {
  if (n < 0) throw DecodeError("negative code");
  auto [t, p] = unpair(n);
  unsigned tg = small_tag(t);
  auto binary = [&](auto mk) {
    auto [a, b] = unpair(p);
    return mk(decode_formula(a), decode_formula(b));
  };
  switch (tg) {
    case tag::Eq: {
      auto [a, b] = unpair(p);
      return eq(decode_term(a), decode_term(b));
    }
    case tag::Atom: {
      auto [nm, lst] = unpair(p);
      std::string name = decode_name(nm);
      const AtomInfo *info = find_atom(name);
      if (!info) throw DecodeError("unknown atom symbol " + name);
      auto codes = decode_list(lst, info->arity + 1);
      if (codes.size() != info->arity) throw DecodeError("arity mismatch");
      std::vector<TermPtr> args;
      for (auto &c : codes) args.push_back(decode_term(c));
      return atom(name, std::move(args));
    }
    case tag::Not: return lnot(decode_formula(p));
    case tag::And: return binary(land);
    case tag::Or: return binary(lor);
    case tag::Imp: return binary(limp);
    case tag::Forall:
    case tag::Exists: {
      auto [nm, body] = unpair(p);
      std::string v = decode_name(nm);
      FormulaPtr b = decode_formula(body);
      return tg == tag::Forall ? forall(v, b) : exists(v, b);
    }
    case tag::BForall:
    case tag::BExists:
    case tag::BForallLt:
    case tag::BExistsLt: {
      auto [nm, rest] = unpair(p);
      auto [bd, body] = unpair(rest);
      std::string v = decode_name(nm);
      TermPtr bound = decode_term(bd);
      FormulaPtr b = decode_formula(body);
      bool strict = tg == tag::BForallLt || tg == tag::BExistsLt;
      bool universal = tg == tag::BForall || tg == tag::BForallLt;
      return universal ? bforall(v, bound, b, strict)
                       : bexists(v, bound, b, strict);
    }
    default:
      throw DecodeError("not a formula code");
  }
}

bool is_formula_code(const Nat &n) {
  try {
    decode_formula(n);
    return true;
  } catch (const DecodeError &) {
    return false;
  }
}

TermPtr numeral(const Nat &n) {
  if (n < 0) throw std::invalid_argument("negative numeral");
  if (n > 1'000'000) throw std::length_error("numeral too large to build");
  TermPtr t = zero();
  for (unsigned long i = 0; i < n.get_ui(); ++i) t = succ(t);
  return t;
}

Nat num_value(const Nat &n) {
  if (n < 0) throw std::invalid_argument("negative numeral");
  if (n > 24) throw std::length_error("num_value beyond 24 is too large");
  Nat v = gn(zero());
  for (unsigned long i = 0; i < n.get_ui(); ++i) v = pair(tag::Succ, v);
  return v;
}

Nat dotted_instance(const FormulaPtr &phi, const Assignment &a) {
  FormulaPtr f = phi;
  for (const auto &v : free_vars(phi)) {
    auto it = a.find(v);
    if (it == a.end())
      throw std::invalid_argument("assignment misses free variable " + v);
    f = substitute(f, v, numeral(it->second));
  }
  return gn(f);
}

TermPtr code_term(const Nat &n) { return lit(n); }

Nat sub_eval(const Nat &a, const Nat &b) {
  FormulaPtr f = decode_formula(a);
  return gn(substitute(f, kDiagVar, code_term(b)));
}

nlohmann::json coding_scheme() {
  using nlohmann::json;
  json tags = json::array();
  const char *names[] = {"Succ",   "Zero",     "Var",      "Add",    "Mul",
                         "Lit",    "Fun",      "Eq",       "ExtAtom", "Not",
                         "And",    "Or",       "Imp",      "Forall", "Exists",
                         "BForall", "BExists", "BForallLt", "BExistsLt"};
  const char *payload[] = {
      "gn(t)", "0", "name", "pair(gn(a),gn(b))", "pair(gn(a),gn(b))", "n",
      "pair(name,list(args))", "pair(gn(lhs),gn(rhs))",
      "pair(name,list(args))", "gn(body)", "pair(gn(a),gn(b))",
      "pair(gn(a),gn(b))", "pair(gn(a),gn(b))", "pair(name,gn(body))",
      "pair(name,gn(body))", "pair(name,pair(gn(bound),gn(body)))",
      "pair(name,pair(gn(bound),gn(body)))",
      "pair(name,pair(gn(bound),gn(body)))",
      "pair(name,pair(gn(bound),gn(body)))"};
  for (unsigned i = 0; i < tag::Count; ++i)
    tags.push_back({{"tag", i}, {"constructor", names[i]},
                    {"payload", payload[i]}});
  return {{"version", kCodingVersion},
          {"pairing", "cantor: pair(a,b) = (a+b)(a+b+1)/2 + b"},
          {"node", "pair(tag, payload)"},
          {"list", "[] = 0; h::t = pair(h, t) + 1"},
          {"name", "base-128 digits of the ASCII bytes behind a leading 1"},
          {"tags", tags}};
}

}  // namespace provlab
