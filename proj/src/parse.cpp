// Text syntax for arithmetic formulas: parser, printer and JSON export.

#include <sstream>

#include "lexer.hpp"
#include "provlab/syntax.hpp"

namespace provlab {

using detail::Cursor;
using detail::Tok;

namespace {

class Parser {
 public:
  explicit Parser(const std::string &src) : c_(detail::tokenize(src)) {}

  FormulaPtr formula_eof() {
    FormulaPtr f = imp();
    if (c_.peek().kind != Tok::End) c_.fail("unexpected trailing input");
    return f;
  }

  TermPtr term_eof() {
    TermPtr t = term();
    if (c_.peek().kind != Tok::End) c_.fail("unexpected trailing input");
    return t;
  }

 private:
  Cursor c_;

  FormulaPtr imp() {
    FormulaPtr l = disj();
    if (c_.accept("->")) return limp(l, imp());
    if (c_.accept("<->")) return liff(l, imp());
    return l;
  }

  FormulaPtr disj() {
    FormulaPtr l = conj();
    while (c_.accept("|")) l = lor(l, conj());
    return l;
  }

  FormulaPtr conj() {
    FormulaPtr l = unary();
    while (c_.accept("&")) l = land(l, unary());
    return l;
  }

  FormulaPtr unary() {
    if (c_.accept("~")) return lnot(unary());
    if (c_.at("!A") || c_.at("!E")) {
      bool universal = c_.next().text == "!A";
      std::string v = ident("variable");
      if (c_.at("<=") || c_.at("<")) {
        bool strict = c_.next().text == "<";
        TermPtr bound = term();
        c_.expect(".");
        FormulaPtr body = unary();
        return universal ? bforall(v, bound, body, strict)
                         : bexists(v, bound, body, strict);
      }
      FormulaPtr body = unary();
      return universal ? forall(v, body) : exists(v, body);
    }
    return atomic();
  }

  FormulaPtr atomic() {
    const auto &t = c_.peek();
    if (t.kind == Tok::Ident && t.text == "Atom" && c_.peek(1).text == "[") {
      c_.next();
      c_.expect("[");
      auto name_tok = c_.peek();
      std::string name = ident("atom name");
      c_.expect("]");
      auto args = arglist();
      const AtomInfo *info = find_atom(name);
      if (!info)
        throw SyntaxError("unknown atom symbol " + name, name_tok.line,
                          name_tok.col);
      if (info->arity != args.size())
        throw SyntaxError("atom " + name + " expects " +
                              std::to_string(info->arity) + " arguments",
                          name_tok.line, name_tok.col);
      return atom(name, std::move(args));
    }
    // Either an equation between terms or a parenthesized formula.
    size_t start = c_.pos();
    try {
      TermPtr l = term();
      if (c_.accept("=")) return eq(l, term());
      if (c_.accept("!=")) return neq(l, term());
      if (c_.accept("<=")) return atom("Le", {l, term()});
      c_.fail("expected '=' after term");
    } catch (const SyntaxError &first) {
      size_t after_first = c_.pos();
      c_.reset(start);
      if (!c_.at("(")) throw;
      try {
        c_.expect("(");
        FormulaPtr f = imp();
        c_.expect(")");
        return f;
      } catch (const SyntaxError &second) {
        if (c_.pos() >= after_first) throw;
        throw first;
      }
    }
  }

  std::vector<TermPtr> arglist() {
    std::vector<TermPtr> args;
    c_.expect("(");
    if (c_.accept(")")) return args;
    do {
      args.push_back(term());
    } while (c_.accept(","));
    c_.expect(")");
    return args;
  }

  std::string ident(const char *what) {
    if (c_.peek().kind != Tok::Ident) c_.fail(std::string("expected ") + what);
    return c_.next().text;
  }

  TermPtr term() {
    TermPtr l = product();
    while (c_.accept("+")) l = add(l, product());
    return l;
  }

  TermPtr product() {
    TermPtr l = primary();
    while (c_.accept("*")) l = mul(l, primary());
    return l;
  }

  TermPtr primary() {
    const auto t = c_.peek();
    if (t.kind == Tok::Number) {
      if (t.text != "0")
        c_.fail("numeric literals other than 0 are written #n");
      c_.next();
      return zero();
    }
    if (c_.accept("#")) {
      if (c_.peek().kind != Tok::Number) c_.fail("expected digits after '#'");
      return lit(Nat(c_.next().text));
    }
    if (c_.accept("(")) {
      TermPtr inner = term();
      c_.expect(")");
      return inner;
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "s" && c_.peek(1).text == "(") {
        c_.next();
        c_.expect("(");
        TermPtr inner = term();
        c_.expect(")");
        return succ(inner);
      }
      if (t.text == "Fun" && c_.peek(1).text == "[") {
        c_.next();
        c_.expect("[");
        auto name_tok = c_.peek();
        std::string name = ident("function name");
        c_.expect("]");
        auto args = arglist();
        const FunInfo *info = find_fun(name);
        if (!info)
          throw SyntaxError("unknown function symbol " + name, name_tok.line,
                            name_tok.col);
        if (info->arity != args.size())
          throw SyntaxError("function " + name + " expects " +
                                std::to_string(info->arity) + " arguments",
                            name_tok.line, name_tok.col);
        return fun(name, std::move(args));
      }
      if (t.text == "Atom" || t.text == "Fun")
        c_.fail("reserved word");
      c_.next();
      return var(t.text);
    }
    c_.fail("expected a term");
  }
};

// Precedence levels used by the printer.
constexpr int kImp = 1, kOr = 2, kAnd = 3, kUnary = 4;
constexpr int kSum = 1, kProd = 2, kAtomTerm = 3;

int level_of(const TermPtr &t) {
  if (t->kind == TermKind::Add) return kSum;
  if (t->kind == TermKind::Mul) return kProd;
  return kAtomTerm;
}

void put(std::ostream &os, const TermPtr &t, int ctx) {
  bool paren = level_of(t) < ctx;
  if (paren) os << '(';
  switch (t->kind) {
    case TermKind::Zero: os << '0'; break;
    case TermKind::Var: os << t->name; break;
    case TermKind::Lit: os << '#' << t->value.get_str(); break;
    case TermKind::Succ:
      os << "s(";
      put(os, t->args[0], 0);
      os << ')';
      break;
    case TermKind::Add:
      put(os, t->args[0], kSum);
      os << " + ";
      put(os, t->args[1], kProd);
      break;
    case TermKind::Mul:
      put(os, t->args[0], kProd);
      os << " * ";
      put(os, t->args[1], kAtomTerm);
      break;
    case TermKind::Fun:
      os << "Fun[" << t->name << "](";
      for (size_t i = 0; i < t->args.size(); ++i) {
        if (i) os << ", ";
        put(os, t->args[i], 0);
      }
      os << ')';
      break;
  }
  if (paren) os << ')';
}

int level_of(const FormulaPtr &f) {
  switch (f->kind) {
    case FormulaKind::Imp: return kImp;
    case FormulaKind::Or: return kOr;
    case FormulaKind::And: return kAnd;
    default: return kUnary;
  }
}

void put(std::ostream &os, const FormulaPtr &f, int ctx) {
  bool paren = level_of(f) < ctx;
  if (paren) os << '(';
  switch (f->kind) {
    case FormulaKind::Eq:
      put(os, f->terms[0], 0);
      os << " = ";
      put(os, f->terms[1], 0);
      break;
    case FormulaKind::Atom:
      os << "Atom[" << f->name << "](";
      for (size_t i = 0; i < f->terms.size(); ++i) {
        if (i) os << ", ";
        put(os, f->terms[i], 0);
      }
      os << ')';
      break;
    case FormulaKind::Not:
      os << '~';
      if (f->subs[0]->kind == FormulaKind::Eq) {
        os << '(';
        put(os, f->subs[0], 0);
        os << ')';
      } else {
        put(os, f->subs[0], kUnary);
      }
      break;
    case FormulaKind::And:
      put(os, f->subs[0], kAnd);
      os << " & ";
      put(os, f->subs[1], kUnary);
      break;
    case FormulaKind::Or:
      put(os, f->subs[0], kOr);
      os << " | ";
      put(os, f->subs[1], kAnd);
      break;
    case FormulaKind::Imp:
      put(os, f->subs[0], kOr);
      os << " -> ";
      put(os, f->subs[1], kImp);
      break;
    default: {
      bool universal = f->kind == FormulaKind::Forall ||
                       f->kind == FormulaKind::BForall;
      os << (universal ? "!A " : "!E ") << f->name << ' ';
      if (is_bounded(f->kind)) {
        os << (f->strict ? "< " : "<= ");
        put(os, f->terms[0], 0);
        os << " . ";
      }
      const FormulaPtr &b = f->subs[0];
      if (b->kind == FormulaKind::Not || is_quantifier(b->kind)) {
        put(os, b, kUnary);
      } else {
        os << '(';
        put(os, b, 0);
        os << ')';
      }
    }
  }
  if (paren) os << ')';
}

const char *kind_name(TermKind k) {
  switch (k) {
    case TermKind::Zero: return "Zero";
    case TermKind::Succ: return "Succ";
    case TermKind::Add: return "Add";
    case TermKind::Mul: return "Mul";
    case TermKind::Var: return "Var";
    case TermKind::Lit: return "Lit";
    case TermKind::Fun: return "Fun";
  }
  return "?";
}

const char *kind_name(FormulaKind k) {
  switch (k) {
    case FormulaKind::Eq: return "Eq";
    case FormulaKind::Atom: return "ExtAtom";
    case FormulaKind::Not: return "Not";
    case FormulaKind::And: return "And";
    case FormulaKind::Or: return "Or";
    case FormulaKind::Imp: return "Imp";
    case FormulaKind::Forall: return "Forall";
    case FormulaKind::Exists: return "Exists";
    case FormulaKind::BForall: return "BForall";
    case FormulaKind::BExists: return "BExists";
  }
  return "?";
}

}  // namespace

FormulaPtr parse(const std::string &text) { return Parser(text).formula_eof(); }

TermPtr parse_term(const std::string &text) { return Parser(text).term_eof(); }

std::string print(const FormulaPtr &f) {
  std::ostringstream os;
  put(os, f, 0);
  return os.str();
}

std::string print(const TermPtr &t) {
  std::ostringstream os;
  put(os, t, 0);
  return os.str();
}

nlohmann::json to_json(const TermPtr &t) {
  nlohmann::json j;
  j["kind"] = kind_name(t->kind);
  if (t->kind == TermKind::Var) j["name"] = t->name;
  if (t->kind == TermKind::Fun) j["symbol"] = t->name;
  if (t->kind == TermKind::Lit) j["value"] = t->value.get_str();
  if (!t->args.empty()) {
    j["args"] = nlohmann::json::array();
    for (auto &a : t->args) j["args"].push_back(to_json(a));
  }
  return j;
}

nlohmann::json to_json(const FormulaPtr &f) {
  nlohmann::json j;
  j["kind"] = kind_name(f->kind);
  switch (f->kind) {
    case FormulaKind::Eq:
      j["lhs"] = to_json(f->terms[0]);
      j["rhs"] = to_json(f->terms[1]);
      break;
    case FormulaKind::Atom:
      j["symbol"] = f->name;
      j["args"] = nlohmann::json::array();
      for (auto &a : f->terms) j["args"].push_back(to_json(a));
      break;
    case FormulaKind::Not:
      j["body"] = to_json(f->subs[0]);
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp:
      j["left"] = to_json(f->subs[0]);
      j["right"] = to_json(f->subs[1]);
      break;
    default:
      j["var"] = f->name;
      if (is_bounded(f->kind)) {
        j["bound"] = to_json(f->terms[0]);
        j["strict"] = f->strict;
      }
      j["body"] = to_json(f->subs[0]);
  }
  return j;
}

}  // namespace provlab
