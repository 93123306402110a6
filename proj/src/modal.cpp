#include "provlab/modal.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "lexer.hpp"

namespace provlab {

using detail::Cursor;
using detail::Tok;
using nlohmann::json;

namespace {

ModalPtr make(ModalKind k, std::vector<ModalPtr> subs = {}, std::string name = "",
              int box = 0) {
  auto m = std::make_shared<Modal>();
  m->kind = k;
  m->subs = std::move(subs);
  m->name = std::move(name);
  m->box = box;
  return m;
}

}  // namespace

ModalPtr mvar(const std::string &name) { return make(ModalKind::Var, {}, name); }
ModalPtr mbot() { return make(ModalKind::Bot); }
ModalPtr mnot(ModalPtr a) { return make(ModalKind::Not, {std::move(a)}); }
ModalPtr mand(ModalPtr a, ModalPtr b) {
  return make(ModalKind::And, {std::move(a), std::move(b)});
}
ModalPtr mor(ModalPtr a, ModalPtr b) {
  return make(ModalKind::Or, {std::move(a), std::move(b)});
}
ModalPtr mimp(ModalPtr a, ModalPtr b) {
  return make(ModalKind::Imp, {std::move(a), std::move(b)});
}
ModalPtr mbox(int i, ModalPtr a) {
  if (i != 0 && i != 1) throw std::invalid_argument("box index must be 0 or 1");
  return make(ModalKind::Box, {std::move(a)}, "", i);
}

int compare(const ModalPtr &a, const ModalPtr &b) {
  if (a == b) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  if (a->box != b->box) return a->box < b->box ? -1 : 1;
  if (int c = a->name.compare(b->name)) return c < 0 ? -1 : 1;
  for (size_t i = 0; i < a->subs.size(); ++i)
    if (int c = compare(a->subs[i], b->subs[i])) return c;
  return 0;
}

bool equal(const ModalPtr &a, const ModalPtr &b) { return compare(a, b) == 0; }

// ------------------------------------------------------------------ text

namespace {

class ModalParser {
 public:
  explicit ModalParser(const std::string &s) : c_(detail::tokenize(s)) {}

  ModalPtr run() {
    auto f = imp();
    if (c_.peek().kind != Tok::End) c_.fail("unexpected trailing input");
    return f;
  }

 private:
  Cursor c_;

  ModalPtr imp() {
    auto l = disj();
    if (c_.accept("->")) return mimp(l, imp());
    if (c_.accept("<->")) {
      auto r = imp();
      return mand(mimp(l, r), mimp(r, l));
    }
    return l;
  }
  ModalPtr disj() {
    auto l = conj();
    while (c_.accept("|")) l = mor(l, conj());
    return l;
  }
  ModalPtr conj() {
    auto l = unary();
    while (c_.accept("&")) l = mand(l, unary());
    return l;
  }
  ModalPtr unary() {
    if (c_.accept("~")) return mnot(unary());
    if (c_.accept("[]")) return mbox(0, unary());
    if (c_.accept("[")) {
      if (c_.peek().kind != Tok::Number ||
          (c_.peek().text != "0" && c_.peek().text != "1"))
        c_.fail("expected box index 0 or 1");
      int i = c_.next().text == "1";
      c_.expect("]");
      return mbox(i, unary());
    }
    if (c_.accept("(")) {
      auto f = imp();
      c_.expect(")");
      return f;
    }
    if (c_.peek().kind == Tok::Ident) {
      auto name = c_.next().text;
      if (name == "F") return mbot();
      return mvar(name);
    }
    c_.fail("expected a modal formula");
  }
};

int prec(const ModalPtr &a) {
  switch (a->kind) {
    case ModalKind::Imp: return 1;
    case ModalKind::Or: return 2;
    case ModalKind::And: return 3;
    default: return 4;
  }
}

std::string wrap(const ModalPtr &a, int need) {
  auto s = print(a);
  return prec(a) < need ? "(" + s + ")" : s;
}

}  // namespace

ModalPtr parse_modal(const std::string &text) { return ModalParser(text).run(); }

std::string print(const ModalPtr &a) {
  switch (a->kind) {
    case ModalKind::Var: return a->name;
    case ModalKind::Bot: return "F";
    case ModalKind::Not: return "~" + wrap(a->subs[0], 4);
    case ModalKind::Box: return "[" + std::to_string(a->box) + "]" + wrap(a->subs[0], 4);
    case ModalKind::And: return wrap(a->subs[0], 3) + " & " + wrap(a->subs[1], 4);
    case ModalKind::Or: return wrap(a->subs[0], 2) + " | " + wrap(a->subs[1], 3);
    case ModalKind::Imp: return wrap(a->subs[0], 2) + " -> " + wrap(a->subs[1], 1);
  }
  return "";
}

std::set<std::string> modal_vars(const ModalPtr &a) {
  std::set<std::string> out;
  std::function<void(const ModalPtr &)> go = [&](const ModalPtr &m) {
    if (m->kind == ModalKind::Var) out.insert(m->name);
    for (auto &s : m->subs) go(s);
  };
  go(a);
  return out;
}

unsigned modal_depth(const ModalPtr &a) {
  unsigned d = 0;
  for (auto &s : a->subs) d = std::max(d, modal_depth(s));
  return d + (a->kind == ModalKind::Box);
}

bool unimodal(const ModalPtr &a) {
  if (a->kind == ModalKind::Box && a->box != 0) return false;
  return std::all_of(a->subs.begin(), a->subs.end(), unimodal);
}

ModalPtr msubstitute(const ModalPtr &a, const std::map<std::string, ModalPtr> &s) {
  if (a->kind == ModalKind::Var) {
    auto it = s.find(a->name);
    return it == s.end() ? a : it->second;
  }
  if (a->subs.empty()) return a;
  std::vector<ModalPtr> subs;
  for (auto &x : a->subs) subs.push_back(msubstitute(x, s));
  return make(a->kind, std::move(subs), a->name, a->box);
}

// ---------------------------------------------------------------- models

std::vector<std::string> check_cs2_model(const CS2Model &m) {
  std::vector<std::string> v;
  size_t n = m.worlds.size();
  if (n == 0) {
    v.push_back("nonempty: W is empty");
    return v;
  }
  if (m.k0.size() != n || m.k1.size() != n || m.less.size() != n ||
      m.val.size() != n) {
    v.push_back("shape: component sizes differ from |W|");
    return v;
  }
  for (auto &row : m.less)
    if (row.size() != n) {
      v.push_back("shape: order matrix is not |W| x |W|");
      return v;
    }
  std::set<std::string> names(m.worlds.begin(), m.worlds.end());
  if (names.size() != n) v.push_back("nonempty: duplicate world names");
  for (size_t x = 0; x < n; ++x)
    if (!m.k0[x] && !m.k1[x])
      v.push_back("cover: " + m.worlds[x] + " is in neither K0 nor K1");
  for (size_t x = 0; x < n; ++x)
    if (m.less[x][x]) v.push_back("strictness: " + m.worlds[x] + " precedes itself");
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y)
      for (size_t z = 0; z < n; ++z)
        if (m.less[x][y] && m.less[y][z] && !m.less[x][z])
          v.push_back("transitivity: " + m.worlds[x] + " < " + m.worlds[y] +
                      " < " + m.worlds[z]);
  if (m.root < 0 || static_cast<size_t>(m.root) >= n) {
    v.push_back("root membership: root is not a world");
    return v;
  }
  if (!m.k0[m.root] || !m.k1[m.root])
    v.push_back("root membership: root is not in K0 and K1");
  for (size_t x = 0; x < n; ++x)
    if (static_cast<int>(x) != m.root && !m.less[m.root][x])
      v.push_back("root order: root does not precede " + m.worlds[x]);
  return v;
}

namespace {

bool eval(const CS2Model &m, int w, const ModalPtr &a) {
  switch (a->kind) {
    case ModalKind::Var: return m.val[w].count(a->name) > 0;
    case ModalKind::Bot: return false;
    case ModalKind::Not: return !eval(m, w, a->subs[0]);
    case ModalKind::And: return eval(m, w, a->subs[0]) && eval(m, w, a->subs[1]);
    case ModalKind::Or: return eval(m, w, a->subs[0]) || eval(m, w, a->subs[1]);
    case ModalKind::Imp: return !eval(m, w, a->subs[0]) || eval(m, w, a->subs[1]);
    case ModalKind::Box: {
      auto &k = a->box == 0 ? m.k0 : m.k1;
      for (size_t y = 0; y < m.worlds.size(); ++y)
        if (k[y] && m.less[w][y] && !eval(m, static_cast<int>(y), a->subs[0]))
          return false;
      return true;
    }
  }
  return false;
}

}  // namespace

bool mc_cs2(const CS2Model &m, int w, const ModalPtr &a) {
  auto v = check_cs2_model(m);
  if (!v.empty()) throw ModelError("not a CS2 model: " + v.front());
  if (w < 0 || static_cast<size_t>(w) >= m.worlds.size())
    throw ModelError("no such world");
  return eval(m, w, a);
}

int world_index(const CS2Model &m, const std::string &name) {
  auto it = std::find(m.worlds.begin(), m.worlds.end(), name);
  if (it == m.worlds.end()) throw ModelError("no such world: " + name);
  return static_cast<int>(it - m.worlds.begin());
}

json to_json(const CS2Model &m) {
  json j;
  j["schema"] = "cs2-model/1";
  j["worlds"] = m.worlds;
  j["K0"] = json::array();
  j["K1"] = json::array();
  j["less"] = json::array();
  j["valuation"] = json::object();
  for (size_t x = 0; x < m.worlds.size(); ++x) {
    if (m.k0[x]) j["K0"].push_back(m.worlds[x]);
    if (m.k1[x]) j["K1"].push_back(m.worlds[x]);
    j["valuation"][m.worlds[x]] = m.val[x];
    for (size_t y = 0; y < m.worlds.size(); ++y)
      if (m.less[x][y]) j["less"].push_back({m.worlds[x], m.worlds[y]});
  }
  j["root"] = m.worlds.at(m.root);
  return j;
}

CS2Model model_from_json(const json &j) {
  try {
    CS2Model m;
    m.worlds = j.at("worlds").get<std::vector<std::string>>();
    size_t n = m.worlds.size();
    m.k0.assign(n, false);
    m.k1.assign(n, false);
    m.less.assign(n, std::vector<bool>(n, false));
    m.val.assign(n, {});
    for (auto &w : j.at("K0")) m.k0[world_index(m, w)] = true;
    for (auto &w : j.at("K1")) m.k1[world_index(m, w)] = true;
    for (auto &e : j.at("less")) m.less[world_index(m, e.at(0))][world_index(m, e.at(1))] = true;
    if (j.contains("valuation"))
      for (auto &[w, vs] : j.at("valuation").items())
        for (auto &v : vs) m.val[world_index(m, w)].insert(v.get<std::string>());
    m.root = world_index(m, j.at("root"));
    return m;
  } catch (const json::exception &e) {
    throw ModelError(std::string("malformed model: ") + e.what());
  }
}

CS2Model mt2_model() {
  CS2Model m;
  m.worlds = {"b", "x0", "x1"};
  m.k0 = {true, true, false};
  m.k1 = {true, false, true};
  m.less = {{false, true, true}, {false, false, false}, {false, false, false}};
  m.root = 0;
  m.val = {{}, {"p"}, {}};
  return m;
}

bool isomorphic(const CS2Model &a, const CS2Model &b) {
  size_t n = a.worlds.size();
  if (n != b.worlds.size()) return false;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (perm[a.root] != b.root) continue;
    bool ok = true;
    for (size_t x = 0; x < n && ok; ++x) {
      int px = perm[x];
      ok = a.k0[x] == b.k0[px] && a.k1[x] == b.k1[px] && a.val[x] == b.val[px];
      for (size_t y = 0; y < n && ok; ++y) ok = a.less[x][y] == b.less[px][perm[y]];
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// ------------------------------------------------------------------- GL

namespace {

struct Signed {
  bool truth;
  ModalPtr f;
};

struct SignedLess {
  bool operator()(const Signed &a, const Signed &b) const {
    if (a.truth != b.truth) return a.truth < b.truth;
    return compare(a.f, b.f) < 0;
  }
};

using Branch = std::set<Signed, SignedLess>;

struct Node {
  std::set<std::string> val;
  std::vector<Node> kids;
};

// Saturates propositionally, then opens one successor per false box.
// Each successor carries every true box plus the box it refutes, so the set
// of true boxes grows strictly along a branch and the search terminates.
std::optional<Node> expand(Branch b) {
  for (auto it = b.begin(); it != b.end(); ++it) {
    const Signed s = *it;
    auto k = s.f->kind;
    if (k == ModalKind::Var || k == ModalKind::Bot || k == ModalKind::Box) continue;
    Branch rest = b;
    rest.erase(s);
    auto &x = s.f->subs;
    auto with = [&](std::initializer_list<Signed> add) {
      Branch r = rest;
      for (auto &a : add) r.insert(a);
      return r;
    };
    switch (k) {
      case ModalKind::Not: return expand(with({{!s.truth, x[0]}}));
      case ModalKind::And:
        if (s.truth) return expand(with({{true, x[0]}, {true, x[1]}}));
        if (auto n = expand(with({{false, x[0]}}))) return n;
        return expand(with({{false, x[1]}}));
      case ModalKind::Or:
        if (!s.truth) return expand(with({{false, x[0]}, {false, x[1]}}));
        if (auto n = expand(with({{true, x[0]}}))) return n;
        return expand(with({{true, x[1]}}));
      case ModalKind::Imp:
        if (!s.truth) return expand(with({{true, x[0]}, {false, x[1]}}));
        if (auto n = expand(with({{false, x[0]}}))) return n;
        return expand(with({{true, x[1]}}));
      default: break;
    }
  }
  // Only literals and boxes remain.
  Node node;
  std::vector<ModalPtr> boxed_true, boxed_false;
  for (auto &s : b) {
    if (s.f->kind == ModalKind::Bot && s.truth) return std::nullopt;
    if (b.count({!s.truth, s.f})) return std::nullopt;
    if (s.f->kind == ModalKind::Var && s.truth) node.val.insert(s.f->name);
    if (s.f->kind == ModalKind::Box) (s.truth ? boxed_true : boxed_false).push_back(s.f);
  }
  for (auto &bf : boxed_false) {
    Branch child;
    for (auto &t : boxed_true) {
      child.insert({true, t});
      child.insert({true, t->subs[0]});
    }
    child.insert({true, bf});
    child.insert({false, bf->subs[0]});
    auto kid = expand(child);
    if (!kid) return std::nullopt;
    node.kids.push_back(std::move(*kid));
  }
  return node;
}

CS2Model tree_model(const Node &root) {
  CS2Model m;
  std::vector<std::vector<int>> anc;
  std::function<void(const Node &, std::vector<int>)> add =
      [&](const Node &n, std::vector<int> path) {
        int id = static_cast<int>(m.worlds.size());
        m.worlds.push_back(id == 0 ? "b" : "w" + std::to_string(id));
        m.val.push_back(n.val);
        anc.push_back(path);
        path.push_back(id);
        for (auto &k : n.kids) add(k, path);
      };
  add(root, {});
  size_t n = m.worlds.size();
  m.k0.assign(n, true);
  m.k1.assign(n, true);
  m.less.assign(n, std::vector<bool>(n, false));
  for (size_t y = 0; y < n; ++y)
    for (int x : anc[y]) m.less[x][y] = true;
  m.root = 0;
  return m;
}

}  // namespace

GLResult gl_decide(const ModalPtr &a) {
  if (!unimodal(a)) throw std::invalid_argument("gl_decide needs a unimodal formula");
  GLResult r;
  auto node = expand(Branch{{false, a}});
  if (!node) {
    r.theorem = true;
    return r;
  }
  r.countermodel = tree_model(*node);
  return r;
}

// ---------------------------------------------------------- derivations

namespace {

void atoms_of(const ModalPtr &a, std::vector<ModalPtr> &out) {
  if (a->kind == ModalKind::Var || a->kind == ModalKind::Box) {
    for (auto &x : out)
      if (equal(x, a)) return;
    out.push_back(a);
    return;
  }
  for (auto &s : a->subs) atoms_of(s, out);
}

bool prop_eval(const ModalPtr &a, const std::vector<ModalPtr> &atoms, unsigned long bits) {
  switch (a->kind) {
    case ModalKind::Var:
    case ModalKind::Box:
      for (size_t i = 0; i < atoms.size(); ++i)
        if (equal(atoms[i], a)) return bits >> i & 1;
      return false;
    case ModalKind::Bot: return false;
    case ModalKind::Not: return !prop_eval(a->subs[0], atoms, bits);
    case ModalKind::And:
      return prop_eval(a->subs[0], atoms, bits) && prop_eval(a->subs[1], atoms, bits);
    case ModalKind::Or:
      return prop_eval(a->subs[0], atoms, bits) || prop_eval(a->subs[1], atoms, bits);
    case ModalKind::Imp:
      return !prop_eval(a->subs[0], atoms, bits) || prop_eval(a->subs[1], atoms, bits);
  }
  return false;
}

bool is_imp(const ModalPtr &a) { return a->kind == ModalKind::Imp; }
bool is_box(const ModalPtr &a) { return a->kind == ModalKind::Box; }

}  // namespace

bool is_tautology(const ModalPtr &a) {
  std::vector<ModalPtr> atoms;
  atoms_of(a, atoms);
  if (atoms.size() > 20) throw std::invalid_argument("too many propositional atoms");
  for (unsigned long bits = 0; bits < (1ul << atoms.size()); ++bits)
    if (!prop_eval(a, atoms, bits)) return false;
  return true;
}

bool is_axiom_instance(const ModalPtr &a, const std::string &which) {
  if (!is_imp(a)) return false;
  auto &l = a->subs[0];
  auto &r = a->subs[1];
  auto want = [&](const char *n) { return which.empty() || which == n; };
  // [i](X -> Y) -> ([i]X -> [i]Y)
  if (want("K") && is_box(l) && is_imp(l->subs[0]) && is_imp(r) &&
      is_box(r->subs[0]) && is_box(r->subs[1]) && r->subs[0]->box == l->box &&
      r->subs[1]->box == l->box && equal(r->subs[0]->subs[0], l->subs[0]->subs[0]) &&
      equal(r->subs[1]->subs[0], l->subs[0]->subs[1]))
    return true;
  // [i]X -> [j][i]X
  if (want("4") && is_box(l) && is_box(r) && equal(r->subs[0], l)) return true;
  // [i]([i]X -> X) -> [i]X
  if (want("Lob") && is_box(l) && is_box(r) && l->box == r->box &&
      is_imp(l->subs[0]) && equal(l->subs[0]->subs[0], r) &&
      equal(l->subs[0]->subs[1], r->subs[0]))
    return true;
  return false;
}

DerivationCheck cs2_check_derivation(const Derivation &d, const ModalPtr &goal) {
  DerivationCheck c;
  auto fail = [&](int line, std::string why) {
    c.ok = false;
    c.line = line;
    c.reason = std::move(why);
    return c;
  };
  if (d.lines.empty()) return fail(0, "empty derivation");
  for (size_t i = 0; i < d.lines.size(); ++i) {
    int no = static_cast<int>(i) + 1;
    auto &ln = d.lines[i];
    if (!ln.formula) return fail(no, "missing formula");
    auto ref = [&](int k) -> const ModalPtr * {
      if (k < 1 || k >= no) return nullptr;
      return &d.lines[k - 1].formula;
    };
    switch (ln.rule) {
      case DerivationLine::Taut:
        if (!is_tautology(ln.formula)) return fail(no, "not a tautology");
        break;
      case DerivationLine::Axiom:
        if (!is_axiom_instance(ln.formula, ln.axiom)) return fail(no, "not an axiom instance");
        break;
      case DerivationLine::MP: {
        auto a = ref(ln.from1), ab = ref(ln.from2);
        if (!a || !ab) return fail(no, "bad line reference");
        if (!is_imp(*ab) || !equal((*ab)->subs[0], *a) || !equal((*ab)->subs[1], ln.formula))
          return fail(no, "modus ponens does not match");
        break;
      }
      case DerivationLine::Nec: {
        auto a = ref(ln.from1);
        if (!a) return fail(no, "bad line reference");
        if (ln.box != 0 && ln.box != 1) return fail(no, "bad box index");
        if (!equal(ln.formula, mbox(ln.box, *a))) return fail(no, "necessitation does not match");
        break;
      }
      case DerivationLine::Subst: {
        auto a = ref(ln.from1);
        if (!a) return fail(no, "bad line reference");
        if (!equal(ln.formula, msubstitute(*a, ln.subst)))
          return fail(no, "substitution does not match");
        break;
      }
    }
  }
  if (!equal(d.lines.back().formula, goal))
    return fail(static_cast<int>(d.lines.size()), "last line is not the goal");
  c.ok = true;
  return c;
}

namespace {

const char *rule_name(DerivationLine::Rule r) {
  switch (r) {
    case DerivationLine::Taut: return "taut";
    case DerivationLine::Axiom: return "axiom";
    case DerivationLine::MP: return "mp";
    case DerivationLine::Nec: return "nec";
    case DerivationLine::Subst: return "subst";
  }
  return "";
}

}  // namespace

json to_json(const Derivation &d) {
  json lines = json::array();
  for (auto &ln : d.lines) {
    json j = {{"formula", print(ln.formula)}, {"rule", rule_name(ln.rule)}};
    if (ln.rule == DerivationLine::Axiom && !ln.axiom.empty()) j["axiom"] = ln.axiom;
    if (ln.rule == DerivationLine::MP) j["from"] = {ln.from1, ln.from2};
    if (ln.rule == DerivationLine::Nec) {
      j["from"] = {ln.from1};
      j["box"] = ln.box;
    }
    if (ln.rule == DerivationLine::Subst) {
      j["from"] = {ln.from1};
      j["subst"] = json::object();
      for (auto &[v, f] : ln.subst) j["subst"][v] = print(f);
    }
    lines.push_back(j);
  }
  return {{"schema", "cs2-derivation/1"}, {"lines", lines}};
}

Derivation derivation_from_json(const json &j) {
  try {
    Derivation d;
    for (auto &x : j.at("lines")) {
      DerivationLine ln;
      ln.formula = parse_modal(x.at("formula").get<std::string>());
      std::string r = x.at("rule");
      if (r == "taut") ln.rule = DerivationLine::Taut;
      else if (r == "axiom") ln.rule = DerivationLine::Axiom;
      else if (r == "mp") ln.rule = DerivationLine::MP;
      else if (r == "nec") ln.rule = DerivationLine::Nec;
      else if (r == "subst") ln.rule = DerivationLine::Subst;
      else throw ModelError("unknown rule: " + r);
      ln.axiom = x.value("axiom", "");
      if (x.contains("from")) {
        auto &f = x.at("from");
        if (f.size() > 0) ln.from1 = f.at(0);
        if (f.size() > 1) ln.from2 = f.at(1);
      }
      ln.box = x.value("box", 0);
      if (x.contains("subst"))
        for (auto &[v, f] : x.at("subst").items())
          ln.subst[v] = parse_modal(f.get<std::string>());
      d.lines.push_back(std::move(ln));
    }
    return d;
  } catch (const json::exception &e) {
    throw ModelError(std::string("malformed derivation: ") + e.what());
  }
}

// --------------------------------------------------------------- search

bool for_each_cs2_model(const std::set<std::string> &vars, unsigned n,
                        const std::function<bool(const CS2Model &)> &visit) {
  if (n == 0) return false;
  const unsigned rest = n - 1;
  std::vector<std::string> vs(vars.begin(), vars.end());
  // Strict partial orders on the non-root worlds, fewest edges first.
  std::vector<std::pair<unsigned, unsigned>> pairs;
  for (unsigned x = 0; x < rest; ++x)
    for (unsigned y = 0; y < rest; ++y)
      if (x != y) pairs.emplace_back(x, y);
  std::vector<unsigned long> orders;
  for (unsigned long bits = 0; bits < (1ul << pairs.size()); ++bits) {
    std::vector<std::vector<bool>> r(rest, std::vector<bool>(rest, false));
    for (size_t i = 0; i < pairs.size(); ++i)
      if (bits >> i & 1) r[pairs[i].first][pairs[i].second] = true;
    bool ok = true;
    for (unsigned x = 0; x < rest && ok; ++x)
      for (unsigned y = 0; y < rest && ok; ++y)
        for (unsigned z = 0; z < rest && ok; ++z)
          if (r[x][y] && r[y][z] && (x == z || !r[x][z])) ok = false;
    if (ok) orders.push_back(bits);
  }
  std::stable_sort(orders.begin(), orders.end(), [](unsigned long a, unsigned long b) {
    return __builtin_popcountl(a) < __builtin_popcountl(b);
  });
  const unsigned long nval = 1ul << vs.size();
  // Per non-root world: membership (1 = K0, 2 = K1, 3 = both) and valuation.
  // Non-root worlds are kept sorted by this key, one representative per
  // relabelling of equal-key worlds.
  const unsigned long nkey = 3 * nval;
  unsigned long combos = 1;
  for (unsigned i = 0; i < rest; ++i) combos *= nkey;
  for (unsigned long order : orders) {
    for (unsigned long rv = 0; rv < nval; ++rv) {
      for (unsigned long c = 0; c < combos; ++c) {
        std::vector<unsigned long> key(rest);
        unsigned long t = c;
        for (unsigned i = 0; i < rest; ++i) {
          key[i] = t % nkey;
          t /= nkey;
        }
        if (!std::is_sorted(key.begin(), key.end())) continue;
        CS2Model m;
        m.worlds.push_back("b");
        for (unsigned i = 0; i < rest; ++i) m.worlds.push_back("x" + std::to_string(i));
        m.k0.assign(n, true);
        m.k1.assign(n, true);
        m.less.assign(n, std::vector<bool>(n, false));
        m.val.assign(n, {});
        for (size_t j = 0; j < vs.size(); ++j)
          if (rv >> j & 1) m.val[0].insert(vs[j]);
        for (unsigned i = 0; i < rest; ++i) {
          unsigned long mem = key[i] / nval + 1, val = key[i] % nval;
          m.k0[i + 1] = mem & 1;
          m.k1[i + 1] = mem & 2;
          for (size_t j = 0; j < vs.size(); ++j)
            if (val >> j & 1) m.val[i + 1].insert(vs[j]);
          m.less[0][i + 1] = true;
        }
        for (size_t i = 0; i < pairs.size(); ++i)
          if (order >> i & 1) m.less[pairs[i].first + 1][pairs[i].second + 1] = true;
        if (visit(m)) return true;
      }
    }
  }
  return false;
}

std::optional<CS2Model> cs2_countermodel_search(const ModalPtr &a, unsigned max_worlds) {
  if (max_worlds < 1) throw std::invalid_argument("max_worlds must be at least 1");
  std::optional<CS2Model> found;
  auto vars = modal_vars(a);
  for (unsigned n = 1; n <= max_worlds && !found; ++n)
    for_each_cs2_model(vars, n, [&](const CS2Model &m) {
      if (eval(m, m.root, a)) return false;
      found = m;
      return true;
    });
  return found;
}

}  // namespace provlab
