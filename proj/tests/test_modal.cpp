#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <numeric>

#include "gen.hpp"
#include "provlab/modal.hpp"

using namespace provlab;

namespace {

// Bottom-up evaluator: the set of worlds satisfying each subformula.
std::vector<bool> truth_set(const CS2Model &m, const ModalPtr &a) {
  size_t n = m.worlds.size();
  std::vector<bool> out(n);
  std::vector<std::vector<bool>> s;
  for (auto &x : a->subs) s.push_back(truth_set(m, x));
  for (size_t w = 0; w < n; ++w) {
    switch (a->kind) {
      case ModalKind::Var: out[w] = m.val[w].count(a->name); break;
      case ModalKind::Bot: out[w] = false; break;
      case ModalKind::Not: out[w] = !s[0][w]; break;
      case ModalKind::And: out[w] = s[0][w] && s[1][w]; break;
      case ModalKind::Or: out[w] = s[0][w] || s[1][w]; break;
      case ModalKind::Imp: out[w] = !s[0][w] || s[1][w]; break;
      case ModalKind::Box: {
        const auto &k = a->box ? m.k1 : m.k0;
        bool all = true;
        for (size_t y = 0; y < n; ++y)
          if (m.less[w][y] && k[y]) all = all && s[0][y];
        out[w] = all;
      }
    }
  }
  return out;
}

CS2Model random_model(gen::Rng &r, unsigned n) {
  CS2Model m;
  std::vector<int> rank(n);
  std::iota(rank.begin(), rank.end(), 0);
  std::shuffle(rank.begin() + 1, rank.end(), r);
  m.less.assign(n, std::vector<bool>(n, false));
  for (unsigned x = 0; x < n; ++x)
    for (unsigned y = 0; y < n; ++y)
      if (rank[x] < rank[y] && (rank[x] == 0 || gen::pick(r, 2))) m.less[x][y] = true;
  for (unsigned k = 0; k < n; ++k)
    for (unsigned x = 0; x < n; ++x)
      for (unsigned y = 0; y < n; ++y)
        if (m.less[x][k] && m.less[k][y]) m.less[x][y] = true;
  for (unsigned x = 0; x < n; ++x) {
    m.worlds.push_back("w" + std::to_string(x));
    unsigned mem = x == 0 ? 3 : 1 + gen::pick(r, 3);
    m.k0.push_back(mem & 1);
    m.k1.push_back(mem & 2);
    std::set<std::string> v;
    if (gen::pick(r, 2)) v.insert("p");
    if (gen::pick(r, 2)) v.insert("q");
    m.val.push_back(v);
  }
  m.root = 0;
  return m;
}

// Every rooted tree on up to `max_nodes` nodes (parent[i] < i) with every
// valuation, transitively closed; K0 = K1 = W.
std::optional<CS2Model> tree_search(const ModalPtr &a, unsigned max_nodes) {
  std::vector<std::string> vs;
  for (auto &v : modal_vars(a)) vs.push_back(v);
  for (unsigned n = 1; n <= max_nodes; ++n) {
    std::vector<unsigned> parent(n, 0);
    while (true) {
      CS2Model m;
      m.less.assign(n, std::vector<bool>(n, false));
      for (unsigned i = 1; i < n; ++i)
        for (unsigned p = parent[i];; p = parent[p]) {
          m.less[p][i] = true;
          if (p == 0) break;
        }
      for (unsigned i = 0; i < n; ++i) m.worlds.push_back("t" + std::to_string(i));
      m.k0.assign(n, true);
      m.k1.assign(n, true);
      m.root = 0;
      unsigned long total = 1ul << (vs.size() * n);
      for (unsigned long bits = 0; bits < total; ++bits) {
        m.val.assign(n, {});
        for (unsigned i = 0; i < n; ++i)
          for (size_t j = 0; j < vs.size(); ++j)
            if (bits >> (i * vs.size() + j) & 1) m.val[i].insert(vs[j]);
        if (!truth_set(m, a)[0]) return m;
      }
      unsigned i = n - 1;
      while (i >= 1 && parent[i] == i - 1) parent[i--] = 0;
      if (i < 1) break;
      ++parent[i];
    }
  }
  return std::nullopt;
}

DerivationLine line(const char *f, DerivationLine::Rule r, int a = 0, int b = 0) {
  DerivationLine l;
  l.formula = parse_modal(f);
  l.rule = r;
  l.from1 = a;
  l.from2 = b;
  return l;
}

Derivation godel2_cert() {
  using L = DerivationLine;
  Derivation d;
  d.lines.push_back(line("~[0]F -> ([0]F -> F)", L::Taut));
  auto nec = line("[0](~[0]F -> ([0]F -> F))", L::Nec, 1);
  d.lines.push_back(nec);
  d.lines.push_back(line("[0](~[0]F -> ([0]F -> F)) -> ([0]~[0]F -> [0]([0]F -> F))", L::Axiom));
  d.lines.push_back(line("[0]~[0]F -> [0]([0]F -> F)", L::MP, 2, 3));
  d.lines.push_back(line("[0]([0]F -> F) -> [0]F", L::Axiom));
  d.lines.push_back(line("([0]~[0]F -> [0]([0]F -> F)) -> (([0]([0]F -> F) -> [0]F) -> ([0]~[0]F -> [0]F))", L::Taut));
  d.lines.push_back(line("([0]([0]F -> F) -> [0]F) -> ([0]~[0]F -> [0]F)", L::MP, 4, 6));
  d.lines.push_back(line("[0]~[0]F -> [0]F", L::MP, 5, 7));
  return d;
}

bool true_in_all(const ModalPtr &a, unsigned max_worlds) {
  for (unsigned n = 1; n <= max_worlds; ++n)
    if (for_each_cs2_model(modal_vars(a), n,
                           [&](const CS2Model &m) { return !truth_set(m, a)[m.root]; }))
      return false;
  return true;
}

}  // namespace

TEST_CASE("modal parse and print") {
  auto a = parse_modal("[0]p & [1]~p -> [0]F | [1]F");
  CHECK(print(a) == "[0]p & [1]~p -> [0]F | [1]F");
  CHECK(equal(parse_modal("[]p"), mbox(0, mvar("p"))));
  CHECK(equal(parse_modal("□p → ⊥"), mimp(mbox(0, mvar("p")), mbot())));
  CHECK(modal_depth(parse_modal("[0]([0]p -> p)")) == 2);
  CHECK_FALSE(unimodal(a));
  CHECK_THROWS_AS(parse_modal("[2]p"), SyntaxError);
  gen::Rng r(41);
  for (int i = 0; i < 300; ++i) {
    auto f = gen::modal(r, 4, true);
    REQUIRE(equal(parse_modal(print(f)), f));
  }
}

TEST_CASE("CS2 model checks") {
  auto m = mt2_model();
  CHECK(check_cs2_model(m).empty());
  auto refl = m;
  refl.less[1][1] = true;
  auto v = check_cs2_model(refl);
  REQUIRE_FALSE(v.empty());
  CHECK(v[0].rfind("strictness", 0) == 0);
  auto noroot = m;
  noroot.k1[0] = false;
  v = check_cs2_model(noroot);
  REQUIRE_FALSE(v.empty());
  CHECK(v[0].rfind("root membership", 0) == 0);
  CHECK_THROWS_AS(mc_cs2(refl, 0, mbot()), ModelError);
  CHECK_THROWS_AS(world_index(m, "y"), ModelError);
  CHECK(isomorphic(model_from_json(to_json(m)), m));
}

TEST_CASE("MT2 model satisfies the separating formula") {
  auto m = mt2_model();
  CHECK(mc_cs2(m, 0, parse_modal("[0]p & [1]~p & ~[0]F & ~[1]F")));
  CHECK_FALSE(mc_cs2(m, 0, parse_modal("[0]p & [1]~p -> [0]F | [1]F")));
  for (int leaf : {1, 2}) {
    CHECK(mc_cs2(m, leaf, parse_modal("[0]F")));
    CHECK(mc_cs2(m, leaf, parse_modal("[1]F")));
  }
}

TEST_CASE("mc agrees with the set evaluator") {
  gen::Rng r(42);
  for (int i = 0; i < 1000; ++i) {
    auto m = random_model(r, 1 + gen::pick(r, 5));
    REQUIRE(check_cs2_model(m).empty());
    auto f = gen::modal(r, 4, true);
    auto ts = truth_set(m, f);
    for (size_t w = 0; w < m.worlds.size(); ++w)
      REQUIRE(mc_cs2(m, static_cast<int>(w), f) == ts[w]);
  }
}

TEST_CASE("GL samples") {
  auto lob = gl_decide(parse_modal("[0]([0]p -> p) -> [0]p"));
  CHECK(lob.theorem);
  CHECK(gl_decide(parse_modal("[0]~[0]F -> [0]F")).theorem);
  auto t = gl_decide(parse_modal("[0]p -> p"));
  REQUIRE_FALSE(t.theorem);
  REQUIRE(t.countermodel);
  // A single irreflexive world already refutes it.
  CHECK(t.countermodel->worlds.size() == 1);
  CHECK_FALSE(mc_cs2(*t.countermodel, 0, parse_modal("[0]p -> p")));
  CHECK_FALSE(gl_decide(parse_modal("~[0]F")).theorem);
  CHECK(gl_decide(parse_modal("[0]p -> [0][0]p")).theorem);
  CHECK_THROWS(gl_decide(parse_modal("[1]p")));
}

TEST_CASE("GL tableau agrees with tree search") {
  gen::Rng r(43);
  int disagreements = 0, theorems = 0;
  for (int i = 0; i < 200; ++i) {
    auto f = gen::modal(r, 3, false);
    auto g = gl_decide(f);
    if (g.countermodel) {
      REQUIRE(check_cs2_model(*g.countermodel).empty());
      REQUIRE_FALSE(mc_cs2(*g.countermodel, 0, f));
      REQUIRE(g.countermodel->worlds.size() <= 5);
    }
    auto s = tree_search(f, 5);
    if (g.theorem == s.has_value()) {
      ++disagreements;
      MESSAGE(print(f));
    }
    theorems += g.theorem;
  }
  CHECK(disagreements == 0);
  MESSAGE("theorems among 200: " << theorems);
}

TEST_CASE("derivation checking") {
  using L = DerivationLine;
  Derivation taut;
  taut.lines.push_back(line("p | ~p", L::Taut));
  CHECK(cs2_check_derivation(taut, parse_modal("p | ~p")).ok);

  Derivation four;
  four.lines.push_back(line("[0]p -> [1][0]p", L::Axiom));
  four.lines.back().axiom = "4";
  CHECK(cs2_check_derivation(four, parse_modal("[0]p -> [1][0]p")).ok);

  auto g2 = godel2_cert();
  CHECK(cs2_check_derivation(g2, parse_modal("[0]~[0]F -> [0]F")).ok);

  auto broken = g2;
  broken.lines[3].from2 = 9;
  auto c = cs2_check_derivation(broken, parse_modal("[0]~[0]F -> [0]F"));
  CHECK_FALSE(c.ok);
  CHECK(c.line == 4);

  Derivation lob;
  lob.lines.push_back(line("[0]([0]p -> p) -> [0]p", L::Axiom));
  lob.lines.push_back(line("[1]([1]q -> q) -> [1]q", L::Subst, 1));
  CHECK_FALSE(cs2_check_derivation(lob, parse_modal("[1]([1]q -> q) -> [1]q")).ok);
  lob.lines[1] = line("[0]([0]q -> q) -> [0]q", L::Subst, 1);
  lob.lines[1].subst["p"] = mvar("q");
  CHECK(cs2_check_derivation(lob, parse_modal("[0]([0]q -> q) -> [0]q")).ok);

  auto round = derivation_from_json(to_json(g2));
  CHECK(cs2_check_derivation(round, parse_modal("[0]~[0]F -> [0]F")).ok);

  CHECK_FALSE(is_axiom_instance(parse_modal("[0]p -> p")));
  CHECK(is_axiom_instance(parse_modal("[1](p -> q) -> ([1]p -> [1]q)"), "K"));
  CHECK_FALSE(is_axiom_instance(parse_modal("[1](p -> q) -> ([0]p -> [1]q)"), "K"));
}

TEST_CASE("certified formulas hold in every small CS2 model") {
  CHECK(true_in_all(parse_modal("[0]~[0]F -> [0]F"), 4));
  CHECK(true_in_all(parse_modal("[0]([0]p -> p) -> [0]p"), 4));
  CHECK(true_in_all(parse_modal("[0]p -> [1][0]p"), 4));
  CHECK_FALSE(true_in_all(parse_modal("[0]p -> [0][1]p"), 3));
  // Random axiom instances.
  gen::Rng r(44);
  for (int i = 0; i < 40; ++i) {
    auto a = gen::modal(r, 1, true, {"p"});
    auto b = gen::modal(r, 1, true, {"p"});
    int bi = gen::pick(r, 2), bj = gen::pick(r, 2);
    ModalPtr inst;
    switch (i % 3) {
      case 0: inst = mimp(mbox(bi, mimp(a, b)), mimp(mbox(bi, a), mbox(bi, b))); break;
      case 1: inst = mimp(mbox(bi, a), mbox(bj, mbox(bi, a))); break;
      default: inst = mimp(mbox(bi, mimp(mbox(bi, a), a)), mbox(bi, a));
    }
    REQUIRE(is_axiom_instance(inst));
    REQUIRE(true_in_all(inst, 3));
  }
}

TEST_CASE("CS2 countermodel search") {
  auto t0 = std::chrono::steady_clock::now();
  auto f = parse_modal("[0]p & [1]~p -> [0]F | [1]F");
  auto m = cs2_countermodel_search(f, 3);
  REQUIRE(m);
  CHECK(m->worlds.size() == 3);
  CHECK(isomorphic(*m, mt2_model()));
  CHECK(check_cs2_model(*m).empty());
  CHECK_FALSE(mc_cs2(*m, m->root, f));
  CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(1));

  CHECK_FALSE(cs2_countermodel_search(parse_modal("p -> p | q"), 3));
  CHECK_FALSE(cs2_countermodel_search(parse_modal("[0]p -> [1][0]p"), 3));

  gen::Rng r(45);
  for (int i = 0; i < 60; ++i) {
    auto g = gen::modal(r, 3, true, {"p"});
    if (auto c = cs2_countermodel_search(g, 3)) {
      REQUIRE(check_cs2_model(*c).empty());
      REQUIRE_FALSE(mc_cs2(*c, c->root, g));
    }
  }
}
