#include "provlab/lattice.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <regex>

namespace provlab {

using nlohmann::json;

namespace {

// Constant-initialized so the tables are usable during static init elsewhere.
constexpr std::array<const char *, 5> kLevels = {"D0", "S1", "P1", "S2", "P2"};
constexpr std::array<const char *, 4> kVariants = {"H", "L", "S1", "G"};

// a is included in b
bool level_sub(const std::string &a, const std::string &b) {
  if (a == b || a == "D0") return true;
  if (a == "S1" || a == "P1") return b == "S2" || b == "P2";
  return false;
}

std::string level_alias(std::string s) {
  static const std::map<std::string, std::string> m = {
      {"Delta0", "D0"}, {"Sigma0", "D0"}, {"Pi0", "D0"}, {"Sigma1", "S1"},
      {"Pi1", "P1"},    {"Sigma2", "S2"}, {"Pi2", "P2"}};
  auto it = m.find(s);
  if (it != m.end()) return it->second;
  if (std::find(kLevels.begin(), kLevels.end(), s) == kLevels.end())
    throw LatticeError("unknown level: " + s);
  return s;
}

std::string variant_alias(std::string s) {
  if (s == "Sigma1" || s == "Sigma" || s == "S") return "S1";
  if (std::find(kVariants.begin(), kVariants.end(), s) == kVariants.end())
    throw LatticeError("unknown consistency variant: " + s);
  return s;
}

std::string lvl_of(const std::string &flag) {
  return flag.substr(6, flag.size() - 7);  // PhiIn(L)
}

bool flag_ok(const FactSet &flags, const std::string &premise) {
  if (premise == "SEqualsT") return flags.count(premise) > 0;
  auto want = lvl_of(premise);
  for (auto &f : flags)
    if (f.rfind("PhiIn(", 0) == 0 && level_sub(lvl_of(f), want)) return true;
  return false;
}

}  // namespace

std::string normalize_fact(const std::string &raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  static const std::map<std::string, std::string> alias = {
      {"SC", "GammaC(S1)"},   {"SCU", "GammaCU(S1)"}, {"SCG", "GammaCG(S1)"},
      {"DC", "GammaC(D0)"},   {"D0C", "GammaC(D0)"},  {"DCU", "GammaCU(D0)"},
      {"D0CU", "GammaCU(D0)"}, {"DCG", "GammaCG(D0)"}, {"D0CG", "GammaCG(D0)"},
      {"B1", "Bm(1)"},        {"B2", "Bm(2)"},        {"B3", "Bm(3)"},
      {"BU2", "BUm(2)"},      {"BU3", "BUm(3)"},      {"Sigma1", "PhiIn(S1)"},
      {"Delta0", "PhiIn(D0)"}, {"Pi1", "PhiIn(P1)"},  {"Sigma2", "PhiIn(S2)"},
      {"Pi2", "PhiIn(P2)"},   {"S=T", "SEqualsT"},    {"SCm", "SCminus"}};
  if (auto it = alias.find(s); it != alias.end()) return it->second;
  static const std::set<std::string> plain = {
      "D1", "D2", "D3", "PC", "SCminus", "DU1", "DU2", "DU3", "CB",
      "PCU", "DG2", "DG3", "PCG", "Ax", "SEqualsT"};
  if (plain.count(s)) return s;
  std::smatch m;
  static const std::regex call(R"(([A-Za-z]+)\(([^,()]+)(?:,([^,()]+))?\))");
  if (std::regex_match(s, m, call)) {
    std::string head = m[1], a = m[2], b = m[3];
    if ((head == "Bm" || head == "BUm") && b.empty()) {
      if (!std::all_of(a.begin(), a.end(), ::isdigit) || a.size() > 3 || std::stoi(a) < 1)
        throw LatticeError("bad parameter in " + raw);
      return head + "(" + std::to_string(std::stoi(a)) + ")";
    }
    if ((head == "GammaC" || head == "GammaCU" || head == "GammaCG" ||
         head == "PhiIn") && b.empty())
      return head + "(" + level_alias(a) + ")";
    if (head == "NotCon" && b.empty()) return "NotCon(" + variant_alias(a) + ")";
    if (head == "ConImp" && !b.empty())
      return "ConImp(" + variant_alias(a) + "," + variant_alias(b) + ")";
  }
  static const std::regex nc(R"((?:~|!|not)Con\^?([A-Za-z0-9]+))");
  if (std::regex_match(s, m, nc)) return "NotCon(" + variant_alias(m[1]) + ")";
  throw LatticeError("unknown fact: " + raw);
}

bool is_flag(const std::string &f) {
  return f == "SEqualsT" || f.rfind("PhiIn(", 0) == 0;
}

bool is_con_fact(const std::string &f) {
  return f.rfind("NotCon(", 0) == 0 || f.rfind("ConImp(", 0) == 0;
}

std::pair<FactSet, FactSet> split_facts(const std::vector<std::string> &in) {
  FactSet flags, rest;
  for (auto &s : in) {
    auto f = normalize_fact(s);
    (is_flag(f) ? flags : rest).insert(f);
  }
  return {flags, rest};
}

std::string to_string(Entailment::Kind k) {
  switch (k) {
    case Entailment::Yes: return "yes";
    case Entailment::No: return "no";
    default: return "unknown";
  }
}

// ---------------------------------------------------------------------------
// Rule base

namespace {

struct Builder {
  KnowledgeBase kb;

  void rule(std::string id, std::string group, std::vector<std::string> prem,
            std::string concl, std::string citation = "") {
    Rule r;
    r.id = std::move(id);
    r.group = std::move(group);
    r.premises = std::move(prem);
    r.conclusion = std::move(concl);
    r.citation = citation.empty() ? r.group : citation;
    std::string q;
    for (size_t i = 0; i < r.premises.size(); ++i)
      q += (i ? ", " : "") + r.premises[i];
    r.quote = (q.empty() ? "" : q + " ") + "=> " + r.conclusion;
    kb.rules.push_back(std::move(r));
  }

  void atom(std::string id, std::string display, std::string cit) {
    kb.atoms.push_back({std::move(id), std::move(display), std::move(cit)});
  }
};

std::string B(unsigned m) { return "Bm(" + std::to_string(m) + ")"; }
std::string BU(unsigned m) { return "BUm(" + std::to_string(m) + ")"; }
std::string G(const char *k, const std::string &l) {
  return std::string(k) + "(" + l + ")";
}
std::string P(const std::string &l) { return "PhiIn(" + l + ")"; }

void add_atoms(Builder &b, unsigned M) {
  b.atom("D1", "D1", "defLocal");
  b.atom("D2", "D2", "defLocal");
  b.atom("D3", "D3", "defLocal");
  b.atom("PC", "PC", "defLocal");
  b.atom("SCminus", "SC-", "remSCminus");
  b.atom("DU1", "D1U", "defUniform");
  b.atom("DU2", "D2U", "defUniform");
  b.atom("DU3", "D3U", "defUniform");
  b.atom("CB", "CB", "defUniform");
  b.atom("PCU", "PCU", "defUniform");
  b.atom("DG2", "D2G", "defGlobal");
  b.atom("DG3", "D3G", "defGlobal");
  b.atom("PCG", "PCG", "defGlobal");
  b.atom("Ax", "Ax", "defAx");
  for (unsigned m = 1; m <= M; ++m) {
    b.atom(B(m), "B" + std::to_string(m), "defLocal");
    b.atom(BU(m), "BU" + std::to_string(m), "defUniform");
  }
  for (std::string l : kLevels) {
    b.atom(G("GammaC", l), l + "C", "defLocal");
    b.atom(G("GammaCU", l), l + "CU", "defUniform");
    b.atom(G("GammaCG", l), l + "CG", "defGlobal");
  }
}

void add_rules(Builder &b, unsigned M) {
  // Definitional and strength links.
  b.rule("defB.1", "defLocal", {B(1)}, "D1");
  b.rule("defB.2", "defLocal", {"D1"}, B(1));
  b.rule("defBU.1", "defUniform", {BU(1)}, "DU1");
  b.rule("defBU.2", "defUniform", {"DU1"}, BU(1));
  const std::pair<const char *, const char *> ul[] = {
      {"DU1", "D1"}, {"DU2", "D2"}, {"DU3", "D3"}, {"PCU", "PC"}};
  for (auto [u, l] : ul) b.rule(std::string("str.") + u, "defUniform", {u}, l);
  for (unsigned m = 1; m <= M; ++m)
    b.rule("str." + BU(m), "defUniform", {BU(m)}, B(m));
  const std::pair<const char *, const char *> gu[] = {
      {"DG2", "DU2"}, {"DG3", "DU3"}, {"PCG", "PCU"}};
  for (auto [g, u] : gu) b.rule(std::string("str.") + g, "defGlobal", {g}, u);
  for (std::string l : kLevels) {
    b.rule("str.CU." + l, "defUniform", {G("GammaCU", l)}, G("GammaC", l));
    b.rule("str.CG." + l, "defGlobal", {G("GammaCG", l)}, G("GammaCU", l));
  }
  // Truth definitions for a larger class restrict to smaller ones.
  for (std::string hi : kLevels)
    for (std::string lo : kLevels)
      if (hi != lo && level_sub(lo, hi))
        for (const char *k : {"GammaC", "GammaCU", "GammaCG"})
          b.rule(std::string("mono.") + k + "." + hi + "." + lo, "defHier",
                 {G(k, hi)}, G(k, lo));

  // Local conditions.
  b.rule("LP1.1", "LP1", {"D1"}, G("GammaC", "D0"));
  for (unsigned m = 1; m <= M; ++m)
    b.rule("LP1.2[" + std::to_string(m) + "]", "LP1", {G("GammaC", "D0"), B(m)}, "D1");
  b.rule("LP1.3", "LP1", {B(3)}, "D2");
  for (unsigned m = 1; m <= M; ++m)
    b.rule("LP1.4a[" + std::to_string(m) + "]", "LP1", {"D1", "D2"}, B(m));
  for (unsigned m = 3; m <= M; ++m)
    b.rule("LP1.4c[" + std::to_string(m) + "]", "LP1", {"D1", B(m)}, "D2");
  for (std::string l : kLevels)
    b.rule("LP1.5[" + l + "]", "LP1", {P(l), G("GammaC", l)}, "D3");
  b.rule("LP1.6a", "LP1", {B(2), "PC"}, G("GammaC", "S1"));
  b.rule("LP1.6b", "LP1", {B(2), G("GammaC", "S1")}, "PC");
  b.rule("LP1.7", "LP1", {B(2), "PC"}, "D1");
  b.rule("LP1.8a", "LP1", {"D1", "D2", "PC"}, G("GammaC", "S1"));
  b.rule("LP1.8b", "LP1", {"D1", "D2", G("GammaC", "S1")}, "PC");
  b.rule("SCm.1", "remSCminus", {"PC"}, "SCminus");
  b.rule("SCm.2", "remSCminus", {B(2), "SCminus"}, G("GammaC", "S1"));
  b.rule("SCm.3", "remSCminus", {G("GammaC", "S1")}, "SCminus");
  b.rule("SCm.4", "remSCminus", {P("S1"), "D1", "SCminus"}, "NotCon(H)");

  // Implications between consistency statements.
  b.rule("LP2.1", "LP2", {"D1"}, "ConImp(H,L)");
  b.rule("LP2.2", "LP2", {}, "ConImp(L,S1)");
  b.rule("LP2.3", "LP2", {}, "ConImp(S1,G)");
  for (std::string a : kVariants)
    for (std::string c : kVariants)
      if (a != c)
        b.rule("chain." + a + "." + c, "LP2",
               {"ConImp(" + a + "," + c + ")", "NotCon(" + c + ")"},
               "NotCon(" + a + ")");

  // Unprovability from local conditions.
  b.rule("G2", "G2", {"D1", "D2", "D3"}, "NotCon(L)");
  b.rule("G2-2", "G2-2", {"D1", B(2), "D3"}, "NotCon(H)");
  for (std::string l : kLevels)
    b.rule("Jer[" + l + "]", "Jer", {P(l), "D1", G("GammaC", l)}, "NotCon(H)");
  b.rule("G2-3", "G2-3", {P("S1"), "D1", "PC"}, "NotCon(H)");

  // Uniform conditions.
  for (unsigned m = 1; m <= M; ++m)
    b.rule("UP1.1[" + std::to_string(m) + "]", "UP1", {G("GammaC", "D0"), BU(m)}, "DU1");
  b.rule("UP1.2", "UP1", {BU(3)}, "DU2");
  for (unsigned m = 1; m <= M; ++m)
    b.rule("UP1.3a[" + std::to_string(m) + "]", "UP1", {"DU1", "DU2"}, BU(m));
  for (unsigned m = 3; m <= M; ++m)
    b.rule("UP1.3c[" + std::to_string(m) + "]", "UP1", {"DU1", BU(m)}, "DU2");
  for (std::string l : kLevels)
    b.rule("UP1.4[" + l + "]", "UP1", {P(l), G("GammaCU", l)}, "DU3");
  b.rule("UP1.5a", "UP1", {BU(2), "PCU"}, G("GammaCU", "S1"));
  b.rule("UP1.5b", "UP1", {BU(2), G("GammaCU", "S1")}, "PCU");
  b.rule("UP1.6", "UP1", {BU(2), "PCU"}, "DU1");
  b.rule("UP1.7a", "UP1", {"DU1", "DU2", "PCU"}, G("GammaCU", "S1"));
  b.rule("UP1.7b", "UP1", {"DU1", "DU2", G("GammaCU", "S1")}, "PCU");
  b.rule("UP2.1", "UP2", {"D1", "CB"}, "DU1");
  b.rule("UP2.2", "UP2", {BU(2)}, "CB");
  b.rule("UP2.3", "UP2", {"DU2", "PCU"}, "CB");
  b.rule("UC1.1", "UC1", {"D1", BU(2)}, "DU1");
  b.rule("UC1.2", "UC1", {"D1", "DU2", "PCU"}, "DU1");
  b.rule("UHB", "UHB", {P("S1"), B(2), "CB", G("GammaCU", "D0")}, "NotCon(H)");
  b.rule("UBuc", "UBuc", {"DU1", "DU2"}, G("GammaCU", "S1"));
  b.rule("UC2", "UC2", {P("S1"), "DU1", "DU2"}, "NotCon(L)");
  b.rule("MT", "MT", {"D1", BU(2)}, G("GammaCU", "S1"));
  b.rule("MTcor", "MTcor", {"D1", BU(2)}, "PCU");
  b.rule("UC3", "UC3", {P("S1"), "D1", BU(2)}, "NotCon(H)");

  // Global conditions.
  for (std::string l : kLevels)
    b.rule("GP1.1[" + l + "]", "GP1", {P(l), G("GammaCU", l)}, "DG3");
  b.rule("GP1.2", "GP1", {"D1", "DG2", "PCG"}, G("GammaCG", "S1"));
  b.rule("GP2.1", "GP2", {"DG2", "PCG"}, "ConImp(G,H)");
  b.rule("GP2.3", "GP2", {"DG2", G("GammaCG", "S1")}, "ConImp(S1,L)");
  b.rule("GC1.1", "GC1", {P("S1"), "D1", "DG2", "PCG"}, "NotCon(G)");
  b.rule("GC1.2", "GC1", {P("S1"), "D1", "DG2", G("GammaCG", "S1")}, "NotCon(S1)");
  b.rule("GP3.1", "GP3", {"PCG"}, "Ax");
  b.rule("GP3.2", "GP3", {"DG2", "Ax"}, "PCG");
  b.rule("Mon2.1a", "Mon2", {"D1", "DG2", "Ax"}, "DU1");
  b.rule("Mon2.1b", "Mon2", {"D1", "DG2", "Ax"}, G("GammaCG", "S1"));
  b.rule("Mon2.2", "Mon2", {P("S1"), "D1", "DG2", "Ax"}, "NotCon(G)");
}

Witness W(std::string name, std::string cit, FactSet flags, FactSet sat,
          FactSet viol, std::map<std::string, ConStatus> con,
          std::vector<Claim> claims = {}) {
  Witness w;
  w.name = std::move(name);
  w.citation = std::move(cit);
  w.flags = std::move(flags);
  w.satisfies = std::move(sat);
  w.violates = std::move(viol);
  w.con = std::move(con);
  w.claims = std::move(claims);
  return w;
}

Claim holds(std::string f, std::vector<std::string> c) { return {f, true, c}; }
Claim fails(std::string f, std::vector<std::string> c) { return {f, false, c}; }

void add_witnesses(Builder &b, unsigned M) {
  using CS = ConStatus;
  const auto S1 = P("S1");
  auto &ws = b.kb.witnesses;
  // Order matters: separation returns the first match.
  ws.push_back(W("PR_II", "WP2", {S1}, {"D1", "DU1", "DU2", G("GammaCU", "S1")},
                 {"DG2", G("GammaCG", "D0"), "PCG"}, {{"S1", CS::Proves}},
                 {holds(BU(2), {"UP1"}), holds("CB", {"UP2"}),
                  holds("PCU", {"UP1"}), holds("NotCon(L)", {"G2"})}));
  ws.push_back(W("PR_III", "WP3", {S1}, {"D1", "DU1", "DG2", G("GammaCG", "S1")},
                 {}, {{"G", CS::Proves}},
                 {holds(BU(2), {"UP1"}), holds("CB", {"UP2"}),
                  holds("PCU", {"UP1"}), fails("PCG", {"GC1"}),
                  holds("NotCon(S1)", {"GC1"})}));
  ws.push_back(W("PR_IV", "WP4", {S1}, {"D1", "DG2", "DG3"},
                 {G("GammaC", "S1")}, {},
                 {fails("PC", {"LP1"}), fails(BU(2), {"MT", "LP1"}),
                  fails("DU1", {"UP1"}), fails("CB", {"UP2"})}));
  ws.push_back(W("PR_I", "WP1", {S1}, {"D1", "D2", G("GammaC", "S1")},
                 {"DU1", "DU2", "DU3", G("GammaCU", "D0"), "PCU"}, {},
                 {holds(B(2), {"LP1"}), holds("D3", {"LP1"}),
                  holds("PC", {"LP1"}), fails(BU(2), {"UP1"}),
                  fails("CB", {"UP2"})}));
  ws.push_back(W("PR_V", "WP5", {S1}, {"D1", G("GammaCG", "S1")},
                 {"DU1", "PC"}, {},
                 {fails("D2", {"LP1"}), fails(B(2), {"LP1"}),
                  fails("CB", {"UP2"})}));
  ws.push_back(W("PR_VI", "WP6", {S1},
                 {"D1", "DU1", "DG3", G("GammaCG", "D0"), "PCG"},
                 {G("GammaC", "S1"), "CB"}, {},
                 {fails("D2", {"LP1"}), fails(B(2), {"LP1"})}));
  ws.push_back(W("PR_star", "MT2", {S1},
                 {"D1", "DU1", BU(2), G("GammaCG", "S1"), "PCG"}, {"D2"}, {},
                 {holds("CB", {"UP2"})}));
  ws.push_back(W("PR_Q", "exQ", {S1}, {"DG2", G("GammaCG", "S1"), "CB", "PCG"},
                 {"D1", B(2)}, {{"H", CS::Proves}},
                 {holds(G("GammaC", "D0"), {"defHier"}), holds("D2", {"defGlobal"})}));
  FactSet psi_sat = {"DG2", "DG3", BU(2), "CB"};
  for (unsigned m = 2; m <= M; ++m) psi_sat.insert(B(m));
  ws.push_back(W("Psi", "exN", {P("D0")}, psi_sat,
                 {"D1", G("GammaC", "D0"), "PC"}, {{"H", CS::Proves}},
                 {holds("D3", {"defGlobal", "defUniform"})}));
  ws.push_back(W("Feferman", "exFef", {P("S2"), "SEqualsT"},
                 {"D1", "DU1", "DG2", BU(2), G("GammaCG", "S1"), "CB", "PCG"},
                 {"D3"}, {{"H", CS::Proves}}));
  ws.push_back(W("Mostowski", "exMos", {S1},
                 {"D1", "DU1", G("GammaCG", "S1"), "PCG"}, {"D2", B(2), "CB"},
                 {{"L", CS::Proves}, {"H", CS::NotProves}},
                 {holds("NotCon(H)", {"Jer"})}));
  ws.push_back(W("Arai_A1", "exAra", {S1}, {"D1", "DG2"}, {},
                 {{"H", CS::Proves}},
                 {holds(B(2), {"LP1"}), fails("DU1", {"G2", "MT", "UP1"}),
                  fails("CB", {"UP2"}), fails(BU(2), {"MT"}),
                  fails("D3", {"G2"}), fails("PC", {"LP1", "G2-3"})}));
  ws.push_back(W("Arai_A2", "exAra", {S1}, {"D1", "DG3"}, {},
                 {{"H", CS::Proves}},
                 {fails("D2", {"LP1"}), fails(B(2), {"G2-2"}),
                  fails(G("GammaC", "S1"), {"Jer"}), fails("PC", {"G2-3"})}));
  ws.push_back(W("Kurahashi_R1", "exKur", {S1, "SEqualsT"},
                 {"D1", "DG2", G("GammaCG", "D0")}, {}, {{"H", CS::Proves}},
                 {holds(B(2), {"LP1"}), fails("DU1", {"G2", "MT", "UP1"}),
                  fails("CB", {"UP2"}), fails(BU(2), {"MT"}),
                  fails("D3", {"G2"}), fails("PC", {"G2-3"})}));
  ws.push_back(W("Kurahashi_R2", "exKur", {S1, "SEqualsT"},
                 {"D1", "DU1", "CB", "D2", G("GammaCG", "D0")}, {},
                 {{"L", CS::Proves}},
                 {holds(B(2), {"LP1"}), fails("DU2", {"UBuc"}),
                  fails("D3", {"G2"}), fails(BU(2), {"MT"}),
                  fails("PC", {"LP1"})}));
  ws.push_back(W("Kurahashi_R3", "exKur", {S1, "SEqualsT"},
                 {"D1", "DU1", "CB", B(2), "DG3", G("GammaCG", "D0")},
                 {G("GammaC", "S1")}, {{"L", CS::Proves}},
                 {fails("D2", {"G2"}), fails(BU(2), {"MT"}),
                  fails("PC", {"LP1"})}));
}

void add_problems(Builder &b) {
  auto &ps = b.kb.problems;
  ps.push_back({"P1a", {P("S1")}, {"D1", "CB", G("GammaCU", "D0")}, "NotCon(H)",
                "Prob1", "PhiIn(S1), D1, CB, GammaCU(D0) => NotCon(H) ?"});
  ps.push_back({"P1b", {P("S1")}, {"D1", B(2), "CB"}, "NotCon(H)", "Prob1",
                "PhiIn(S1), D1, Bm(2), CB => NotCon(H) ?"});
  ps.push_back({"P2", {P("S1")}, {"D1", BU(2)}, "NotCon(L)", "Prob2",
                "PhiIn(S1), D1, BUm(2) => NotCon(L) ?"});
  ps.push_back({"Pfinal", {}, {}, "", "ProbFinal",
                "remaining implications and non-implications between conditions"});
}

}  // namespace

KnowledgeBase build_kb(unsigned max_m) {
  if (max_m < 3) throw LatticeError("max_m must be at least 3");
  Builder b;
  b.kb.max_m = max_m;
  add_atoms(b, max_m);
  add_rules(b, max_m);
  add_witnesses(b, max_m);
  add_problems(b);
  return b.kb;
}

const KnowledgeBase &default_kb() {
  static const KnowledgeBase kb = build_kb();
  return kb;
}

// ---------------------------------------------------------------------------
// Closure

bool Closure::contains(const std::string &f) const {
  return derived.count(f) || con_implications.count(f) || given.count(f);
}

namespace {

bool premises_hold(const Rule &r, const FactSet &flags, const FactSet &facts) {
  for (auto &p : r.premises) {
    if (is_flag(p)) {
      if (!flag_ok(flags, p)) return false;
    } else if (!facts.count(p)) {
      return false;
    }
  }
  return true;
}

}  // namespace

Closure closure(const KnowledgeBase &kb, const FactSet &flags,
                const FactSet &conditions) {
  for (auto &f : flags)
    if (!is_flag(f)) throw LatticeError("not a flag: " + f);
  Closure c;
  c.given = conditions;
  FactSet facts = conditions;
  std::map<std::string, const Rule *> by;
  for (bool changed = true; changed;) {
    changed = false;
    for (auto &r : kb.rules) {
      if (facts.count(r.conclusion) || !premises_hold(r, flags, facts)) continue;
      facts.insert(r.conclusion);
      by[r.conclusion] = &r;
      changed = true;
    }
  }
  // Certificates: every rule used, in derivation order, premises first.
  std::function<void(const std::string &, Certificate &, FactSet &)> collect =
      [&](const std::string &f, Certificate &out, FactSet &seen) {
        auto it = by.find(f);
        if (it == by.end() || seen.count(f)) return;
        seen.insert(f);
        for (auto &p : it->second->premises)
          if (!is_flag(p)) collect(p, out, seen);
        out.push_back({it->second->id, it->second->premises, f, it->second->citation});
      };
  // Only conditions are emitted; an input without premises (e.g. LP2.2)
  // yields ConImp facts which are reported separately.
  for (auto &[f, r] : by) {
    (void)r;
    if (f.rfind("ConImp(", 0) == 0) {
      c.con_implications.insert(f);
    } else {
      c.derived.insert(f);
    }
    Certificate cert;
    FactSet seen;
    collect(f, cert, seen);
    c.certificates[f] = std::move(cert);
  }
  // Empty input has empty closure: unconditional ConImp facts alone are not
  // consequences of any condition.
  return c;
}

bool replay(const KnowledgeBase &kb, const FactSet &flags,
            const FactSet &conditions, const Certificate &cert,
            const std::string &fact) {
  std::map<std::string, const Rule *> ids;
  for (auto &r : kb.rules) ids[r.id] = &r;
  FactSet have = conditions;
  for (auto &app : cert) {
    auto it = ids.find(app.rule);
    if (it == ids.end()) return false;
    const Rule &r = *it->second;
    if (r.conclusion != app.conclusion || r.premises != app.premises) return false;
    if (!premises_hold(r, flags, have)) return false;
    have.insert(r.conclusion);
  }
  return !cert.empty() && cert.back().conclusion == fact;
}

std::map<std::string, Certificate> unprovability(const KnowledgeBase &kb,
                                                 const FactSet &flags,
                                                 const FactSet &conditions) {
  auto c = closure(kb, flags, conditions);
  std::map<std::string, Certificate> out;
  for (auto &f : c.derived)
    if (f.rfind("NotCon(", 0) == 0) out[f] = c.certificates.at(f);
  return out;
}

// ---------------------------------------------------------------------------
// Witnesses

ConStatus WitnessClosure::status(const std::string &v) const {
  std::string f = "NotCon(" + v + ")";
  if (viol.count(f)) return ConStatus::Proves;
  if (sat.count(f)) return ConStatus::NotProves;
  return ConStatus::Unknown;
}

WitnessClosure close_witness(const KnowledgeBase &kb, const Witness &w) {
  WitnessClosure wc;
  wc.sat = w.satisfies;
  wc.viol = w.violates;
  for (auto &[v, st] : w.con) {
    if (st == ConStatus::Proves) wc.viol.insert("NotCon(" + v + ")");
    if (st == ConStatus::NotProves) wc.sat.insert("NotCon(" + v + ")");
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (auto &r : kb.rules) {
      bool flags_ok = true;
      std::vector<const std::string *> missing;
      for (auto &p : r.premises) {
        if (is_flag(p)) {
          flags_ok &= flag_ok(w.flags, p);
        } else if (!wc.sat.count(p)) {
          missing.push_back(&p);
        }
      }
      if (!flags_ok) continue;
      if (missing.empty()) {
        if (wc.sat.insert(r.conclusion).second) changed = true;
      } else if (missing.size() == 1 && wc.viol.count(r.conclusion)) {
        if (wc.viol.insert(*missing[0]).second) changed = true;
      }
    }
  }
  for (auto &f : wc.sat)
    if (wc.viol.count(f)) wc.conflicts.push_back(f);
  return wc;
}

namespace {

bool witness_covers(const Witness &w, const WitnessClosure &wc,
                    const FactSet &flags, const FactSet &conds) {
  for (auto &f : flags)
    if (f != "SEqualsT" && !flag_ok(w.flags, f)) return false;
  for (auto &c : conds)
    if (!wc.sat.count(c)) return false;
  return wc.conflicts.empty();
}

bool flags_imply(const FactSet &strong, const FactSet &weak) {
  for (auto &f : weak)
    if (f != "SEqualsT" && !flag_ok(strong, f)) return false;
  return true;
}

}  // namespace

std::optional<std::string> separation(const KnowledgeBase &kb,
                                      const FactSet &flags,
                                      const FactSet &conditions,
                                      const std::string &query) {
  for (auto &w : kb.witnesses) {
    auto wc = close_witness(kb, w);
    if (witness_covers(w, wc, flags, conditions) && wc.viol.count(query))
      return w.name;
  }
  return std::nullopt;
}

Entailment entails(const KnowledgeBase &kb, const FactSet &flags,
                   const FactSet &conditions, const std::string &query) {
  Entailment e;
  auto c = closure(kb, flags, conditions);
  if (conditions.count(query)) {
    e.kind = Entailment::Yes;
    return e;
  }
  if (auto it = c.certificates.find(query); it != c.certificates.end()) {
    e.kind = Entailment::Yes;
    e.certificate = it->second;
    return e;
  }
  if (auto w = separation(kb, flags, conditions, query)) {
    e.kind = Entailment::No;
    e.witness = *w;
    return e;
  }
  e.kind = Entailment::Unknown;
  FactSet mine = c.derived;
  mine.insert(conditions.begin(), conditions.end());
  for (auto &p : kb.problems) {
    if (p.query.empty() || p.query != query) continue;
    auto pc = closure(kb, p.flags, p.conditions);
    FactSet theirs = pc.derived;
    theirs.insert(p.conditions.begin(), p.conditions.end());
    if (flags_imply(p.flags, flags) &&
        std::includes(theirs.begin(), theirs.end(), mine.begin(), mine.end())) {
      e.problem = p.id;
      return e;
    }
  }
  e.problem = "Pfinal";
  return e;
}

// ---------------------------------------------------------------------------
// Audit

std::vector<SanityIssue> kb_sanity(const KnowledgeBase &kb) {
  std::vector<SanityIssue> out;
  std::set<std::string> groups;
  for (auto &r : kb.rules) {
    groups.insert(r.group);
    if (r.citation.empty() || r.quote.empty())
      out.push_back({"iii", r.id, "rule without citation"});
  }
  for (auto &a : kb.atoms)
    if (a.citation.empty()) out.push_back({"iii", a.id, "atom without citation"});
  for (auto &p : kb.problems)
    if (p.citation.empty()) out.push_back({"iii", p.id, "problem without citation"});
  for (auto &w : kb.witnesses) {
    if (w.citation.empty())
      out.push_back({"iii", w.name, "witness without citation"});
    auto wc = close_witness(kb, w);
    for (auto &f : wc.conflicts)
      out.push_back({f.rfind("NotCon(", 0) == 0 ? "ii" : "i", w.name,
                     "both satisfied and violated: " + f});
    for (auto &cl : w.claims) {
      bool ok = cl.holds ? wc.sat.count(cl.fact) > 0 : wc.viol.count(cl.fact) > 0;
      if (!ok)
        out.push_back({"iv", w.name,
                       std::string(cl.holds ? "claimed to hold: " : "claimed to fail: ") +
                           cl.fact});
      for (auto &g : cl.cites)
        if (!groups.count(g))
          out.push_back({"v", w.name, "claim on " + cl.fact + " cites missing " + g});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Overview diagram

const std::vector<FigureNode> &figure_nodes() {
  static const std::vector<FigureNode> nodes = {
      {"Con2", {"NotCon(G)"}},
      {"ConS", {"NotCon(S1)"}},
      {"Con1", {"NotCon(L)"}},
      {"Con0", {"NotCon(H)"}},
      {"B2D3", {"Bm(2)", "D3"}},
      {"SC", {"GammaC(S1)"}},
      {"PC", {"PC"}},
      {"B2CB", {"Bm(2)", "CB", "GammaCU(D0)"}},
      {"D2D3", {"D2", "D3"}},
      {"B2SC", {"Bm(2)", "GammaC(S1)"}},
      {"D2SC", {"D2", "GammaC(S1)"}},
      {"BU2", {"BUm(2)"}},
      {"DU12", {"DU1", "DU2"}},
      {"DU1DG2SCG", {"DU1", "DG2", "GammaCG(S1)"}},
      {"DG2SCG", {"DG2", "GammaCG(S1)"}},
      {"DG2PCG", {"DG2", "PCG"}},
  };
  return nodes;
}

const std::vector<std::pair<std::string, std::string>> &figure_arrows() {
  static const std::vector<std::pair<std::string, std::string>> arrows = {
      {"Con2", "ConS"},       {"ConS", "Con1"},   {"Con1", "Con0"},
      {"B2D3", "Con0"},       {"SC", "Con0"},     {"PC", "Con0"},
      {"B2CB", "Con0"},       {"D2D3", "Con1"},   {"D2D3", "B2D3"},
      {"B2SC", "B2D3"},       {"B2SC", "SC"},     {"B2SC", "PC"},
      {"D2SC", "D2D3"},       {"D2SC", "B2SC"},   {"BU2", "B2SC"},
      {"BU2", "B2CB"},        {"DU12", "D2SC"},   {"DU12", "BU2"},
      {"DG2PCG", "DU1DG2SCG"}, {"DG2PCG", "Con2"}, {"DU1DG2SCG", "DU12"},
      {"DU1DG2SCG", "DG2SCG"}, {"DG2SCG", "D2SC"}, {"DG2SCG", "ConS"},
  };
  return arrows;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

std::string con_str(ConStatus s) {
  switch (s) {
    case ConStatus::Proves: return "proves";
    case ConStatus::NotProves: return "not-proves";
    default: return "unknown";
  }
}

ConStatus con_parse(const std::string &s) {
  if (s == "proves") return ConStatus::Proves;
  if (s == "not-proves") return ConStatus::NotProves;
  if (s == "unknown") return ConStatus::Unknown;
  throw LatticeError("bad consistency status: " + s);
}

FactSet facts_from(const json &j) {
  FactSet out;
  for (auto &x : j) out.insert(normalize_fact(x.get<std::string>()));
  return out;
}

}  // namespace

json to_json(const KnowledgeBase &kb) {
  json j;
  j["max_m"] = kb.max_m;
  j["atoms"] = json::array();
  for (auto &a : kb.atoms)
    j["atoms"].push_back({{"id", a.id}, {"display", a.display}, {"citation", a.citation}});
  j["rules"] = json::array();
  for (auto &r : kb.rules)
    j["rules"].push_back({{"id", r.id},
                          {"group", r.group},
                          {"premises", r.premises},
                          {"conclusion", r.conclusion},
                          {"citation", r.citation},
                          {"quote", r.quote}});
  j["witnesses"] = json::array();
  for (auto &w : kb.witnesses) {
    json con = json::object();
    for (auto &[v, s] : w.con) con[v] = con_str(s);
    json claims = json::array();
    for (auto &c : w.claims)
      claims.push_back({{"fact", c.fact}, {"holds", c.holds}, {"cites", c.cites}});
    j["witnesses"].push_back({{"name", w.name},
                              {"flags", w.flags},
                              {"satisfies", w.satisfies},
                              {"violates", w.violates},
                              {"con", con},
                              {"citation", w.citation},
                              {"claims", claims}});
  }
  j["open_problems"] = json::array();
  for (auto &p : kb.problems)
    j["open_problems"].push_back({{"id", p.id},
                                  {"flags", p.flags},
                                  {"conditions", p.conditions},
                                  {"query", p.query},
                                  {"citation", p.citation},
                                  {"statement", p.statement}});
  return j;
}

KnowledgeBase kb_from_json(const json &j) {
  try {
    KnowledgeBase kb;
    kb.max_m = j.at("max_m").get<unsigned>();
    for (auto &a : j.at("atoms"))
      kb.atoms.push_back({a.at("id"), a.at("display"), a.at("citation")});
    for (auto &r : j.at("rules")) {
      Rule x;
      x.id = r.at("id");
      x.group = r.at("group");
      for (auto &p : r.at("premises")) x.premises.push_back(normalize_fact(p));
      x.conclusion = normalize_fact(r.at("conclusion"));
      x.citation = r.at("citation");
      x.quote = r.at("quote");
      kb.rules.push_back(std::move(x));
    }
    for (auto &w : j.at("witnesses")) {
      Witness x;
      x.name = w.at("name");
      x.flags = facts_from(w.at("flags"));
      x.satisfies = facts_from(w.at("satisfies"));
      x.violates = facts_from(w.at("violates"));
      for (auto &[v, s] : w.at("con").items()) x.con[variant_alias(v)] = con_parse(s);
      x.citation = w.at("citation");
      for (auto &c : w.at("claims"))
        x.claims.push_back({normalize_fact(c.at("fact")), c.at("holds"),
                            c.at("cites").get<std::vector<std::string>>()});
      kb.witnesses.push_back(std::move(x));
    }
    for (auto &p : j.at("open_problems")) {
      std::string q = p.at("query");
      kb.problems.push_back({p.at("id"), facts_from(p.at("flags")),
                             facts_from(p.at("conditions")),
                             q.empty() ? q : normalize_fact(q), p.at("citation"),
                             p.at("statement")});
    }
    return kb;
  } catch (const json::exception &e) {
    throw LatticeError(std::string("malformed knowledge base: ") + e.what());
  }
}

json to_json(const Certificate &c) {
  json out = json::array();
  for (auto &a : c)
    out.push_back({{"rule", a.rule},
                   {"premises", a.premises},
                   {"conclusion", a.conclusion},
                   {"citation", a.citation}});
  return out;
}

json to_json(const Entailment &e) {
  json j = {{"verdict", to_string(e.kind)}};
  if (e.kind == Entailment::Yes) j["certificate"] = to_json(e.certificate);
  if (e.kind == Entailment::No) j["witness"] = e.witness;
  if (e.kind == Entailment::Unknown) j["open_problem"] = e.problem;
  return j;
}

json to_json(const SanityIssue &s) {
  return {{"check", s.check}, {"subject", s.subject}, {"detail", s.detail}};
}

}  // namespace provlab
