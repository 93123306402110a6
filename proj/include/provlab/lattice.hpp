// Derivability conditions: rule base, witness records, closure, entailment,
// separation and a consistency audit.
//
// Facts are canonical strings:
//   conditions  D1 D2 D3 PC SCminus DU1 DU2 DU3 CB PCU DG2 DG3 PCG Ax
//               Bm(m) BUm(m) GammaC(L) GammaCU(L) GammaCG(L)
//   flags       PhiIn(L) SEqualsT
//   statements  NotCon(V)      T does not prove Con^V, V in H L G S1
//               ConImp(A,B)    S proves Con^A -> Con^B
// with L in D0 S1 P1 S2 P2.

#ifndef PROVLAB_LATTICE_HPP_
#define PROVLAB_LATTICE_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace provlab {

struct LatticeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

using FactSet = std::set<std::string>;

// Accepts aliases (SC, SCU, SCG, DC, DCU, DCG, B2, BU2, Sigma1, ...).
std::string normalize_fact(const std::string &s);
bool is_flag(const std::string &fact);
bool is_con_fact(const std::string &fact);  // NotCon or ConImp
// Splits a mixed list into flags and the rest, normalizing each entry.
std::pair<FactSet, FactSet> split_facts(const std::vector<std::string> &in);

struct AtomDef {
  std::string id, display, citation;
};

struct Rule {
  std::string id;
  std::string group;  // label cited by commentary
  std::vector<std::string> premises;
  std::string conclusion;
  std::string citation;
  std::string quote;  // formal restatement
};

struct Claim {
  std::string fact;
  bool holds = true;
  std::vector<std::string> cites;
};

enum class ConStatus { Proves, NotProves, Unknown };

struct Witness {
  std::string name;
  FactSet flags, satisfies, violates;
  std::map<std::string, ConStatus> con;  // H L G S1
  std::string citation;
  std::vector<Claim> claims;  // consequences asserted alongside the record
};

struct OpenProblem {
  std::string id;
  FactSet flags, conditions;
  std::string query;
  std::string citation;
  std::string statement;
};

struct KnowledgeBase {
  unsigned max_m = 6;
  std::vector<AtomDef> atoms;
  std::vector<Rule> rules;
  std::vector<Witness> witnesses;
  std::vector<OpenProblem> problems;
};

KnowledgeBase build_kb(unsigned max_m = 6);
const KnowledgeBase &default_kb();

struct RuleApp {
  std::string rule;
  std::vector<std::string> premises;
  std::string conclusion;
  std::string citation;
};

using Certificate = std::vector<RuleApp>;

struct Closure {
  FactSet derived;            // conditions and NotCon facts, inputs excluded
  FactSet con_implications;   // ConImp facts
  std::map<std::string, Certificate> certificates;
  bool contains(const std::string &fact) const;
  FactSet given;
};

Closure closure(const KnowledgeBase &kb, const FactSet &flags,
                const FactSet &conditions);

// Re-apply the chain from the inputs; true when every step fires and the
// last one concludes `fact`.
bool replay(const KnowledgeBase &kb, const FactSet &flags,
            const FactSet &conditions, const Certificate &cert,
            const std::string &fact);

struct Entailment {
  enum Kind { Yes, No, Unknown } kind = Unknown;
  Certificate certificate;
  std::string witness;
  std::string problem;  // open-problem id when Unknown
};
std::string to_string(Entailment::Kind k);

Entailment entails(const KnowledgeBase &kb, const FactSet &flags,
                   const FactSet &conditions, const std::string &query);

std::map<std::string, Certificate> unprovability(const KnowledgeBase &kb,
                                                 const FactSet &flags,
                                                 const FactSet &conditions);

std::optional<std::string> separation(const KnowledgeBase &kb,
                                      const FactSet &flags,
                                      const FactSet &conditions,
                                      const std::string &query);

struct WitnessClosure {
  FactSet sat, viol;
  std::vector<std::string> conflicts;
  ConStatus status(const std::string &variant) const;
};

WitnessClosure close_witness(const KnowledgeBase &kb, const Witness &w);

struct SanityIssue {
  std::string check;  // i .. v
  std::string subject;
  std::string detail;
};

// (i) satisfied/violated overlap, (ii) consistency-statement conflicts,
// (iii) missing citations, (iv) commentary claims not re-derived,
// (v) commentary citing a rule group absent from the base.
std::vector<SanityIssue> kb_sanity(const KnowledgeBase &kb);

// Nodes and arrows of the overview diagram, for Sigma1 predicates with D1.
struct FigureNode {
  std::string id;
  FactSet facts;
};
const std::vector<FigureNode> &figure_nodes();
const std::vector<std::pair<std::string, std::string>> &figure_arrows();

nlohmann::json to_json(const KnowledgeBase &kb);
KnowledgeBase kb_from_json(const nlohmann::json &j);
nlohmann::json to_json(const Certificate &c);
nlohmann::json to_json(const Entailment &e);
nlohmann::json to_json(const SanityIssue &s);

}  // namespace provlab

#endif
