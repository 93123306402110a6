// Modal formulas with boxes [0] and [1], finite CS2 models, a GL tableau,
// Hilbert derivation checking and bounded CS2 countermodel search.

#ifndef PROVLAB_MODAL_HPP_
#define PROVLAB_MODAL_HPP_

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace provlab {

enum class ModalKind { Var, Bot, Not, And, Or, Imp, Box };

struct Modal;
using ModalPtr = std::shared_ptr<const Modal>;

struct Modal {
  ModalKind kind;
  std::string name;  // Var
  int box = 0;       // Box index
  std::vector<ModalPtr> subs;
};

ModalPtr mvar(const std::string &name);
ModalPtr mbot();
ModalPtr mnot(ModalPtr a);
ModalPtr mand(ModalPtr a, ModalPtr b);
ModalPtr mor(ModalPtr a, ModalPtr b);
ModalPtr mimp(ModalPtr a, ModalPtr b);
ModalPtr mbox(int i, ModalPtr a);

bool equal(const ModalPtr &a, const ModalPtr &b);
int compare(const ModalPtr &a, const ModalPtr &b);

// ASCII: p, F (falsum), ~A, A & B, A | B, A -> B, A <-> B, [0]A, [1]A,
// [] A as [0]A.
ModalPtr parse_modal(const std::string &text);
std::string print(const ModalPtr &a);

std::set<std::string> modal_vars(const ModalPtr &a);
unsigned modal_depth(const ModalPtr &a);
bool unimodal(const ModalPtr &a);
ModalPtr msubstitute(const ModalPtr &a,
                     const std::map<std::string, ModalPtr> &s);

// ------------------------------------------------------------------ models

struct CS2Model {
  std::vector<std::string> worlds;
  std::vector<bool> k0, k1;
  std::vector<std::vector<bool>> less;  // less[a][b]: a precedes b
  int root = 0;
  std::vector<std::set<std::string>> val;
};

std::vector<std::string> check_cs2_model(const CS2Model &m);

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool mc_cs2(const CS2Model &m, int w, const ModalPtr &a);
int world_index(const CS2Model &m, const std::string &name);

nlohmann::json to_json(const CS2Model &m);
CS2Model model_from_json(const nlohmann::json &j);

// The finite model witnessing CS2 does not prove
// [0]p & [1]~p -> [0]F | [1]F.
CS2Model mt2_model();

bool isomorphic(const CS2Model &a, const CS2Model &b);

// -------------------------------------------------------------------- GL

struct GLResult {
  bool theorem = false;
  std::optional<CS2Model> countermodel;  // K0 = K1 = W
};

GLResult gl_decide(const ModalPtr &a);

// --------------------------------------------------------- derivations

struct DerivationLine {
  enum Rule { Taut, Axiom, MP, Nec, Subst };
  ModalPtr formula;
  Rule rule = Taut;
  std::string axiom;            // "K", "4", "Lob" or empty for any
  int from1 = 0, from2 = 0;     // 1-based line references
  int box = 0;                  // Nec
  std::map<std::string, ModalPtr> subst;
};

struct Derivation {
  std::vector<DerivationLine> lines;
};

struct DerivationCheck {
  bool ok = false;
  int line = 0;  // first failing line, 1-based
  std::string reason;
};

DerivationCheck cs2_check_derivation(const Derivation &d,
                                     const ModalPtr &goal);

bool is_tautology(const ModalPtr &a);
bool is_axiom_instance(const ModalPtr &a, const std::string &which = "");

Derivation derivation_from_json(const nlohmann::json &j);
nlohmann::json to_json(const Derivation &d);

std::optional<CS2Model> cs2_countermodel_search(const ModalPtr &a,
                                                unsigned max_worlds);

// Visits CS2 models with exactly n worlds over `vars` in the search order
// (fewest order edges first, non-root worlds sorted by membership and
// valuation). Stops early when `visit` returns true; returns whether it did.
bool for_each_cs2_model(const std::set<std::string> &vars, unsigned n,
                        const std::function<bool(const CS2Model &)> &visit);

}  // namespace provlab

#endif
