// Consistency statements and the explicit witness predicates, as formula
// templates in the free variable x over the uninterpreted Prf atom.

#ifndef PROVLAB_GALLERY_HPP_
#define PROVLAB_GALLERY_HPP_

#include <variant>

#include "provlab/syntax.hpp"

namespace provlab {

struct GalleryError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class ConVariant { H, L, G, Sigma1 };
std::string to_string(ConVariant v);
ConVariant parse_con_variant(const std::string &s);

struct PredicateTemplate {
  std::string name;
  FormulaPtr formula;
  Level declared_level;
  std::string citation;  // knowledge-base label
};

struct MetadataOnly {
  std::string name;
  Level declared_level;
  std::string citation;
  std::string reason;
};

using GalleryEntry = std::variant<PredicateTemplate, MetadataOnly>;

// Phi(t): the template formula with t for x.
FormulaPtr instantiate(const PredicateTemplate &phi, const TermPtr &t);

FormulaPtr make_con(ConVariant v, const PredicateTemplate &phi);

// Ey (Prf(x, y) & Az < y (Prf(#c, z) -> delta)) with c the code of 0 != 0.
PredicateTemplate pr_delta(const FormulaPtr &delta, const std::string &name = "");

PredicateTemplate parity_normalize(const PredicateTemplate &t);

// Ey Prf(x, y), the standard predicate.
PredicateTemplate standard_pr();

// The seven axioms of Robinson arithmetic.
const std::vector<FormulaPtr> &q_axioms();

std::vector<std::string> catalog();
GalleryEntry gallery(const std::string &name);

nlohmann::json to_json(const GalleryEntry &e);

}  // namespace provlab

#endif
