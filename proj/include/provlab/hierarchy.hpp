// Syntactic arithmetical hierarchy.

#ifndef PROVLAB_HIERARCHY_HPP_
#define PROVLAB_HIERARCHY_HPP_

#include "provlab/syntax.hpp"

namespace provlab {

struct UnregisteredAtom : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Least n with phi in Sigma_n, least n with phi in Pi_n (0 means Delta0).
struct Rank {
  unsigned sigma = 0;
  unsigned pi = 0;
};

Rank rank(const FormulaPtr &phi);

// Least level; when both classes share the least index, Sigma is reported.
Level classify(const FormulaPtr &phi);

bool is_in(const FormulaPtr &phi, const Level &level);

// Level inclusion: a is contained in b.
bool level_leq(const Level &a, const Level &b);

}  // namespace provlab

#endif
