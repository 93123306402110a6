#include "provlab/hierarchy.hpp"

#include <algorithm>

namespace provlab {

namespace {

// Inclusion of Sigma_n and Pi_n into both classes one step up.
Rank normalize(Rank r) {
  if (r.sigma == 0 || r.pi == 0) return {0, 0};
  return {std::min(r.sigma, r.pi + 1), std::min(r.pi, r.sigma + 1)};
}

Rank of_level(const Level &l) {
  switch (l.cls) {
    case Level::Delta0: return {0, 0};
    case Level::Sigma: return {l.index, l.index + 1};
    case Level::Pi: return {l.index + 1, l.index};
  }
  return {0, 0};
}

}  // namespace

Rank rank(const FormulaPtr &f) {
  switch (f->kind) {
    case FormulaKind::Eq:
      return {0, 0};
    case FormulaKind::Atom: {
      const AtomInfo *info = find_atom(f->name);
      if (!info) throw UnregisteredAtom("unregistered atom " + f->name);
      return of_level(info->level);
    }
    case FormulaKind::Not: {
      Rank r = rank(f->subs[0]);
      return {r.pi, r.sigma};
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
      Rank a = rank(f->subs[0]), b = rank(f->subs[1]);
      return normalize({std::max(a.sigma, b.sigma), std::max(a.pi, b.pi)});
    }
    case FormulaKind::Imp: {
      // Antecedent in Sigma and consequent in Pi gives Pi; dually Sigma.
      Rank a = rank(f->subs[0]), b = rank(f->subs[1]);
      return normalize({std::max(a.pi, b.sigma), std::max(a.sigma, b.pi)});
    }
    case FormulaKind::Exists: {
      Rank r = rank(f->subs[0]);
      unsigned s = std::max(r.sigma, 1u);
      return normalize({s, std::max(r.pi, s + 1)});
    }
    case FormulaKind::Forall: {
      Rank r = rank(f->subs[0]);
      unsigned p = std::max(r.pi, 1u);
      return normalize({std::max(r.sigma, p + 1), p});
    }
    case FormulaKind::BForall:
    case FormulaKind::BExists:
      return rank(f->subs[0]);
  }
  return {0, 0};
}

Level classify(const FormulaPtr &phi) {
  Rank r = rank(phi);
  if (r.sigma == 0) return Level::delta0();
  if (r.sigma <= r.pi) return Level::sigma(r.sigma);
  return Level::pi(r.pi);
}

bool is_in(const FormulaPtr &phi, const Level &level) {
  Rank r = rank(phi);
  switch (level.cls) {
    case Level::Delta0: return r.sigma == 0;
    case Level::Sigma: return r.sigma <= level.index;
    case Level::Pi: return r.pi <= level.index;
  }
  return false;
}

bool level_leq(const Level &a, const Level &b) {
  Rank ra = of_level(a);
  switch (b.cls) {
    case Level::Delta0: return ra.sigma == 0;
    case Level::Sigma: return ra.sigma <= b.index;
    case Level::Pi: return ra.pi <= b.index;
  }
  return false;
}

}  // namespace provlab
