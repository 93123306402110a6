// Built-in extension symbols and their executable readings.

#include "provlab/coding.hpp"
#include "provlab/hierarchy.hpp"
#include "provlab/syntax.hpp"

namespace provlab {

namespace {

std::optional<FormulaPtr> try_decode(const Nat &n) {
  try {
    return decode_formula(n);
  } catch (const DecodeError &) {
    return std::nullopt;
  }
}

}  // namespace

const std::vector<AtomInfo> &atom_table() {
  static const std::vector<AtomInfo> table = {
      {"Prf", 2, Level::delta0(), true},
      {"Fml", 1, Level::delta0(), true},
      {"Sent", 1, Level::delta0(), true},
      {"Sigma", 2, Level::delta0(), true},  // Sigma(z, x): x codes a Sigma_z formula
      {"Even", 1, Level::delta0(), true},
      {"Le", 2, Level::delta0(), false},
      {"PrfA0", 2, Level::delta0(), true},
      {"PrfA1", 2, Level::delta0(), true},
      {"PrfT0", 2, Level::delta0(), true},
      {"Phi", 1, Level::sigma(1), false},
      {"PrL", 1, Level::sigma(1), false},
      {"Xi", 0, Level::pi(1), false},
  };
  return table;
}

const std::vector<FunInfo> &fun_table() {
  static const std::vector<FunInfo> table = {
      {"sub", 2}, {"n", 1}, {"neg", 1}, {"imp", 2}, {"conj", 2}};
  return table;
}

const AtomInfo *find_atom(const std::string &name) {
  for (auto &a : atom_table())
    if (a.name == name) return &a;
  return nullptr;
}

const FunInfo *find_fun(const std::string &name) {
  for (auto &f : fun_table())
    if (f.name == name) return &f;
  return nullptr;
}

AtomInterp atom_interp(const std::string &name) {
  if (name == "Le")
    return [](const std::vector<Nat> &v) { return v[0] <= v[1]; };
  if (name == "Fml")
    return [](const std::vector<Nat> &v) { return try_decode(v[0]).has_value(); };
  if (name == "Sent")
    return [](const std::vector<Nat> &v) {
      auto f = try_decode(v[0]);
      return f && free_vars(*f).empty();
    };
  if (name == "Even")
    return [](const std::vector<Nat> &v) {
      auto f = try_decode(v[0]);
      return f && count_logical_symbols(*f) % 2 == 0;
    };
  if (name == "Sigma")
    return [](const std::vector<Nat> &v) {
      auto f = try_decode(v[1]);
      if (!f) return false;
      if (v[0] > 1000) return true;
      unsigned z = static_cast<unsigned>(v[0].get_ui());
      return is_in(*f, z == 0 ? Level::delta0() : Level::sigma(z));
    };
  return {};
}

FunInterp fun_interp(const std::string &name) {
  if (name == "neg")
    return [](const std::vector<Nat> &v) { return pair(tag::Not, v[0]); };
  if (name == "imp")
    return [](const std::vector<Nat> &v) {
      return pair(tag::Imp, pair(v[0], v[1]));
    };
  if (name == "conj")
    return [](const std::vector<Nat> &v) {
      return pair(tag::And, pair(v[0], v[1]));
    };
  if (name == "n")
    return [](const std::vector<Nat> &v) {
      auto f = try_decode(v[0]);
      return Nat(f ? count_negations(*f) : 0u);
    };
  if (name == "sub")
    return [](const std::vector<Nat> &v) {
      if (!try_decode(v[0])) return Nat(0);
      return sub_eval(v[0], v[1]);
    };
  return {};
}

}  // namespace provlab
