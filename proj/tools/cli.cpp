#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <sstream>

#include "provlab/coding.hpp"
#include "provlab/diagonal.hpp"
#include "provlab/flatten.hpp"
#include "provlab/gallery.hpp"
#include "provlab/hierarchy.hpp"
#include "provlab/lattice.hpp"
#include "provlab/modal.hpp"

namespace provlab::cli {

using nlohmann::json;

namespace {

// Raised for malformed but parseable invocations.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  json payload = json::object();
  json citations = json::array();
  std::string text;  // human-readable rendering
};

json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::vector<std::string> split_list(const std::string &s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string flag_alias(std::string s) {
  std::string low = s;
  std::transform(low.begin(), low.end(), low.begin(), ::tolower);
  static const std::map<std::string, std::string> m = {
      {"sigma1", "PhiIn(S1)"}, {"delta0", "PhiIn(D0)"}, {"pi1", "PhiIn(P1)"},
      {"sigma2", "PhiIn(S2)"}, {"pi2", "PhiIn(P2)"},    {"s=t", "SEqualsT"}};
  auto it = m.find(low);
  return it == m.end() ? s : it->second;
}

std::string join(const std::vector<std::string> &v, const char *sep = ", ") {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

template <class Set>
std::string join_set(const Set &s) {
  return join(std::vector<std::string>(s.begin(), s.end()));
}

// ---------------------------------------------------------- arithmetic

Output cmd_parse(const std::string &src) {
  auto f = parse(src);
  Output o;
  auto fv = free_vars(f);
  o.payload = {{"formula", print(f)},
               {"ast", to_json(f)},
               {"free_vars", std::vector<std::string>(fv.begin(), fv.end())},
               {"logical_symbols", count_logical_symbols(f)}};
  o.text = print(f) + "\nfree variables: " + (fv.empty() ? "none" : join_set(fv)) + "\n";
  return o;
}

Output cmd_classify(const std::string &src) {
  auto f = parse(src);
  auto l = classify(f);
  auto r = rank(f);
  Output o;
  std::string cls = l.cls == Level::Delta0 ? "Delta" : l.cls == Level::Sigma ? "Sigma" : "Pi";
  o.payload = {{"class", cls},
               {"index", l.index},
               {"level", l.str()},
               {"rank", {{"sigma", r.sigma}, {"pi", r.pi}}}};
  o.text = l.str() + "\n";
  return o;
}

Output cmd_gn(const std::string &src, bool term, bool hex, bool scheme) {
  Output o;
  if (scheme) {
    o.payload = coding_scheme();
    o.text = o.payload.dump(2) + "\n";
    return o;
  }
  if (src.empty()) throw UsageError("gn needs a formula or --scheme");
  Nat g = term ? gn(parse_term(src)) : gn(parse(src));
  std::string dec = g.get_str(10), hx = g.get_str(16);
  o.payload = {{"decimal", dec}, {"hex", hx}, {"bits", mpz_sizeinbase(g.get_mpz_t(), 2)}};
  o.text = (hex ? "0x" + hx : dec) + "\n";
  return o;
}

Output cmd_diagonalize(const std::string &ctx, const std::string &var) {
  auto psi = parse(ctx);
  auto fp = var.empty() ? fixed_point(psi) : fixed_point(psi, var);
  Output o;
  o.payload = {{"sentence", print(fp.sentence)},
               {"theta", print(fp.cert.theta)},
               {"phi", print(fp.cert.phi)},
               {"lhs", fp.cert.lhs.get_str()},
               {"rhs", fp.cert.rhs.get_str()},
               {"holds", fp.cert.holds()}};
  // Text mode abbreviates; --json carries the full numbers.
  auto brief = [](const Nat &n) {
    auto d = n.get_str();
    if (d.size() <= 60) return d;
    return d.substr(0, 24) + "..." + d.substr(d.size() - 12) + " (" +
           std::to_string(d.size()) + " digits)";
  };
  o.text = "sentence: " + print(fp.sentence) + "\ntheta: " + print(fp.cert.theta) +
           "\nsub(gn theta, gn theta) = " + brief(fp.cert.lhs) +
           "\ngn phi                  = " + brief(fp.cert.rhs) +
           "\ncertificate: " + (fp.cert.holds() ? "holds" : "FAILS") + "\n";
  return o;
}

Output cmd_flatten(const std::string &src, bool verify, unsigned bound) {
  auto f = parse(src);
  auto nf = mtl_normal_form(f);
  Output o;
  o.payload = {{"normal_form", to_json(nf)}, {"formula", print(to_formula(nf))}};
  o.text = print(to_formula(nf)) + "\n";
  if (verify) {
    auto r = oracle_check(f, nf, bound);
    o.payload["oracle"] = to_json(r);
    o.payload["oracle"]["bound"] = bound;
    o.text += "oracle over 0.." + std::to_string(bound) + ": " +
              (r.equivalent ? "equivalent" : "NOT equivalent") + " (" +
              std::to_string(r.assignments) + " assignments)\n";
    if (!r.equivalent) throw std::runtime_error("normal form failed the oracle");
  }
  return o;
}

Output cmd_eval(const std::string &src, const std::string &assign, unsigned bound) {
  auto f = parse(src);
  Assignment a;
  for (auto &kv : split_list(assign)) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("bad assignment: " + kv);
    try {
      a[kv.substr(0, eq)] = Nat(kv.substr(eq + 1));
    } catch (const std::invalid_argument &) {
      throw UsageError("bad value in " + kv);
    }
  }
  auto v = evaluate(f, a, bound);
  Output o;
  o.payload = {{"verdict", to_string(v)}, {"witness_bound", bound}};
  o.text = to_string(v) + "\n";
  return o;
}

Output cmd_witness(const std::string &name, bool print_only, bool classify_only) {
  Output o;
  if (name.empty()) {
    json list = json::array();
    for (auto &n : catalog()) {
      auto e = to_json(gallery(n));
      list.push_back(e);
      o.text += n + "  [" + e.value("citation", "") + "]\n";
      o.citations.push_back({{"location", e.value("citation", "")}, {"quote", n}});
    }
    o.payload = {{"catalog", list}};
    return o;
  }
  auto e = gallery(name);
  o.payload = to_json(e);
  std::visit(
      [&](auto &x) {
        o.citations.push_back({{"location", x.citation}, {"quote", x.name}});
      },
      e);
  if (auto *t = std::get_if<PredicateTemplate>(&e)) {
    auto lvl = classify(t->formula);
    if (print_only) o.text = print(t->formula) + "\n";
    else if (classify_only) o.text = lvl.str() + "\n";
    else
      o.text = t->name + " [" + t->citation + "]\n" + print(t->formula) +
               "\ndeclared " + t->declared_level.str() + ", classified " + lvl.str() + "\n";
  } else {
    auto &m = std::get<MetadataOnly>(e);
    if (print_only) throw std::runtime_error(m.name + " has no explicit formula: " + m.reason);
    o.text = m.name + " [" + m.citation + "] declared " + m.declared_level.str() +
             "\nno explicit formula: " + m.reason + "\n";
  }
  return o;
}

// --------------------------------------------------------------- lattice

void cite_certificate(Output &o, const KnowledgeBase &kb, const Certificate &c) {
  std::set<std::string> seen;
  for (auto &app : c) {
    if (!seen.insert(app.rule).second) continue;
    auto it = std::find_if(kb.rules.begin(), kb.rules.end(),
                           [&](const Rule &r) { return r.id == app.rule; });
    o.citations.push_back({{"location", app.citation},
                           {"rule", app.rule},
                           {"quote", it == kb.rules.end() ? "" : it->quote}});
  }
}

void cite_witness(Output &o, const KnowledgeBase &kb, const std::string &name) {
  for (auto &w : kb.witnesses)
    if (w.name == name)
      o.citations.push_back({{"location", w.citation},
                             {"witness", w.name},
                             {"quote", "satisfies " + join_set(w.satisfies) +
                                           "; violates " + join_set(w.violates)}});
}

std::string cert_text(const Certificate &c) {
  std::string out;
  for (auto &a : c)
    out += "  " + a.rule + ": " + join(a.premises) + " => " + a.conclusion + "\n";
  return out;
}

Output cmd_lattice(const std::string &op, const KnowledgeBase &kb,
                   const std::string &flags_s, const std::string &have_s,
                   const std::string &query_s) {
  std::vector<std::string> items;
  for (auto &f : split_list(flags_s)) items.push_back(flag_alias(f));
  for (auto &f : split_list(have_s)) items.push_back(f);
  auto [flags, have] = split_facts(items);
  std::string query = query_s.empty() ? "" : normalize_fact(query_s);
  Output o;
  if (op == "export") {
    o.payload = to_json(kb);
    o.text = o.payload.dump(2) + "\n";
  } else if (op == "closure") {
    auto c = closure(kb, flags, have);
    json certs = json::object();
    for (auto &[f, cert] : c.certificates)
      if (c.derived.count(f)) {
        certs[f] = to_json(cert);
        cite_certificate(o, kb, cert);
      }
    o.payload = {{"derived", c.derived},
                 {"con_implications", c.con_implications},
                 {"certificates", certs}};
    o.text = "derived: " + (c.derived.empty() ? "none" : join_set(c.derived)) + "\n";
  } else if (op == "entails") {
    if (query.empty()) throw UsageError("entails needs --query");
    auto e = entails(kb, flags, have, query);
    o.payload = to_json(e);
    o.text = to_string(e.kind);
    if (e.kind == Entailment::Yes) {
      cite_certificate(o, kb, e.certificate);
      o.text += "\n" + cert_text(e.certificate);
    } else if (e.kind == Entailment::No) {
      cite_witness(o, kb, e.witness);
      o.text += " (witness " + e.witness + ")\n";
    } else {
      for (auto &p : kb.problems)
        if (p.id == e.problem)
          o.citations.push_back({{"location", p.citation}, {"quote", p.statement}});
      o.text += " (open: " + e.problem + ")\n";
    }
  } else if (op == "unprovability") {
    auto u = unprovability(kb, flags, have);
    json certs = json::object();
    std::vector<std::string> names;
    for (auto &[f, cert] : u) {
      certs[f] = to_json(cert);
      cite_certificate(o, kb, cert);
      names.push_back(f);
    }
    o.payload = {{"unprovable", names}, {"certificates", certs}};
    o.text = names.empty() ? "none\n" : join(names) + "\n";
  } else if (op == "separate") {
    if (query.empty()) throw UsageError("separate needs --query");
    auto w = separation(kb, flags, have, query);
    o.payload = {{"witness", w ? json(*w) : json(nullptr)}};
    if (w) cite_witness(o, kb, *w);
    o.text = (w ? *w : "none") + "\n";
  } else if (op == "sanity") {
    auto issues = kb_sanity(kb);
    json list = json::array();
    for (auto &i : issues) {
      list.push_back(to_json(i));
      o.text += "(" + i.check + ") " + i.subject + ": " + i.detail + "\n";
    }
    o.payload = {{"issues", list}};
    if (issues.empty()) o.text = "ok\n";
  } else {
    throw UsageError("unknown lattice operation: " + op);
  }
  return o;
}

// ----------------------------------------------------------------- modal

std::string model_text(const CS2Model &m) {
  std::ostringstream s;
  auto names = [&](const std::vector<bool> &k) {
    std::vector<std::string> v;
    for (size_t i = 0; i < k.size(); ++i)
      if (k[i]) v.push_back(m.worlds[i]);
    return "{" + join(v) + "}";
  };
  s << "W = {" << join(m.worlds) << "}, root " << m.worlds[m.root] << "\n"
    << "K0 = " << names(m.k0) << ", K1 = " << names(m.k1) << "\n<:";
  for (size_t x = 0; x < m.worlds.size(); ++x)
    for (size_t y = 0; y < m.worlds.size(); ++y)
      if (m.less[x][y]) s << " " << m.worlds[x] << "<" << m.worlds[y];
  s << "\n";
  for (size_t x = 0; x < m.worlds.size(); ++x)
    s << m.worlds[x] << ": {" << join_set(m.val[x]) << "}\n";
  return s.str();
}

Output cmd_modal_gl(const std::string &src) {
  auto f = parse_modal(src);
  auto r = gl_decide(f);
  Output o;
  o.payload = {{"formula", print(f)}, {"theorem", r.theorem}};
  if (r.countermodel) {
    o.payload["countermodel"] = to_json(*r.countermodel);
    o.text = "countermodel\n" + model_text(*r.countermodel);
  } else {
    o.text = "theorem\n";
  }
  return o;
}

Output cmd_modal_mc(const std::string &path, const std::string &src, const std::string &world) {
  auto m = model_from_json(read_json_file(path));
  auto f = parse_modal(src);
  int w = world.empty() ? m.root : world_index(m, world);
  bool v = mc_cs2(m, w, f);
  Output o;
  o.payload = {{"formula", print(f)}, {"world", m.worlds[w]}, {"holds", v}};
  o.text = m.worlds[w] + (v ? " |= " : " |/= ") + print(f) + "\n";
  return o;
}

Output cmd_modal_find(const std::string &src, unsigned max_worlds) {
  auto f = parse_modal(src);
  auto m = cs2_countermodel_search(f, max_worlds);
  Output o;
  o.payload = {{"formula", print(f)}, {"max_worlds", max_worlds}};
  if (m) {
    o.payload["model"] = to_json(*m);
    o.text = "countermodel with " + std::to_string(m->worlds.size()) + " worlds\n" + model_text(*m);
  } else {
    o.payload["model"] = nullptr;
    o.text = "no countermodel up to " + std::to_string(max_worlds) + " worlds\n";
  }
  return o;
}

Output cmd_modal_check(const std::string &path, const std::string &goal_s) {
  auto j = read_json_file(path);
  auto d = derivation_from_json(j);
  if (d.lines.empty()) throw std::runtime_error("derivation has no lines");
  ModalPtr goal = !goal_s.empty()      ? parse_modal(goal_s)
                  : j.contains("goal") ? parse_modal(j["goal"].get<std::string>())
                                       : d.lines.back().formula;
  auto c = cs2_check_derivation(d, goal);
  Output o;
  o.payload = {{"goal", print(goal)}, {"valid", c.ok}};
  if (!c.ok) {
    o.payload["line"] = c.line;
    o.payload["reason"] = c.reason;
  }
  o.text = c.ok ? "valid\n" : "invalid at line " + std::to_string(c.line) + ": " + c.reason + "\n";
  return o;
}

json envelope(const Output &o) {
  return {{"status", "ok"}, {"payload", o.payload}, {"citations", o.citations}};
}

json error_envelope(const std::string &code, const std::string &msg) {
  return {{"status", "error"},
          {"payload", {{"code", code}, {"message", msg}}},
          {"citations", json::array()}};
}

}  // namespace

Result run(const std::vector<std::string> &argv, const std::string &env_mode) {
  CLI::App app{"provability workbench"};
  app.require_subcommand(1);
  // Global flags may follow the subcommand.
  app.fallthrough();
  bool as_json = false;
  std::string kb_path;
  unsigned bound = 4, max_worlds = 3;
  app.add_flag("--json", as_json, "machine-readable output");
  app.add_option("--kb", kb_path, "knowledge base JSON replacing the embedded one");
  app.add_option("--bound", bound, "oracle domain bound");
  app.add_option("--max-worlds", max_worlds, "CS2 search size");

  std::string formula, context, var, name, assign, op, flags, have, query, path, world,
      goal;
  bool term = false, hex = false, scheme = false, verify = false, wprint = false,
       wclassify = false;

  auto *p_parse = app.add_subcommand("parse", "parse and pretty-print a formula");
  p_parse->add_option("formula", formula)->required();
  auto *p_cls = app.add_subcommand("classify", "arithmetical hierarchy level");
  p_cls->add_option("formula", formula)->required();
  auto *p_gn = app.add_subcommand("gn", "Goedel number");
  p_gn->add_option("formula", formula);
  p_gn->add_flag("--term", term, "input is a term");
  p_gn->add_flag("--hex", hex, "print hexadecimal");
  p_gn->add_flag("--scheme", scheme, "print the coding table");
  auto *p_diag = app.add_subcommand("diagonalize", "fixed point of a context");
  p_diag->add_option("--context", context)->required();
  p_diag->add_option("--var", var, "designated variable");
  auto *p_flat = app.add_subcommand("flatten", "flat normal form");
  p_flat->add_option("formula", formula)->required();
  p_flat->add_flag("--verify", verify, "run the equivalence oracle");
  auto *p_wit = app.add_subcommand("witness", "predicate gallery");
  p_wit->add_option("name", name);
  p_wit->add_flag("--print", wprint);
  p_wit->add_flag("--classify", wclassify);
  auto *p_lat = app.add_subcommand("lattice", "derivability-condition lattice");
  p_lat->add_option("op", op, "closure|entails|separate|unprovability|sanity|export")->required();
  p_lat->add_option("--flags", flags);
  p_lat->add_option("--have", have);
  p_lat->add_option("--query", query);
  auto *p_eval = app.add_subcommand("eval", "evaluate a formula");
  p_eval->add_option("formula", formula)->required();
  p_eval->add_option("--assign", assign, "x=1,y=2");

  auto *p_modal = app.add_subcommand("modal", "GL and CS2");
  p_modal->require_subcommand(1);
  auto *m_gl = p_modal->add_subcommand("gl", "decide GL");
  m_gl->add_option("formula", formula)->required();
  auto *m_cs2 = p_modal->add_subcommand("cs2", "CS2 models and derivations");
  m_cs2->require_subcommand(1);
  auto *c_mc = m_cs2->add_subcommand("mc", "model check");
  c_mc->add_option("model", path)->required();
  c_mc->add_option("formula", formula)->required();
  c_mc->add_option("--world", world);
  auto *c_find = m_cs2->add_subcommand("find", "countermodel search");
  c_find->add_option("formula", formula)->required();
  c_find->add_option("--max-worlds", max_worlds);
  auto *c_check = m_cs2->add_subcommand("check", "check a derivation");
  c_check->add_option("cert", path)->required();
  c_check->add_option("--goal", goal);

  Result res;
  std::vector<std::string> rev(argv.rbegin(), argv.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp &) {
    res.out = app.help();
    return res;
  } catch (const CLI::ParseError &e) {
    bool j = as_json || env_mode == "json" ||
             std::find(argv.begin(), argv.end(), "--json") != argv.end();
    res.code = 2;
    if (j) res.out = error_envelope("usage", e.what()).dump() + "\n";
    else res.err = std::string("usage error: ") + e.what() + "\n" + app.help();
    return res;
  }
  as_json = as_json || env_mode == "json";

  try {
    Output o;
    if (*p_parse) o = cmd_parse(formula);
    else if (*p_cls) o = cmd_classify(formula);
    else if (*p_gn) o = cmd_gn(formula, term, hex, scheme);
    else if (*p_diag) o = cmd_diagonalize(context, var);
    else if (*p_flat) o = cmd_flatten(formula, verify, bound);
    else if (*p_wit) o = cmd_witness(name, wprint, wclassify);
    else if (*p_eval) o = cmd_eval(formula, assign, bound);
    else if (*p_lat) {
      KnowledgeBase kb = kb_path.empty() ? default_kb() : kb_from_json(read_json_file(kb_path));
      o = cmd_lattice(op, kb, flags, have, query);
    } else if (*m_gl) o = cmd_modal_gl(formula);
    else if (*c_mc) o = cmd_modal_mc(path, formula, world);
    else if (*c_find) o = cmd_modal_find(formula, max_worlds);
    else if (*c_check) o = cmd_modal_check(path, goal);
    res.out = as_json ? envelope(o).dump() + "\n" : o.text;
  } catch (const UsageError &e) {
    res.code = 2;
    if (as_json) res.out = error_envelope("usage", e.what()).dump() + "\n";
    else res.err = std::string("usage error: ") + e.what() + "\n";
  } catch (const std::exception &e) {
    res.code = 1;
    std::string code = dynamic_cast<const SyntaxError *>(&e) ? "syntax" : "domain";
    if (as_json) res.out = error_envelope(code, e.what()).dump() + "\n";
    else res.err = "error: " + std::string(e.what()) + "\n";
  }
  return res;
}

}  // namespace provlab::cli
