#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "cli.hpp"
#include "provlab/lattice.hpp"
#include "provlab/modal.hpp"

using namespace provlab;
using nlohmann::json;

namespace {

json run_json(std::vector<std::string> args, int expect = 0) {
  args.push_back("--json");
  auto r = cli::run(args);
  REQUIRE(r.code == expect);
  return json::parse(r.out);
}

std::string temp_file(const std::string &name, const json &j) {
  std::string path = std::string(P_tmpdir) + "/provlab_cli_" + name + ".json";
  std::ofstream(path) << j.dump();
  return path;
}

}  // namespace

TEST_CASE("cli lattice entails cites the theorem") {
  auto j = run_json({"lattice", "entails", "--flags", "sigma1", "--have", "D1,BU2",
                     "--query", "SCU"});
  CHECK(j["status"] == "ok");
  CHECK(j["payload"]["verdict"] == "yes");
  bool mt = false;
  for (auto &c : j["citations"]) mt |= c["location"] == "MT";
  CHECK(mt);
}

TEST_CASE("cli modal find reproduces the three-world model") {
  auto j = run_json({"modal", "cs2", "find", "[0]p & [1]~p -> [0]F | [1]F",
                     "--max-worlds", "3"});
  auto m = model_from_json(j["payload"]["model"]);
  CHECK(m.worlds.size() == 3);
  CHECK(isomorphic(m, mt2_model()));
}

TEST_CASE("cli usage and domain errors") {
  auto r = cli::run({"nope"});
  CHECK(r.code == 2);
  CHECK(cli::run({}).code == 2);
  CHECK(cli::run({"lattice", "entails", "--have", "D1"}).code == 2);
  auto j = run_json({"parse", "0 ="}, 1);
  CHECK(j["status"] == "error");
  CHECK(j["payload"]["code"] == "syntax");
  CHECK(run_json({"lattice", "closure", "--have", "D9"}, 1)["payload"]["code"] == "domain");
  CHECK(cli::run({"--help"}).code == 0);
}

TEST_CASE("cli output mode and determinism") {
  auto a = cli::run({"lattice", "closure", "--flags", "sigma1", "--have", "D1,BU2"}, "json");
  auto b = cli::run({"lattice", "closure", "--flags", "sigma1", "--have", "D1,BU2", "--json"});
  CHECK(a.out == b.out);
  CHECK(json::parse(a.out)["status"] == "ok");
  auto t = cli::run({"classify", "!E y (y = x)"});
  CHECK(t.out == "Sigma1\n");
}

TEST_CASE("cli subcommands") {
  CHECK(run_json({"classify", "!A x (x = x)"})["payload"]["level"] == "Pi1");
  CHECK(run_json({"gn", "0 = 0"})["payload"]["decimal"] == "70");
  CHECK(run_json({"gn", "--scheme"})["payload"].contains("tags"));
  auto d = run_json({"diagonalize", "--context", "~(x = x)"});
  CHECK(d["payload"]["holds"] == true);
  CHECK(d["payload"]["lhs"] == d["payload"]["rhs"]);
  auto f = run_json({"flatten", "x + s(0) = y", "--verify", "--bound", "3"});
  CHECK(f["payload"]["oracle"]["equivalent"] == true);
  CHECK(run_json({"eval", "x + x = #4", "--assign", "x=2"})["payload"]["verdict"] == "true");
  auto w = run_json({"witness", "PR_III"});
  CHECK(w["citations"][0]["location"] == "WP3");
  CHECK(run_json({"witness"})["payload"]["catalog"].size() > 10);
  CHECK(run_json({"lattice", "sanity"})["payload"]["issues"].empty());
  auto sep = run_json({"lattice", "separate", "--flags", "sigma1", "--have",
                       "DU1,DG2,SCG", "--query", "NotCon(G)"});
  CHECK(sep["payload"]["witness"] == "PR_III");
  auto un = run_json({"lattice", "unprovability", "--flags", "sigma1", "--have",
                      "D1,DG2,PCG"});
  CHECK(un["payload"]["unprovable"].size() == 4);
  CHECK(run_json({"modal", "gl", "[0]([0]p -> p) -> [0]p"})["payload"]["theorem"] == true);
}

TEST_CASE("cli files: models, certificates and knowledge bases") {
  auto model = temp_file("model", to_json(mt2_model()));
  auto mc = run_json({"modal", "cs2", "mc", model, "[0]p & [1]~p & ~[0]F & ~[1]F"});
  CHECK(mc["payload"]["holds"] == true);
  CHECK(run_json({"modal", "cs2", "mc", model, "p", "--world", "x0"})["payload"]["holds"] == true);

  json cert = {{"goal", "[0]p -> [1][0]p"},
               {"lines", {{{"formula", "[0]p -> [1][0]p"}, {"rule", "axiom"}, {"axiom", "4"}}}}};
  auto cpath = temp_file("cert", cert);
  CHECK(run_json({"modal", "cs2", "check", cpath})["payload"]["valid"] == true);
  cert["lines"][0]["axiom"] = "K";
  cpath = temp_file("cert_bad", cert);
  CHECK(run_json({"modal", "cs2", "check", cpath})["payload"]["valid"] == false);

  auto exported = run_json({"lattice", "export"})["payload"];
  CHECK(to_json(kb_from_json(exported)) == exported);
  // A mutated knowledge base loaded with --kb is audited as such.
  for (auto &w : exported["witnesses"])
    if (w["name"] == "PR_III") w["satisfies"].push_back("PCG");
  auto kbpath = temp_file("kb", exported);
  auto s = run_json({"lattice", "sanity", "--kb", kbpath});
  CHECK_FALSE(s["payload"]["issues"].empty());
  CHECK(run_json({"modal", "cs2", "mc", "/nonexistent.json", "p"}, 1)["status"] == "error");
}
