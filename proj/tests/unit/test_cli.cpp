#include <fstream>
#include <sstream>

#include "doctest.h"
#include "runner.hpp"

using namespace dvw;

namespace {

std::string data(const std::string& name) {
  std::ifstream in(std::string(DVW_TEST_DATA) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json runJson(std::string_view verb, const std::string& input, RunOptions opt = {}) {
  opt.json = true;
  return nlohmann::json::parse(runCommand(verb, input, opt).output);
}

InputError parseError(const std::string& text) {
  try {
    (void)parseStructure(text);
  } catch (const InputError& e) {
    return e;
  }
  FAIL("accepted: " << text);
  return InputError("");
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("structure files parse into named objects") {
    const Structure s = parseStructure(data("example.dvw"));
    CHECK(s.spaces.size() == 2);
    CHECK(s.algebras.size() == 3);
    CHECK(s.morphisms.size() == 2);
    CHECK(s.cmorphisms.size() == 1);
    CHECK(s.namesOf("morphism") == std::vector<std::string>{"e", "e2"});
    CHECK(s.order.front() == std::pair<std::string, std::string>{"space", "Y"});
    const auto& h = s.cmorphisms.at("h");
    CHECK(h.from == "Y");
    CHECK(h.m.gInf == std::vector<unsigned>{0, 1});
  }

  TEST_CASE("parse errors carry line and column") {
    const auto empty = parseError("# nothing here\n\n");
    CHECK(std::string(empty.what()).find("no structure") != std::string::npos);

    const auto lit = parseError("space D = discrete 2\nset S = {1} ++ perio 2 residues {} from 0\n");
    CHECK(lit.line() == 2);
    CHECK(lit.column() == 16);

    const auto kw = parseError("algebra A = powersett 2\n");
    CHECK(kw.line() == 1);
    CHECK(kw.column() == 13);

    const auto overlap = parseError(data("overlap.dvw"));
    CHECK(std::string(overlap.what()).find("residue 1") != std::string::npos);
    CHECK(overlap.line() > 0);

    CHECK(parseError("space X = discrete 2\nspace X = discrete 3\n").line() == 2);
    CHECK(parseError("morphism m : A -> B = identity\n").line() == 1);
    CHECK(parseError("algebra A = powerset 2\nalgebra B = powerset 3\n"
                     "morphism m : A -> B = table [{} -> {}]\n")
              .line() == 3);
  }

  TEST_CASE("exit codes") {
    const RunOptions opt;
    CHECK(runCommand("example-3-3", "", opt).exitCode == kExitPass);
    CHECK(runCommand("check-proximity", data("powerset.dvw"), opt).exitCode == kExitPass);
    CHECK(runCommand("check-proximity", data("dv7_broken.dvw"), opt).exitCode == kExitFailure);
    CHECK(runCommand("check-proximity", data("empty.dvw"), opt).exitCode == kExitInputError);
    CHECK(runCommand("no-such-verb", data("powerset.dvw"), opt).exitCode == kExitInputError);
    RunOptions bad;
    bad.bounds = Bounds{6, 4, 3};
    CHECK(runCommand("check-proximity", data("powerset.dvw"), bad).exitCode == kExitInputError);
    CHECK(runCommand("roundtrip", data("discrete2.dvw"), opt).exitCode == kExitPass);
    CHECK(runCommand("compose", data("compose.dvw"), opt).exitCode == kExitPass);
    CHECK(runCommand("equivalence", data("example.dvw"), opt).exitCode == kExitPass);
    CHECK(knownVerb("maximal"));
    CHECK_FALSE(knownVerb("maximize"));
  }

  TEST_CASE("JSON reports follow the schema") {
    const auto j = runJson("check-proximity", data("dv7_broken.dvw"));
    CHECK(j["schema"] == kSchemaVersion);
    CHECK(j["status"] == "fail");
    CHECK(j["failures"] == 2);
    CHECK(j["command"]["verb"] == "check-proximity");
    CHECK(j["command"]["bounds"]["T"] == 6);
    REQUIRE(j["reports"].size() == 1);
    const auto& ax = j["reports"][0]["axioms"];
    bool sawDv7 = false;
    for (const auto& a : ax)
      if (a["axiom"] == "DV7") {
        sawDv7 = true;
        CHECK(a["status"] == "fail");
        CHECK(a["witness"][0] == "{0}");
      } else if (a["axiom"] == "DV5") {
        CHECK(a["status"] == "fail");
      } else {
        CHECK(a["status"] == "pass");
      }
    CHECK(sawDv7);

    const auto err = runJson("check-proximity", "algebra A = powersett 2\n");
    CHECK(err["status"] == "input-error");
    CHECK(err["line"] == 1);
    CHECK(err["column"] == 13);

    const auto ex = runJson("example-3-3", "");
    CHECK(ex["bundle"]["verdicts"] == nlohmann::json::array({"pass", true, false}));
  }

  TEST_CASE("compose applies the first morphism first") {
    const auto j = runJson("compose", data("compose.dvw"));
    REQUIRE(j["reports"].size() >= 1);
    const auto& d = j["reports"][0]["data"];
    CHECK(d["equals_composition"] == true);
    CHECK(d["outer_complete_homomorphism"]["value"] == true);
  }

  TEST_CASE("reports are deterministic") {
    for (const auto& [verb, file] : std::vector<std::pair<std::string, std::string>>{
             {"check-proximity", "dv7_broken.dvw"},
             {"check-extension", "powerset.dvw"},
             {"ends", "example.dvw"},
             {"dualize", "compose.dvw"},
             {"equivalence", "example.dvw"},
             {"example-3-3", "empty.dvw"}}) {
      RunOptions opt;
      const auto a = runCommand(verb, data(file), opt).output;
      const auto b = runCommand(verb, data(file), opt).output;
      CHECK(a == b);
      opt.json = false;
      CHECK(runCommand(verb, data(file), opt).output == runCommand(verb, data(file), opt).output);
    }
  }

  TEST_CASE("text format") {
    RunOptions opt;
    opt.json = false;
    const auto r = runCommand("check-proximity", data("dv7_broken.dvw"), opt);
    CHECK(r.output.find("DV7") != std::string::npos);
    CHECK(r.output.find("status: fail (2 failures)") != std::string::npos);
    const auto e = runCommand("check-proximity", "", opt);
    CHECK(e.output.rfind("input-error: ", 0) == 0);
  }
}
