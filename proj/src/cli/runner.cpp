#include "runner.hpp"

#include <array>
#include <sstream>

namespace dvw {

namespace {

constexpr std::array<std::string_view, 10> kVerbs = {
    "check-proximity", "check-morphism", "ends",        "dualize", "check-extension",
    "compose",         "roundtrip",      "equivalence", "maximal", "example-3-3"};

struct Outcome {
  std::vector<AxiomReport> reports;
  nlohmann::json extra = nlohmann::json::object();
};

bool isExtension(const DVMorphism& m) {
  const auto& c = *m.codomain();
  return c.kind() == Algebra::Kind::ArithPowerset || (!c.isArithmetic() && c.orderProximity());
}

std::vector<std::pair<std::string, const DVMorphism*>> morphisms(const Structure& s) {
  std::vector<std::pair<std::string, const DVMorphism*>> out;
  for (const auto& n : s.namesOf("morphism")) out.emplace_back(n, &s.morphisms.at(n));
  return out;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw InputError(msg);
}

Outcome checkProximity(const Structure& s, const Bounds& b) {
  Outcome o;
  for (const auto& n : s.namesOf("algebra")) o.reports.push_back(checkProximityAxioms(*s.algebras.at(n), b));
  require(!o.reports.empty(), "check-proximity needs an algebra declaration");
  return o;
}

Outcome checkMorphism(const Structure& s, const Bounds& b) {
  Outcome o;
  for (const auto& [n, m] : morphisms(s)) {
    o.reports.push_back(checkMorphismAxioms(*m, b));
    if (o.reports.back().allPass()) o.reports.push_back(derivedMorphismLaws(*m, b));
  }
  require(!o.reports.empty(), "check-morphism needs a morphism declaration");
  return o;
}

Outcome checkExtensions(const Structure& s, const Bounds& b) {
  Outcome o;
  for (const auto& [n, m] : morphisms(s)) {
    if (!isExtension(*m)) continue;
    const Extension e{*m, n};
    o.reports.push_back(checkExtension(e, b));
    if (o.reports.back().allPass()) o.reports.push_back(lemma53Audit(e, b));
  }
  require(!o.reports.empty(), "check-extension needs a morphism into a powerset");
  return o;
}

Outcome compose(const Structure& s, const Bounds& b) {
  const auto ms = morphisms(s);
  require(ms.size() >= 2, "compose needs two morphisms: the first declared is applied first");
  const DVMorphism& inner = *ms[0].second;
  const DVMorphism& outer = *ms[1].second;
  require(inner.codomain()->sameAs(*outer.domain()),
          "cannot compose: the codomain of " + ms[0].first + " is not the domain of " + ms[1].first);
  Outcome o;
  const DVMorphism st = starCompose(outer, inner);
  AxiomReport r = checkMorphismAxioms(st, b);
  const DVMorphism plain = DVMorphism::compose(outer, inner);
  const auto diff = firstDisagreement(st, plain, b);
  const auto& dom = *inner.domain();
  const auto level = dom.levelFor(b);
  r.data["star"] = ms[1].first + " * " + ms[0].first;
  r.data["equals_composition"] = !diff;
  if (diff) r.data["disagreement"] = dom.view(level)->show(*diff);
  const HomoVerdict h = isCompleteBooleanHomo(outer, b);
  r.data["outer_complete_homomorphism"] = {{"value", h.value}, {"basis", h.basis}};
  o.reports.push_back(std::move(r));
  return o;
}

Outcome ends(const Structure& s, const Bounds& b) {
  Outcome o;
  for (const auto& n : s.namesOf("algebra")) {
    const auto& a = *s.algebras.at(n);
    AxiomReport r;
    r.subject = n;
    if (!a.isArithmetic()) {
      r.level = "finite";
      r.mode = "exhaustive";
      auto list = nlohmann::json::array();
      for (const ElemSet e : endsOf(a)) {
        Mask least = a.view(a.levelFor(b))->top();
        unsigned count = 0;
        for (Mask m = 0; m < (Mask{1} << a.atoms()); ++m)
          if ((e >> m) & 1U) {
            least &= m;
            ++count;
          }
        list.push_back({{"least", showAtoms(least, a.atoms())}, {"elements", count}});
      }
      r.data["ends"] = list;
      r.data["count"] = list.size();
    } else {
      const Fragment level = a.levelFor(b);
      r.level = level.describe();
      r.mode = "by realization";
      auto list = nlohmann::json::array();
      for (const auto& p : a.view(level)->points()) list.push_back(p.label);
      r.data["realized_by"] = list;
      r.data["note"] = a.kind() == Algebra::Kind::RegularOpen
                           ? "ends correspond to points of the space; points of N listed below T"
                           : "principal ends listed for points of N below T; free ultrafilters are not representable";
    }
    o.reports.push_back(std::move(r));
  }
  require(!o.reports.empty(), "ends needs an algebra declaration");
  return o;
}

Outcome dualize(const Structure& s, const Bounds& b) {
  Outcome o;
  for (const auto& [n, m] : morphisms(s)) {
    AxiomReport r;
    r.subject = n;
    r.mode = m->domain()->isArithmetic() ? "fragment" : "exhaustive";
    r.level = m->domain()->isArithmetic() ? m->domain()->levelFor(b).describe() : "finite";
    const HomoVerdict h = isCompleteBooleanHomo(*m, b);
    r.data["complete_homomorphism"] = {{"value", h.value}, {"basis", h.basis}};
    if (!h.witness.empty()) r.data["complete_homomorphism"]["witness"] = h.witness;
    if (h.value && !m->domain()->isArithmetic()) r.data["sigma_plus"] = tarskiDual(*m);
    if (isExtension(*m)) {
      const Extension e{*m, n};
      const AxiomReport ext = checkExtension(e, b);
      r.data["extension"] = ext.allPass();
      if (ext.allPass()) {
        if (!m->domain()->isArithmetic()) {
          const auto c = functorC(e);
          r.data["compactification"] = {{"points", c.points},
                                        {"ends", c.ends.size()},
                                        {"embedding", c.embedding}};
        } else if (const auto* y = m->domain()->space()) {
          r.data["compactification"] = {{"space", y->print()}, {"basis", "by realization"}};
        }
      } else {
        auto failed = nlohmann::json::array();
        for (const auto& x : ext.results)
          if (!x.pass) failed.push_back(x.axiom);
        r.data["extension_failures"] = failed;
      }
    }
    o.reports.push_back(std::move(r));
  }
  require(!o.reports.empty(), "dualize needs a morphism declaration");
  return o;
}

Outcome roundtrip(const Structure& s, const Bounds& b) {
  Outcome o;
  for (const auto& n : s.namesOf("space")) {
    const auto& sp = s.spaces.at(n);
    if (const auto* d = std::get_if<FinDiscrete>(&sp)) {
      require(d->size <= 4, "finite round trips support at most 4 points");
      o.reports.push_back(roundTripAudit(d->size));
    } else {
      o.reports.push_back(roundTripAudit(std::get<ArithCompactification>(sp), b));
    }
  }
  for (const auto& n : s.namesOf("function")) {
    const auto& f = s.functions.at(n);
    const unsigned from = std::get<FinDiscrete>(s.spaces.at(f.from)).size;
    const unsigned to = std::get<FinDiscrete>(s.spaces.at(f.to)).size;
    require(from <= 4 && to <= 4, "finite round trips support at most 4 points");
    o.reports.push_back(roundTripAudit(from, to, f.values));
    o.reports.back().subject = n + " : " + f.from + " -> " + f.to;
  }
  require(!o.reports.empty(), "roundtrip needs a space or function declaration");
  return o;
}

nlohmann::json pairJson(const std::optional<std::pair<unsigned, unsigned>>& p) {
  if (!p) return nullptr;
  return {p->first, p->second};
}

Outcome equivalence(const Structure& s) {
  Outcome o;
  std::vector<std::string> arith;
  for (const auto& n : s.namesOf("space"))
    if (std::holds_alternative<ArithCompactification>(s.spaces.at(n))) arith.push_back(n);
  for (std::size_t i = 0; i < arith.size(); ++i)
    for (std::size_t j = i + 1; j < arith.size(); ++j) {
      const auto& y = std::get<ArithCompactification>(s.spaces.at(arith[i]));
      const auto& yp = std::get<ArithCompactification>(s.spaces.at(arith[j]));
      AxiomReport r;
      r.subject = arith[i] + " vs " + arith[j];
      r.mode = "exact";
      const EquivVerdict ev = isEquivalent(y, yp);
      r.level = "period " + std::to_string(ev.commonPeriod);
      r.data["equivalent"] = ev.equivalent;
      r.data["partitions"] = {ev.left, ev.right};
      r.data["separating_residues"] = pairJson(ev.separating);
      r.data["leq"] = leqClassical(y, yp).leq;
      r.data["geq"] = leqClassical(yp, y).leq;
      o.reports.push_back(std::move(r));
    }
  for (const auto& n : s.namesOf("cmorphism")) {
    const auto& c = s.cmorphisms.at(n);
    const auto& y = std::get<ArithCompactification>(s.spaces.at(c.from));
    const auto& yp = std::get<ArithCompactification>(s.spaces.at(c.to));
    AxiomReport r = checkCMorphism(y, yp, c.m);
    r.subject = n + " : " + c.from + " -> " + c.to;
    const IsoVerdict iv = isIsoInC(y, yp, c.m);
    r.data["iso"] = iv.iso;
    if (iv.inverse) {
      r.data["inverse_f"] = iv.inverse->f.print();
      r.data["inverse_infinities"] = describeInfinities(yp, y, iv.inverse->gInf);
    }
    if (!iv.reason.empty()) r.data["reason"] = iv.reason;
    r.data["equivalent"] = isEquivalent(y, yp).equivalent;
    o.reports.push_back(std::move(r));
  }
  require(!o.reports.empty(), "equivalence needs two compactifications or a cmorphism");
  return o;
}

Outcome maximal(const Structure& s, const RunOptions& opt) {
  Outcome o;
  const unsigned universe = opt.universe ? opt.universe : opt.bounds.period;
  for (const auto& n : s.namesOf("space")) {
    const auto& sp = s.spaces.at(n);
    if (const auto* d = std::get_if<FinDiscrete>(&sp)) {
      require(d->size <= 3, "finite maximality audits support at most 3 points");
      o.reports.push_back(theorem34Audit(d->size));
    } else {
      require(universe <= 6, "the universe period must be at most 6");
      o.reports.push_back(theorem34Audit(std::get<ArithCompactification>(sp), universe, opt.bounds));
    }
    o.reports.back().subject = n;
  }
  require(!o.reports.empty(), "maximal needs a space declaration");
  o.extra["universe_period"] = universe;
  return o;
}

Outcome example() {
  Outcome o;
  const Example33 ex = example33();
  o.reports.push_back(ex.check);
  o.extra["bundle"] = ex.toJson();
  return o;
}

std::size_t failures(const AxiomReport& r) {
  std::size_t n = r.refused ? 1 : 0;
  for (const auto& a : r.results) n += a.pass ? 0 : 1;
  return n;
}

void renderText(std::ostringstream& os, const nlohmann::json& j) {
  const auto& c = j["command"];
  os << c["verb"].get<std::string>() << "  bounds T=" << c["bounds"]["T"] << " P=" << c["bounds"]["P"]
     << " T'=" << c["bounds"]["Tprime"] << "\n";
  for (const auto& r : j.at("reports")) {
    os << "== " << r["subject"].get<std::string>();
    if (r.contains("level") && !r["level"].get<std::string>().empty())
      os << "  [" << r["mode"].get<std::string>() << ", " << r["level"].get<std::string>() << "]";
    os << ": " << r["status"].get<std::string>() << "\n";
    if (r.contains("reason")) os << "  refused: " << r["reason"].get<std::string>() << "\n";
    for (const auto& a : r["axioms"]) {
      const bool pass = a["status"] == "pass";
      os << "  " << a["axiom"].get<std::string>() << "  " << (pass ? "pass" : "FAIL");
      if (a["bounded"].get<bool>()) os << " (bounded)";
      if (!pass && !a["witness"].empty()) {
        os << "  witness:";
        for (const auto& w : a["witness"]) os << " " << w.get<std::string>();
      }
      if (a.contains("note")) os << "  -- " << a["note"].get<std::string>();
      os << "\n";
    }
    if (r.contains("data")) os << "  data: " << r["data"].dump() << "\n";
  }
  for (const auto& [k, v] : j.items()) {
    if (k == "command" || k == "reports" || k == "schema" || k == "status" || k == "failures") continue;
    os << k << ": " << v.dump(2) << "\n";
  }
  os << "status: " << j["status"].get<std::string>() << " (" << j["failures"] << " failures)\n";
}

nlohmann::json commandJson(std::string_view verb, const RunOptions& opt) {
  return {{"verb", std::string(verb)},
          {"bounds",
           {{"T", opt.bounds.threshold},
            {"P", opt.bounds.period},
            {"Tprime", opt.bounds.witnessThreshold}}}};
}

std::string errorOutput(std::string_view verb, const RunOptions& opt, const std::string& kind,
                        const std::string& msg, std::size_t line, std::size_t column) {
  if (!opt.json) return kind + ": " + msg + "\n";
  nlohmann::json j{{"schema", kSchemaVersion},
                   {"command", commandJson(verb, opt)},
                   {"status", kind},
                   {"error", msg}};
  if (line) j["line"] = line;
  if (column) j["column"] = column;
  return j.dump(2) + "\n";
}

}  // namespace

bool knownVerb(std::string_view verb) {
  for (auto v : kVerbs)
    if (v == verb) return true;
  return false;
}

RunResult runCommand(std::string_view verb, std::string_view input, const RunOptions& opt) {
  RunResult res;
  try {
    if (!knownVerb(verb)) throw InputError("unknown verb '" + std::string(verb) + "'");
    opt.bounds.validate();
    Outcome o;
    if (verb == "example-3-3") {
      o = example();
    } else {
      const Structure s = parseStructure(input);
      const Bounds& b = opt.bounds;
      if (verb == "check-proximity") o = checkProximity(s, b);
      else if (verb == "check-morphism") o = checkMorphism(s, b);
      else if (verb == "check-extension") o = checkExtensions(s, b);
      else if (verb == "compose") o = compose(s, b);
      else if (verb == "ends") o = ends(s, b);
      else if (verb == "dualize") o = dualize(s, b);
      else if (verb == "roundtrip") o = roundtrip(s, b);
      else if (verb == "equivalence") o = equivalence(s);
      else o = maximal(s, opt);
    }
    nlohmann::json j = o.extra;
    j["schema"] = kSchemaVersion;
    j["command"] = commandJson(verb, opt);
    auto reports = nlohmann::json::array();
    std::size_t failed = 0;
    for (const auto& r : o.reports) {
      reports.push_back(r.toJson());
      failed += failures(r);
    }
    j["reports"] = reports;
    j["failures"] = failed;
    j["status"] = failed ? "fail" : "pass";
    res.exitCode = failed ? kExitFailure : kExitPass;
    if (opt.json) {
      res.output = j.dump(2) + "\n";
    } else {
      std::ostringstream os;
      renderText(os, j);
      res.output = os.str();
    }
  } catch (const InputError& e) {
    res.exitCode = kExitInputError;
    res.output = errorOutput(verb, opt, "input-error", e.what(), e.line(), e.column());
  } catch (const std::exception& e) {
    res.exitCode = kExitInternal;
    res.output = errorOutput(verb, opt, "internal-error", e.what(), 0, 0);
  }
  return res;
}

}  // namespace dvw
