// Acceptance run: one PASS/FAIL line per criterion.
//   acceptance               run all
//   acceptance --criterion N run one

#include <chrono>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "compactcat.hpp"
#include "runner.hpp"

using namespace dvw;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::vector<Mask> orderRows(unsigned n) {
  std::vector<Mask> rows(std::size_t{1} << n, 0);
  for (Mask a = 0; a < rows.size(); ++a)
    for (Mask b = 0; b < rows.size(); ++b)
      if (isSubset(a, b)) rows[a] |= Mask{1} << b;
  return rows;
}

// DV1-DV7 read directly off the relation table.
bool naiveDV(unsigned n, const std::vector<Mask>& rel) {
  const Mask N = Mask{1} << n, top = N - 1;
  auto p = [&](Mask a, Mask b) { return ((rel[a] >> b) & 1U) != 0; };
  if (!p(top, top)) return false;
  for (Mask a = 0; a < N; ++a)
    for (Mask b = 0; b < N; ++b) {
      if (p(a, b) && !isSubset(a, b)) return false;
      if (p(a, b) && !p(top & ~b, top & ~a)) return false;
      if (p(a, b)) {
        bool found = false;
        for (Mask c = 0; c < N && !found; ++c) found = p(a, c) && p(c, b);
        if (!found) return false;
      }
      for (Mask c = 0; c < N; ++c) {
        if (p(a, b) && p(a, c) && !p(a, b & c)) return false;
        for (Mask d = 0; d < N; ++d)
          if (isSubset(a, b) && p(b, c) && isSubset(c, d) && !p(a, d)) return false;
      }
    }
  for (Mask b = 0; b < N; ++b) {
    Mask acc = 0;
    for (Mask a = 0; a < N; ++a)
      if (p(a, b)) acc |= a;
    if (acc != b) return false;
  }
  return true;
}

Outcome proximityCollapse() {
  Outcome o;
  std::vector<std::pair<Mask, Mask>> pairs;
  for (Mask a = 0; a < 4; ++a)
    for (Mask b = 0; b < 4; ++b)
      if (isSubset(a, b)) pairs.emplace_back(a, b);
  int passing = 0;
  for (unsigned sub = 0; sub < 512; ++sub) {
    std::vector<Mask> rows(4, 0);
    for (unsigned k = 0; k < pairs.size(); ++k)
      if ((sub >> k) & 1U) rows[pairs[k].first] |= Mask{1} << pairs[k].second;
    const bool tool = checkProximityAxioms(*Algebra::finiteTable(2, rows)).allPass();
    o.require(tool == naiveDV(2, rows), "disagreement with direct evaluation at relation " +
                                            std::to_string(sub));
    if (tool) {
      ++passing;
      o.require(rows == orderRows(2), "a passing relation other than the order");
    }
  }
  o.require(passing == 1, std::to_string(passing) + " relations pass");
  o.detail = o.pass ? "512 relations, 1 passes (the order)" : o.detail;
  return o;
}

Outcome goldenBundle() {
  Outcome o;
  const Example33 ex = example33();
  const std::string a = "{} ++ period 4 residues {0,3} from 0";
  o.require(ex.a.print() == a, "A = " + ex.a.print());
  o.require(printYSubset(ex.y, ex.closureY) == a + " + {inf_e,inf_o}",
            "cl_Y(A) = " + printYSubset(ex.y, ex.closureY));
  o.require(printYSubset(ex.yp, ex.closureYp) == a + " + {inf_1}",
            "cl_Y'(A) = " + printYSubset(ex.yp, ex.closureYp));
  o.require(ex.check.allPass(), "checkCMorphism fails");
  o.require(ex.iso.iso, "isIsoInC is false");
  o.require(!ex.equivalence.equivalent, "isEquivalent is true");
  if (o.pass) o.detail = "closures exact, checkCMorphism=pass, isIsoInC=true, isEquivalent=false";
  return o;
}

std::vector<std::pair<std::string, ArithCompactification>> exampleSpaces() {
  const Example33 ex = example33();
  return {{"Y", ex.y}, {"Y'", ex.yp}, {"one-point", ArithCompactification::onePoint()}};
}

Outcome extensionAxioms() {
  Outcome o;
  const Bounds b{8, 4, 16};
  for (const auto& [name, y] : exampleSpaces()) {
    const auto rep = checkExtension(functorE(y), b);
    for (const char* ax : {"M1", "M2", "M3", "M4", "injective", "atom-meet-density"}) {
      const AxiomResult* r = rep.find(ax);
      o.require(r && r->pass, name + ": " + ax + " fails");
    }
  }
  if (o.pass) o.detail = "e^-1 for Y, Y', one-point on Frag(8,4), witness bound 16";
  return o;
}

Outcome fragmentIsomorphism() {
  Outcome o;
  const Fragment fr(6, 4);
  for (const auto& [name, y] : exampleSpaces()) {
    std::vector<YSubset> v;
    for (Mask m = 0; m < fr.size(); ++m) {
      const ArithSet s = fr.decode(m);
      v.push_back(regularOpenWithTrace(y, s));
      o.require(isRegularOpen(y, v.back()) && v.back().trace == s, name + ": trace mismatch");
      o.require(interior(y, closure(y, YSubset{s, 0})).trace == s, name + ": int cl S misses S");
    }
    // Order both ways; injectivity follows.
    for (Mask a = 0; a < fr.size() && o.pass; ++a)
      for (Mask b = 0; b < fr.size(); ++b)
        if (subsetOf(v[a], v[b]) != isSubset(a, b)) {
          o.require(false, name + ": order differs at " + fr.decode(a).print());
          break;
        }
  }
  if (o.pass) o.detail = "Y, Y', one-point; 1024 elements each, all pairs";
  return o;
}

Outcome atomConditions() {
  Outcome o;
  const Example33 ex = example33();
  // Frag(6,2) is a level of RO(Y) only; Y' runs at its own period.
  for (const auto& [y, b] : {std::pair{ex.y, Bounds{6, 2, 12}}, std::pair{ex.yp, Bounds{6, 4, 12}}}) {
    const auto rep = lemma53Audit(functorE(y), b, 12);
    o.require(rep.allPass(), y.print() + ": conditions disagree");
    o.require(rep.find("points") && rep.find("infinity-ends"), "audit incomplete");
  }
  if (o.pass) o.detail = "Y on Frag(6,2), Y' on Frag(6,4), points 0..12 and every infinity end";
  return o;
}

Outcome roundTrips() {
  Outcome o;
  for (unsigned n = 1; n <= 4; ++n) o.require(roundTripAudit(n).allPass(), "identity on " + std::to_string(n));
  for (unsigned n = 1; n <= 3; ++n)
    for (unsigned m = 1; m <= 3; ++m) {
      std::vector<unsigned> f(n, 0);
      while (true) {
        o.require(roundTripAudit(n, m, f).allPass(), "cube fails for a map " + std::to_string(n) +
                                                         " -> " + std::to_string(m));
        unsigned i = 0;
        while (i < n && ++f[i] == m) f[i++] = 0;
        if (i == n) break;
      }
    }
  const Example33 ex = example33();
  for (const auto& y : {ex.y, ex.yp}) o.require(roundTripAudit(y, Bounds{6, 4, 12}).allPass(), "q_alpha on " + y.print());
  if (o.pass) o.detail = "|X| <= 4 identities, all maps between <= 3 points, q_alpha on Frag(6,4)";
  return o;
}

// Independent Boolean homomorphism test on a table.
bool isHom(unsigned m, unsigned n, const std::vector<Mask>& t) {
  const Mask topM = (Mask{1} << m) - 1, topN = (Mask{1} << n) - 1;
  if (t[0] != 0 || t[topM] != topN) return false;
  for (Mask a = 0; a <= topM; ++a) {
    if (t[topM & ~a] != (topN & ~t[a])) return false;
    for (Mask b = 0; b <= topM; ++b)
      if (t[a & b] != (t[a] & t[b])) return false;
  }
  return true;
}

std::vector<std::vector<Mask>> allTables(unsigned m, unsigned n) {
  const std::size_t dom = std::size_t{1} << m, cod = std::size_t{1} << n;
  std::vector<std::vector<Mask>> out;
  std::vector<Mask> t(dom, 0);
  while (true) {
    out.push_back(t);
    std::size_t i = 0;
    while (i < dom && ++t[i] == cod) t[i++] = 0;
    if (i == dom) break;
  }
  return out;
}

Outcome tarski() {
  Outcome o;
  std::size_t homs = 0, pairs = 0;
  std::vector<std::vector<std::vector<std::vector<Mask>>>> byShape(4, std::vector<std::vector<std::vector<Mask>>>(4));
  for (unsigned m = 1; m <= 3; ++m)
    for (unsigned n = 1; n <= 3; ++n) {
      const auto a = Algebra::finitePowerset(m), b = Algebra::finitePowerset(n);
      std::size_t count = 0;
      for (const auto& t : allTables(m, n)) {
        if (!isHom(m, n, t)) continue;
        ++count;
        byShape[m][n].push_back(t);
        const auto f = tarskiDual(DVMorphism::table(a, b, t));
        o.require(DVMorphism::finitePreimage(a, b, f).finiteTable() == t, "sigma -> sigma_+ -> sigma");
        o.require(tarskiDual(DVMorphism::finitePreimage(a, b, f)) == f, "f -> f^-1 -> f");
      }
      o.require(count == completeHomomorphisms(a, b).size(), "hom count");
      homs += count;
    }
  for (unsigned a = 1; a <= 3; ++a)
    for (unsigned b = 1; b <= 3; ++b)
      for (unsigned c = 1; c <= 3; ++c) {
        const auto pa = Algebra::finitePowerset(a), pb = Algebra::finitePowerset(b),
                   pc = Algebra::finitePowerset(c);
        for (const auto& t1 : byShape[a][b])
          for (const auto& t2 : byShape[b][c]) {
            ++pairs;
            const auto s1 = DVMorphism::table(pa, pb, t1), s2 = DVMorphism::table(pb, pc, t2);
            const auto d1 = tarskiDual(s1), d2 = tarskiDual(s2);
            const auto d = tarskiDual(DVMorphism::compose(s2, s1));
            for (unsigned x = 0; x < c; ++x) o.require(d[x] == d1[d2[x]], "(s2 s1)_+ != s1_+ s2_+");
          }
      }
  if (o.pass)
    o.detail = std::to_string(homs) + " homomorphisms, " + std::to_string(pairs) + " composable pairs";
  return o;
}

Outcome starLaws() {
  Outcome o;
  std::vector<std::vector<std::vector<DVMorphism>>> mor(4, std::vector<std::vector<DVMorphism>>(4));
  for (unsigned m = 1; m <= 3; ++m)
    for (unsigned n = 1; n <= 3; ++n) mor[m][n] = finiteDVMorphisms(Algebra::finitePowerset(m), Algebra::finitePowerset(n));
  std::size_t pairs = 0;
  for (unsigned a = 1; a <= 3; ++a)
    for (unsigned b = 1; b <= 3; ++b)
      for (unsigned c = 1; c <= 3; ++c)
        for (const auto& inner : mor[a][b])
          for (const auto& outer : mor[b][c]) {
            ++pairs;
            o.require(isCompleteBooleanHomo(outer).value, "a finite morphism is not a complete homomorphism");
            o.require(!firstDisagreement(starCompose(outer, inner), DVMorphism::compose(outer, inner)),
                      "star differs from composition");
          }
  std::mt19937_64 rng(20241016);
  for (int k = 0; k < 1000; ++k) {
    unsigned s[4];
    for (unsigned& x : s) x = 1 + static_cast<unsigned>(rng() % 3);
    const auto& f = mor[s[0]][s[1]][rng() % mor[s[0]][s[1]].size()];
    const auto& g = mor[s[1]][s[2]][rng() % mor[s[1]][s[2]].size()];
    const auto& h = mor[s[2]][s[3]][rng() % mor[s[2]][s[3]].size()];
    const auto left = starCompose(starCompose(h, g), f);
    const auto right = starCompose(h, starCompose(g, f));
    o.require(!firstDisagreement(left, right), "star is not associative on triple " + std::to_string(k));
  }
  if (o.pass) o.detail = std::to_string(pairs) + " pairs exhaustive, 1000 triples (seed 20241016)";
  return o;
}

Outcome maximality() {
  Outcome o;
  const Bounds b{4, 4, 8};
  std::printf("  bounds: universe period 4, 15 partitions, fragment T=%u P=%u T'=%u, "
              "iso search modulus 1..4 offsets -4..4\n",
              b.threshold, b.period, b.witnessThreshold);
  const auto top = theorem34Audit(ArithCompactification::singletons(4), 4, b);
  o.require(top.data["maximal"] == true, "singletons not maximal");
  o.require(top.allPass(), "singletons audit fails");
  const auto parity = theorem34Audit(ArithCompactification::parity(), 4, b);
  o.require(parity.data["maximal"] == false, "parity maximal");
  o.require(parity.allPass(), "parity audit fails");
  int isos = 0;
  for (const auto& p : partitionCompactifications(4)) {
    const auto rep = theorem34Audit(p, 4, b);
    o.require(rep.find("iso-implies-equivalent")->pass, "iso but not equivalent: " + p.print());
    isos += rep.data["isomorphic"] == true;
  }
  if (o.pass)
    o.detail = "singletons maximal, parity not; " + std::to_string(isos) +
               " of 15 isomorphic to the maximum, all equivalent";
  return o;
}

std::string readFile(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome o;
  const std::string dir = DVW_TEST_DATA;
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"example-3-3", ""},
      {"check-proximity", "powerset.dvw"},
      {"check-proximity", "dv7_broken.dvw"},
      {"check-proximity", "example.dvw"},
      {"check-morphism", "example.dvw"},
      {"check-extension", "example.dvw"},
      {"compose", "compose.dvw"},
      {"ends", "example.dvw"},
      {"dualize", "compose.dvw"},
      {"roundtrip", "discrete2.dvw"},
      {"equivalence", "example.dvw"},
      {"maximal", "maximal.dvw"}};
  std::size_t bytes = 0;
  for (const auto& [verb, file] : runs) {
    const std::string input = file.empty() ? "" : readFile(dir + "/" + file);
    RunOptions opt;
    if (verb == "maximal") opt.bounds = Bounds{4, 4, 8};
    const auto first = runCommand(verb, input, opt).output;
    const auto second = runCommand(verb, input, opt).output;
    o.require(first == second, verb + " on " + file + " differs between runs");
    bytes += first.size();
  }
  if (o.pass) o.detail = std::to_string(runs.size()) + " JSON reports, " + std::to_string(bytes) + " bytes, identical";
  return o;
}

struct Criterion {
  const char* name;
  double limitSeconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {"finite proximity collapse", 1, proximityCollapse},
      {"worked example golden bundle", 1, goldenBundle},
      {"extension axioms", 10, extensionAxioms},
      {"regular open fragment isomorphism", 10, fragmentIsomorphism},
      {"atom condition agreement", 10, atomConditions},
      {"round trips", 30, roundTrips},
      {"Tarski duality", 5, tarski},
      {"star composition laws", 30, starLaws},
      {"maximality at desk scale", 60, maximality},
      {"determinism", 0, determinism}};

  int only = 0;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  if (only < 0 || only > static_cast<int>(all.size())) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }

  int failed = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (only && static_cast<int>(i) + 1 != only) continue;
    const auto& c = all[i];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limitSeconds > 0 && secs > c.limitSeconds) {
      o.pass = false;
      o.detail += " (over the time limit)";
    }
    char limit[32] = "no limit";
    if (c.limitSeconds > 0) std::snprintf(limit, sizeof limit, "limit %.0f s", c.limitSeconds);
    std::printf("%s  %2zu %s: %s [%.3f s, %s]\n", o.pass ? "PASS" : "FAIL", i + 1, c.name,
                o.detail.c_str(), secs, limit);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
