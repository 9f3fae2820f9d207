#include <map>

#include "devries.hpp"
#include "doctest.h"

using namespace dvw;

namespace {

// Direct evaluation of DV1-DV7 on P(n) with rel[a] bit b meaning a < b.
// DV7 is read pointwise: every atom below b lies below some a < b.
std::map<std::string, bool> naiveDV(unsigned n, const std::vector<Mask>& rel) {
  const Mask N = Mask{1} << n, top = N - 1;
  auto p = [&](Mask a, Mask b) { return ((rel[a] >> b) & 1U) != 0; };
  auto le = [](Mask a, Mask b) { return (a & ~b) == 0; };
  std::map<std::string, bool> ok{{"DV1", p(top, top)}, {"DV2", true}, {"DV3", true},
                                 {"DV4", true},        {"DV5", true},  {"DV6", true},
                                 {"DV7", true}};
  for (Mask a = 0; a < N; ++a)
    for (Mask b = 0; b < N; ++b) {
      if (p(a, b) && !le(a, b)) ok["DV2"] = false;
      if (p(a, b) && !p(top & ~b, top & ~a)) ok["DV5"] = false;
      if (p(a, b)) {
        bool found = false;
        for (Mask c = 0; c < N && !found; ++c) found = p(a, c) && p(c, b);
        if (!found) ok["DV6"] = false;
      }
      for (Mask c = 0; c < N; ++c) {
        if (p(a, b) && p(a, c) && !p(a, b & c)) ok["DV4"] = false;
        for (Mask d = 0; d < N; ++d)
          if (le(a, b) && p(b, c) && le(c, d) && !p(a, d)) ok["DV3"] = false;
      }
    }
  for (Mask b = 0; b < N; ++b)
    for (unsigned x = 0; x < n; ++x) {
      if (!((b >> x) & 1U)) continue;
      bool found = false;
      for (Mask a = 0; a < N && !found; ++a) found = p(a, b) && ((a >> x) & 1U);
      if (!found) ok["DV7"] = false;
    }
  return ok;
}

std::vector<Mask> orderRows(unsigned n) {
  std::vector<Mask> rows(std::size_t{1} << n, 0);
  for (Mask a = 0; a < rows.size(); ++a)
    for (Mask b = 0; b < rows.size(); ++b)
      if (isSubset(a, b)) rows[a] |= Mask{1} << b;
  return rows;
}

// Every map P(m) -> P(n) as a table, in lexicographic order.
std::vector<std::vector<Mask>> allMaps(unsigned m, unsigned n) {
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

// M1-M4 for order proximities: M3 and M4 reduce to order statements.
std::map<std::string, bool> naiveM(unsigned m, const std::vector<Mask>& t, unsigned n) {
  const Mask D = Mask{1} << m, topD = D - 1, topC = (Mask{1} << n) - 1;
  std::map<std::string, bool> ok{{"M1", t[0] == 0}, {"M2", true}, {"M3", true}, {"M4", true}};
  for (Mask a = 0; a < D; ++a)
    for (Mask b = 0; b < D; ++b) {
      if (t[a & b] != (t[a] & t[b])) ok["M2"] = false;
      if (isSubset(a, b) && !isSubset(topC & ~t[topD & ~a], t[b])) ok["M3"] = false;
    }
  for (Mask b = 0; b < D; ++b) {
    Mask acc = 0;
    for (Mask a = 0; a < D; ++a)
      if (isSubset(a, b)) acc |= t[a];
    if (acc != t[b]) ok["M4"] = false;
  }
  return ok;
}

}  // namespace

TEST_SUITE("devries") {
  TEST_CASE("every sub-relation of the order on P(2) agrees with direct evaluation") {
    const auto order = orderRows(2);
    std::vector<std::pair<Mask, Mask>> pairs;
    for (Mask a = 0; a < 4; ++a)
      for (Mask b = 0; b < 4; ++b)
        if (isSubset(a, b)) pairs.emplace_back(a, b);
    REQUIRE(pairs.size() == 9);
    int passing = 0;
    for (unsigned sub = 0; sub < 512; ++sub) {
      std::vector<Mask> rows(4, 0);
      for (unsigned k = 0; k < 9; ++k)
        if ((sub >> k) & 1U) rows[pairs[k].first] |= Mask{1} << pairs[k].second;
      const auto rep = checkProximityAxioms(*Algebra::finiteTable(2, rows));
      const auto oracle = naiveDV(2, rows);
      for (const auto& [ax, pass] : oracle) {
        const AxiomResult* r = rep.find(ax);
        REQUIRE(r);
        REQUIRE(r->pass == pass);
      }
      if (rep.allPass()) {
        ++passing;
        CHECK(rows == order);
        // 0 < 0 and joins of elements below c stay below c.
        CHECK(((rows[0] >> 0) & 1U) == 1U);
      }
    }
    CHECK(passing == 1);
  }

  TEST_CASE("removing an atom's self-proximity breaks DV7 at that atom") {
    auto rows = orderRows(2);
    rows[1] &= ~(Mask{1} << 1);
    const auto rep = checkProximityAxioms(*Algebra::finiteTable(2, rows));
    const AxiomResult* dv7 = rep.find("DV7");
    REQUIRE(dv7);
    CHECK_FALSE(dv7->pass);
    REQUIRE(dv7->witness.size() == 2);
    CHECK(dv7->witness[0] == "{0}");
    CHECK(dv7->witness[1] == "0");
    CHECK(rep.toJson()["status"] == "fail");
  }

  TEST_CASE("witnesses are lexicographically least on small algebras") {
    // Drop ({1},{1}) and ({0,1},{0,1}); DV1 fails first at the top.
    auto rows = orderRows(2);
    rows[3] = 0;
    const auto rep = checkProximityAxioms(*Algebra::finiteTable(2, rows));
    CHECK(rep.find("DV1")->witness == std::vector<std::string>{"{0,1}", "{0,1}"});
  }

  TEST_CASE("canonical proximities pass on arithmetic fragments") {
    const auto ro = Algebra::regularOpen(ArithCompactification::parity());
    const auto small = checkProximityAxioms(*ro, Bounds{4, 2, 12});
    CHECK(small.mode == "exhaustive");
    CHECK(small.allPass());
    for (const auto& r : small.results) CHECK(r.bounded);
    const auto big = checkProximityAxioms(*ro, Bounds{6, 4, 12});
    CHECK(big.mode == "reduced");
    CHECK(big.allPass());
    CHECK(checkProximityAxioms(*Algebra::arithPowerset(), Bounds{6, 4, 12}).allPass());
    CHECK(checkProximityAxioms(*Algebra::regularOpen(ArithCompactification::onePoint()), Bounds{5, 3, 10})
              .allPass());
  }

  TEST_CASE("bounds are validated") {
    CHECK_THROWS_AS(Bounds({6, 4, 5}).validate(), InputError);
    CHECK_THROWS_AS(Bounds({6, 0, 12}).validate(), InputError);
    CHECK_NOTHROW(Bounds({6, 4, 12}).validate());
  }

  TEST_CASE("morphism axioms agree with direct evaluation on every map P(2) -> P(2)") {
    const auto a = Algebra::finitePowerset(2);
    int passing = 0;
    for (const auto& t : allMaps(2, 2)) {
      const auto m = DVMorphism::table(a, a, t);
      const auto rep = checkMorphismAxioms(m);
      for (const auto& [ax, pass] : naiveM(2, t, 2)) REQUIRE(rep.find(ax)->pass == pass);
      if (rep.allPass()) {
        ++passing;
        CHECK(derivedMorphismLaws(m).allPass());
      } else {
        CHECK(derivedMorphismLaws(m).refused);
      }
    }
    // De Vries morphisms between finite powersets are the Boolean
    // homomorphisms: one per function {0,1} -> {0,1}.
    CHECK(passing == 4);
  }

  TEST_CASE("morphism axioms on P(1) -> P(3) and P(3) -> P(1)") {
    const auto p1 = Algebra::finitePowerset(1), p3 = Algebra::finitePowerset(3);
    int up = 0, down = 0;
    for (const auto& t : allMaps(1, 3)) up += checkMorphismAxioms(DVMorphism::table(p1, p3, t)).allPass();
    for (const auto& t : allMaps(3, 1)) {
      const auto rep = checkMorphismAxioms(DVMorphism::table(p3, p1, t));
      for (const auto& [ax, pass] : naiveM(3, t, 1)) REQUIRE(rep.find(ax)->pass == pass);
      down += rep.allPass();
    }
    CHECK(up == 1);
    CHECK(down == 3);
  }

  TEST_CASE("pullbacks and preimages are de Vries morphisms on fragments") {
    const Bounds b{6, 4, 12};
    for (const auto& y : {ArithCompactification::onePoint(), ArithCompactification::parity(),
                          ArithCompactification::singletons(4)}) {
      const auto e = DVMorphism::pullback(y);
      CHECK(checkMorphismAxioms(e, b).allPass());
      CHECK(derivedMorphismLaws(e, Bounds{4, 4, 8}).allPass());
    }
    const auto f = PiecewiseArithMap::parse("affine modulus 4 pieces [n, n, n+1, n-1] from 0 table []");
    CHECK(checkMorphismAxioms(DVMorphism::preimage(f), b).allPass());
    CHECK(checkMorphismAxioms(DVMorphism::preimage(PiecewiseArithMap::shift(2)), b).allPass());
  }

  TEST_CASE("a meet-preserving map that is not a morphism fails M3") {
    const auto p = Algebra::arithPowerset();
    // a -> a intersected with the even numbers.
    const auto evens = DVMorphism::function(
        p, p,
        [](Mask a, const Fragment& l) {
          Mask e = 0;
          for (unsigned n = 0; n < l.threshold(); n += 2) e |= Mask{1} << n;
          for (unsigned r = 0; r < l.period(); r += 2) e |= l.tailBit(r);
          return a & e;
        },
        [](const Fragment& l) { return l.period() % 2 ? Fragment(l.threshold(), 2 * l.period()) : l; },
        "evens");
    const auto rep = checkMorphismAxioms(evens, Bounds{4, 2, 8});
    CHECK(rep.find("M1")->pass);
    CHECK(rep.find("M2")->pass);
    CHECK_FALSE(rep.find("M3")->pass);
  }

  TEST_CASE("star agrees with composition when the outer map is a complete homomorphism") {
    const auto p2 = Algebra::finitePowerset(2);
    std::vector<DVMorphism> homs;
    for (const auto& t : allMaps(2, 2)) {
      const auto m = DVMorphism::table(p2, p2, t);
      if (checkMorphismAxioms(m).allPass()) homs.push_back(m);
    }
    for (const auto& outer : homs) {
      CHECK(isCompleteBooleanHomo(outer).value);
      for (const auto& inner : homs) {
        const auto s = starCompose(outer, inner);
        CHECK_FALSE(firstDisagreement(s, DVMorphism::compose(outer, inner)));
        CHECK(checkMorphismAxioms(s).allPass());
      }
    }
  }

  TEST_CASE("complete homomorphism verdicts") {
    const auto p2 = Algebra::finitePowerset(2);
    const auto bottom = DVMorphism::table(p2, p2, {0, 0, 0, 0});
    CHECK_FALSE(isCompleteBooleanHomo(bottom).value);
    const auto e = DVMorphism::pullback(ArithCompactification::parity());
    const auto v = isCompleteBooleanHomo(e);
    CHECK(v.value);
    CHECK(v.basis == "by construction");
  }

  TEST_CASE("report JSON shape") {
    const auto rep = checkProximityAxioms(*Algebra::finitePowerset(2));
    const auto j = rep.toJson();
    CHECK(j["status"] == "pass");
    CHECK(j["axioms"].size() == 7);
    CHECK(j["axioms"][2]["axiom"] == "DV3");
    CHECK(j["axioms"][2]["witness"].empty());
    CHECK(j["axioms"][2]["bounded"] == false);
    CHECK(j.dump() == rep.toJson().dump());
  }
}
