#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "duality.hpp"

using namespace dvw;

namespace {

bool in(ElemSet s, Mask m) { return (s >> m) & 1U; }

// Maximal proper round filters found by trying every set of elements.
std::vector<ElemSet> endsOracle(unsigned atoms, const std::vector<Mask>& rel) {
  const Mask n = Mask{1} << atoms;
  auto prox = [&](Mask a, Mask b) { return ((rel[a] >> b) & 1U) != 0; };
  std::vector<ElemSet> round;
  for (ElemSet s = 1; s < (ElemSet{1} << n); ++s) {
    if (in(s, 0)) continue;
    bool ok = true;
    for (Mask a = 0; a < n && ok; ++a) {
      if (!in(s, a)) continue;
      for (Mask b = 0; b < n && ok; ++b) {
        if (isSubset(a, b) && !in(s, b)) ok = false;
        if (in(s, b) && !in(s, a & b)) ok = false;
      }
      bool below = false;
      for (Mask b = 0; b < n && !below; ++b) below = in(s, b) && prox(b, a);
      if (!below) ok = false;
    }
    if (ok) round.push_back(s);
  }
  std::vector<ElemSet> ends;
  for (ElemSet f : round) {
    bool maximal = true;
    for (ElemSet g : round)
      if (g != f && (f & ~g) == 0) maximal = false;
    if (maximal) ends.push_back(f);
  }
  return ends;
}

std::vector<std::vector<unsigned>> allFunctions(unsigned n, unsigned m) {
  std::vector<std::vector<unsigned>> out;
  if (m == 0 && n > 0) return out;
  std::vector<unsigned> f(n, 0);
  while (true) {
    out.push_back(f);
    unsigned i = 0;
    while (i < n && ++f[i] == m) f[i++] = 0;
    if (i == n) break;
  }
  return out;
}

}  // namespace

TEST_SUITE("duality") {
  TEST_CASE("ends agree with the brute-force round filter oracle") {
    std::vector<std::pair<Mask, Mask>> pairs;
    for (Mask a = 0; a < 4; ++a)
      for (Mask b = 0; b < 4; ++b)
        if (isSubset(a, b)) pairs.emplace_back(a, b);
    for (unsigned sub = 0; sub < 512; ++sub) {
      std::vector<Mask> rows(4, 0);
      for (unsigned k = 0; k < 9; ++k)
        if ((sub >> k) & 1U) rows[pairs[k].first] |= Mask{1} << pairs[k].second;
      auto expect = endsOracle(2, rows);
      auto got = endsOf(*Algebra::finiteTable(2, rows));
      std::sort(expect.begin(), expect.end());
      std::sort(got.begin(), got.end());
      REQUIRE(got == expect);
    }
    const auto p3 = Algebra::finitePowerset(3);
    std::vector<Mask> order(8, 0);
    for (Mask a = 0; a < 8; ++a)
      for (Mask b = 0; b < 8; ++b)
        if (isSubset(a, b)) order[a] |= Mask{1} << b;
    auto expect = endsOracle(3, order);
    auto got = endsOf(*p3);
    std::sort(expect.begin(), expect.end());
    std::sort(got.begin(), got.end());
    CHECK(got == expect);
  }

  TEST_CASE("ends of a finite powerset are the principal ultrafilters") {
    const auto p3 = Algebra::finitePowerset(3);
    const auto ends = endsOf(*p3);
    REQUIRE(ends.size() == 3);
    for (unsigned i = 0; i < 3; ++i) {
      CHECK(ends[i] == principalFilter(*p3, Mask{1} << i));
      CHECK(isRoundFilter(*p3, ends[i]));
    }
    for (Mask a = 0; a < 8; ++a) CHECK(zeta(ends, a) == a);
    CHECK(isFilter(*p3, principalFilter(*p3, 3)));
    CHECK_FALSE(isFilter(*p3, ElemSet{1} << 1 | ElemSet{1} << 2));
  }

  TEST_CASE("Tarski duality on CABAs with at most 3 atoms") {
    for (unsigned m = 1; m <= 3; ++m)
      for (unsigned n = 1; n <= 3; ++n) {
        const auto a = Algebra::finitePowerset(m), b = Algebra::finitePowerset(n);
        const auto homs = completeHomomorphisms(a, b);
        CHECK(homs.size() == static_cast<std::size_t>(std::pow(m, n)));
        for (const auto& f : allFunctions(n, m))
          CHECK(tarskiDual(DVMorphism::finitePreimage(a, b, f)) == f);
        // De Vries morphisms between finite powersets are exactly these.
        const auto dv = finiteDVMorphisms(a, b);
        REQUIRE(dv.size() == homs.size());
        std::vector<std::vector<Mask>> x, y;
        for (const auto& h : homs) x.push_back(h.finiteTable());
        for (const auto& h : dv) y.push_back(h.finiteTable());
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        CHECK(x == y);
      }
    const auto p2 = Algebra::finitePowerset(2);
    CHECK_THROWS_AS((void)tarskiDual(DVMorphism::table(p2, p2, {0, 0, 0, 3})), InputError);
  }

  TEST_CASE("sigma_+ is contravariant") {
    for (unsigned a = 1; a <= 3; ++a)
      for (unsigned b = 1; b <= 3; ++b)
        for (unsigned c = 1; c <= 2; ++c) {
          const auto pa = Algebra::finitePowerset(a), pb = Algebra::finitePowerset(b),
                     pc = Algebra::finitePowerset(c);
          for (const auto& f1 : allFunctions(b, a))
            for (const auto& f2 : allFunctions(c, b)) {
              const auto s1 = DVMorphism::finitePreimage(pa, pb, f1);
              const auto s2 = DVMorphism::finitePreimage(pb, pc, f2);
              const auto d = tarskiDual(DVMorphism::compose(s2, s1));
              for (unsigned x = 0; x < c; ++x) REQUIRE(d[x] == f1[f2[x]]);
            }
        }
  }

  TEST_CASE("C(E(X)) is X for finite discrete X") {
    for (unsigned n = 1; n <= 4; ++n) {
      const auto c = functorC(functorE(FinDiscrete{n}));
      CHECK(c.points == n);
      CHECK(c.ends.size() == n);
      for (unsigned x = 0; x < n; ++x) CHECK(c.embedding[x] == x);
    }
    CHECK_THROWS_AS((void)functorC(functorE(ArithCompactification::parity())), InputError);
  }

  TEST_CASE("C on morphisms recovers the function") {
    for (const auto& f : allFunctions(3, 2)) {
      const auto from = functorE(FinDiscrete{3});
      const auto to = functorE(FinDiscrete{2});
      const auto e = functorE(3, 2, f);
      CHECK(checkExtMorphismSquare(to, from, e).pass);
      const auto p = functorC(to, from, e);
      CHECK(p.f == f);
      CHECK(p.g == f);
    }
  }

  TEST_CASE("extension checks") {
    CHECK(checkExtension(functorE(FinDiscrete{3})).allPass());
    CHECK(checkExtension(functorE(ArithCompactification::parity()), Bounds{6, 4, 12}).allPass());
    CHECK(checkExtension(functorE(ArithCompactification::onePoint()), Bounds{6, 4, 12}).allPass());

    const auto p1 = Algebra::finitePowerset(1), p2 = Algebra::finitePowerset(2);
    // Two points glued: not dense, and the check says why.
    const auto glued = checkExtension({DVMorphism::finitePreimage(p1, p2, {0, 0}), "glued"});
    CHECK(glued.find("M1")->pass);
    CHECK(glued.find("injective")->pass);
    CHECK_FALSE(glued.find("atom-meet-density")->pass);
    CHECK_FALSE(glued.find("separation")->pass);
    CHECK(glued.find("density-iff-separation")->pass);
    // A point missed: not injective.
    const auto missed = checkExtension({DVMorphism::finitePreimage(p2, p1, {0}), "missed"});
    CHECK_FALSE(missed.find("injective")->pass);
  }

  TEST_CASE("atom conditions agree for the parity extension") {
    const auto rep = lemma53Audit(functorE(ArithCompactification::parity()), Bounds{6, 2, 12});
    CHECK(rep.allPass());
    CHECK(rep.find("points"));
    CHECK(rep.find("infinity-ends"));
    CHECK(lemma53Audit(functorE(FinDiscrete{3})).allPass());
  }

  TEST_CASE("round trips") {
    for (unsigned n = 1; n <= 3; ++n) CHECK(roundTripAudit(n).allPass());
    CHECK(roundTripAudit(3, 2, {0, 1, 1}).allPass());
    CHECK(roundTripAudit(2, 3, {2, 2}).allPass());
    CHECK(roundTripAudit(ArithCompactification::parity(), Bounds{6, 4, 12}).allPass());
  }

  TEST_CASE("E of a morphism of compactifications gives a commuting square") {
    const auto y = ArithCompactification::parity();
    const auto yp = ArithCompactification::parse(
        "compactify N period 4 blocks [{0,3} -> inf_1, {1,2} -> inf_2]");
    const auto f = PiecewiseArithMap::parse("affine modulus 4 pieces [n, n, n+1, n-1] from 0 table []");
    const auto e = functorE(y, yp, f, {0, 1});
    CHECK(checkExtMorphismSquare(functorE(yp), functorE(y), e, Bounds{8, 4, 16}).pass);
    CHECK(checkMorphismAxioms(e.rho, Bounds{6, 4, 12}).allPass());
  }
}
