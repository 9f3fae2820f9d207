#include "devries.hpp"

#include <algorithm>
#include <functional>

namespace dvw {

bool AxiomReport::allPass() const {
  if (refused) return false;
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

const AxiomResult* AxiomReport::find(const std::string& axiom) const {
  for (const auto& r : results)
    if (r.axiom == axiom) return &r;
  return nullptr;
}

nlohmann::json toJson(const AxiomResult& r) {
  nlohmann::json j{{"axiom", r.axiom},
                   {"status", r.pass ? "pass" : "fail"},
                   {"witness", r.witness},
                   {"bounded", r.bounded}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

nlohmann::json AxiomReport::toJson() const {
  nlohmann::json j{{"subject", subject}, {"level", level}, {"mode", mode}};
  if (!witnessLevel.empty()) j["witness_level"] = witnessLevel;
  if (refused) {
    j["status"] = "refused";
    j["reason"] = refusal;
  } else {
    j["status"] = allPass() ? "pass" : "fail";
  }
  auto arr = nlohmann::json::array();
  for (const auto& r : results) arr.push_back(dvw::toJson(r));
  j["axioms"] = arr;
  if (!data.empty()) j["data"] = data;
  return j;
}

namespace {

constexpr unsigned kMaxPairWidth = 12;

// Algebra seen at its element level L and witness level W.
struct Levels {
  Fragment L, W;
  std::unique_ptr<AlgebraView> v, vw;
  bool arith = false;
  bool full = false;
};

Levels prepare(const Algebra& a, const Bounds& b) {
  b.validate();
  Levels lv;
  lv.arith = a.isArithmetic();
  lv.L = a.levelFor(b);
  lv.W = a.witnessLevel(lv.L, b.witnessThreshold);
  if (lv.L.width() > kMaxPairWidth)
    throw InputError(lv.L.describe() + " has " + std::to_string(lv.L.width()) +
                     " atoms; checks run on at most " + std::to_string(kMaxPairWidth));
  lv.v = a.view(lv.L);
  lv.vw = a.view(lv.W);
  lv.full = lv.L.size() <= kExhaustiveElements;
  return lv;
}

AxiomResult passed(std::string name, bool bounded) {
  AxiomResult r;
  r.axiom = std::move(name);
  r.bounded = bounded;
  return r;
}

void failWith(AxiomResult& r, std::vector<std::pair<std::string, Mask>> w) {
  r.pass = false;
  for (auto& [s, m] : w) {
    r.witness.push_back(std::move(s));
    r.rawWitness.push_back(m);
  }
}

// Enumerate pairs a < b in ascending order; stops when f returns false.
template <class F>
void forRelatedPairs(const AlgebraView& v, bool subsetOnly, F&& f) {
  const Mask n = v.size();
  for (Mask a = 0; a < n; ++a) {
    if (subsetOnly) {
      bool go = true;
      // supersets of a in ascending order
      const Mask free = v.top() & ~a;
      forSubmasks(free, [&](Mask s) {
        const Mask b = a | s;
        if (v.precedes(a, b)) go = f(a, b);
        return go;
      });
      if (!go) return;
    } else {
      for (Mask b = 0; b < n; ++b)
        if (v.precedes(a, b) && !f(a, b)) return;
    }
  }
}

}  // namespace

std::optional<Mask> findBelow(const AlgebraView& v, Mask b, const std::function<bool(Mask)>& pred,
                              bool* searched) {
  if (searched) *searched = true;
  if (v.width() <= kMaxSearchWidth || v.orderProximity()) {
    const Mask j = v.joinBelow(b);
    if (v.precedes(j, b) && pred(j)) return j;
  }
  if (v.width() > kMaxSearchWidth) {
    if (searched) *searched = false;
    return std::nullopt;
  }
  std::optional<Mask> found;
  forSubmasks(b, [&](Mask c) {
    if (v.precedes(c, b) && pred(c)) {
      found = c;
      return false;
    }
    return true;
  });
  return found;
}

AxiomReport checkProximityAxioms(const Algebra& alg, const Bounds& bounds) {
  Levels lv = prepare(alg, bounds);
  const AlgebraView& v = *lv.v;
  const AlgebraView& vw = *lv.vw;
  const bool bd = lv.arith;
  auto show = [&](Mask m) { return std::pair{v.show(m), m}; };
  const Mask n = v.size();
  const Mask top = v.top();

  AxiomReport rep;
  rep.subject = alg.name();
  rep.level = lv.L.describe();
  if (lv.arith) rep.witnessLevel = lv.W.describe();
  rep.mode = lv.full ? "exhaustive" : "reduced";

  AxiomResult dv1 = passed("DV1", bd);
  if (!v.precedes(top, top)) failWith(dv1, {show(top), show(top)});
  rep.results.push_back(dv1);

  AxiomResult dv2 = passed("DV2", bd);
  for (Mask a = 0; a < n && dv2.pass; ++a)
    for (Mask b = 0; b < n; ++b)
      if (v.precedes(a, b) && !isSubset(a, b)) {
        failWith(dv2, {show(a), show(b)});
        break;
      }
  rep.results.push_back(dv2);
  // Without DV2 the related pairs are not confined to a <= b.
  const bool subsetPairs = dv2.pass && !lv.full;

  AxiomResult dv3 = passed("DV3", bd);
  if (lv.full) {
    for (Mask a = 0; a < n && dv3.pass; ++a)
      for (Mask b = 0; b < n && dv3.pass; ++b) {
        if (!isSubset(a, b)) continue;
        for (Mask c = 0; c < n && dv3.pass; ++c) {
          if (!v.precedes(b, c)) continue;
          for (Mask d = 0; d < n; ++d)
            if (isSubset(c, d) && !v.precedes(a, d)) {
              failWith(dv3, {show(a), show(b), show(c), show(d)});
              break;
            }
        }
      }
  } else {
    forRelatedPairs(v, subsetPairs, [&](Mask a, Mask b) {
      for (unsigned i = 0; i < v.width(); ++i) {
        const Mask bit = Mask{1} << i;
        if ((a & bit) && !v.precedes(a & ~bit, b)) {
          failWith(dv3, {show(a & ~bit), show(a), show(b), show(b)});
          return false;
        }
        if (!(b & bit) && !v.precedes(a, b | bit)) {
          failWith(dv3, {show(a), show(a), show(b), show(b | bit)});
          return false;
        }
      }
      return true;
    });
  }
  rep.results.push_back(dv3);

  AxiomResult dv4 = passed("DV4", bd);
  if (lv.full) {
    for (Mask a = 0; a < n && dv4.pass; ++a)
      for (Mask b = 0; b < n && dv4.pass; ++b) {
        if (!v.precedes(a, b)) continue;
        for (Mask c = 0; c < n; ++c)
          if (v.precedes(a, c) && !v.precedes(a, b & c)) {
            failWith(dv4, {show(a), show(b), show(c)});
            break;
          }
      }
  } else {
    for (Mask a = 0; a < n && dv4.pass; ++a) {
      std::optional<Mask> meet;
      for (Mask b = 0; b < n; ++b) {
        if (subsetPairs && !isSubset(a, b)) continue;
        if (!v.precedes(a, b)) continue;
        if (meet && !v.precedes(a, *meet & b)) {
          failWith(dv4, {show(a), show(*meet), show(b)});
          break;
        }
        meet = meet ? (*meet & b) : b;
      }
    }
  }
  rep.results.push_back(dv4);

  AxiomResult dv5 = passed("DV5", bd);
  forRelatedPairs(v, subsetPairs, [&](Mask a, Mask b) {
    if (!v.precedes(v.neg(b), v.neg(a))) {
      failWith(dv5, {show(a), show(b)});
      return false;
    }
    return true;
  });
  rep.results.push_back(dv5);

  AxiomResult dv6 = passed("DV6", bd);
  forRelatedPairs(v, subsetPairs, [&](Mask a, Mask b) {
    const Mask aw = lv.L.refine(a, lv.W);
    const Mask bwm = lv.L.refine(b, lv.W);
    bool searched = true;
    auto c = findBelow(vw, bwm, [&](Mask c) { return vw.precedes(aw, c); }, &searched);
    if (!c) {
      failWith(dv6, {show(a), show(b)});
      if (!searched) dv6.note = "no interpolant among joins below b; search width exceeded";
      return false;
    }
    return true;
  });
  rep.results.push_back(dv6);

  AxiomResult dv7 = passed("DV7", bd);
  const auto pts = vw.points();
  for (Mask b = 0; b < n && dv7.pass; ++b) {
    const Mask bwm = lv.L.refine(b, lv.W);
    for (const auto& x : pts) {
      if (!x.below(bwm)) continue;
      bool searched = true;
      auto a = findBelow(vw, bwm, [&](Mask c) { return x.below(c); }, &searched);
      if (!a) {
        failWith(dv7, {show(b), {x.label, x.support}});
        if (!searched) dv7.note = "search width exceeded";
        break;
      }
    }
  }
  if (lv.arith) dv7.note = dv7.pass ? "pointwise on points of " + lv.W.describe() : dv7.note;
  rep.results.push_back(dv7);
  return rep;
}

namespace {

struct MorphismLevels {
  Levels dom;
  Fragment Lo, Wo;
  std::unique_ptr<AlgebraView> cod, codw;
  std::unique_ptr<MorphismTable> tL, tW;
};

MorphismLevels prepareMorphism(const DVMorphism& rho, const Bounds& bounds) {
  MorphismLevels m;
  m.dom = prepare(*rho.domain(), bounds);
  const unsigned wT = bounds.witnessThreshold;
  m.tL = std::make_unique<MorphismTable>(rho, m.dom.L, wT);
  m.tW = std::make_unique<MorphismTable>(rho, m.dom.W, wT);
  m.Lo = m.tL->outputLevel();
  m.Wo = m.tW->outputLevel();
  m.cod = rho.codomain()->view(m.Lo);
  m.codw = rho.codomain()->view(m.Wo);
  return m;
}

}  // namespace

AxiomReport checkMorphismAxioms(const DVMorphism& rho, const Bounds& bounds) {
  MorphismLevels m = prepareMorphism(rho, bounds);
  const AlgebraView& v = *m.dom.v;
  const AlgebraView& vw = *m.dom.vw;
  const AlgebraView& cod = *m.cod;
  const MorphismTable& t = *m.tL;
  const MorphismTable& tw = *m.tW;
  const bool arith = m.dom.arith || rho.codomain()->isArithmetic();
  const bool bd = arith || rho.rule().bounded();
  auto show = [&](Mask x) { return std::pair{v.show(x), x}; };
  const Mask n = v.size();

  AxiomReport rep;
  rep.subject = rho.name() + " : " + rho.domain()->name() + " -> " + rho.codomain()->name();
  rep.level = m.dom.L.describe() + " -> " + m.Lo.describe();
  if (arith) rep.witnessLevel = m.dom.W.describe() + " -> " + m.Wo.describe();
  rep.mode = arith ? "fragment" : "exhaustive";

  AxiomResult m1 = passed("M1", bd);
  if (t(0) != 0) failWith(m1, {show(0)});
  rep.results.push_back(m1);

  AxiomResult m2 = passed("M2", bd);
  for (Mask a = 0; a < n && m2.pass; ++a)
    for (Mask b = 0; b < n; ++b)
      if (t(a & b) != (t(a) & t(b))) {
        failWith(m2, {show(a), show(b)});
        break;
      }
  rep.results.push_back(m2);

  AxiomResult m3 = passed("M3", bd);
  forRelatedPairs(v, false, [&](Mask a, Mask b) {
    if (!cod.precedes(cod.neg(t(v.neg(a))), t(b))) {
      failWith(m3, {show(a), show(b)});
      return false;
    }
    return true;
  });
  rep.results.push_back(m3);

  AxiomResult m4 = passed("M4", bd);
  if (!arith) {
    for (Mask b = 0; b < n; ++b) {
      Mask acc = 0;
      for (Mask a = 0; a < n; ++a)
        if (v.precedes(a, b)) acc |= t(a);
      if (acc != t(b)) {
        failWith(m4, {show(b)});
        break;
      }
    }
  } else {
    const auto pts = m.codw->points();
    // A finite point past either threshold cannot be isolated by a domain
    // element at this level.
    const Mask edge = Mask{1} << std::min(m.dom.W.threshold(), m.Wo.threshold());
    for (Mask b = 0; b < n && m4.pass; ++b) {
      const Mask bw = m.dom.L.refine(b, m.dom.W);
      const Mask y = tw(bw);
      const Mask j = vw.joinBelow(bw);
      const bool jOk = vw.precedes(j, bw);
      if (jOk && !isSubset(tw(j), y)) {
        failWith(m4, {show(b), {vw.show(j), j}});
        break;
      }
      for (const auto& x : pts) {
        // Traces determine RO(Y) elements and joins there are unions of
        // traces, so points at infinity carry no extra constraint.
        if (x.atInfinity || x.support >= edge || !x.below(y)) continue;
        if (jOk && x.below(tw(j))) continue;
        bool searched = true;
        auto a = findBelow(vw, bw, [&](Mask c) { return x.below(tw(c)); }, &searched);
        if (!a) {
          failWith(m4, {show(b), {x.label, x.support}});
          if (!searched) m4.note = "search width exceeded";
          break;
        }
      }
    }
    if (m4.pass) m4.note = "pointwise on points of " + m.Wo.describe();
  }
  rep.results.push_back(m4);
  return rep;
}

AxiomReport derivedMorphismLaws(const DVMorphism& rho, const Bounds& bounds) {
  const AxiomReport base = checkMorphismAxioms(rho, bounds);
  AxiomReport rep;
  rep.subject = base.subject;
  rep.level = base.level;
  rep.witnessLevel = base.witnessLevel;
  rep.mode = base.mode;
  if (!base.allPass()) {
    rep.refused = true;
    for (const auto& r : base.results)
      if (!r.pass) {
        rep.refusal = r.axiom + " fails";
        break;
      }
    return rep;
  }
  MorphismLevels m = prepareMorphism(rho, bounds);
  const AlgebraView& v = *m.dom.v;
  const AlgebraView& cod = *m.cod;
  const MorphismTable& t = *m.tL;
  const bool bd = m.dom.arith || rho.codomain()->isArithmetic();
  auto show = [&](Mask x) { return std::pair{v.show(x), x}; };
  const Mask n = v.size();

  AxiomResult top = passed("preserves-top", bd);
  if (t(v.top()) != cod.top()) failWith(top, {show(v.top())});
  rep.results.push_back(top);

  AxiomResult neg = passed("negation", bd);
  for (Mask a = 0; a < n; ++a)
    if (t(v.neg(a)) & t(a)) {
      failWith(neg, {show(a)});
      break;
    }
  rep.results.push_back(neg);

  AxiomResult pres = passed("preserves-proximity", bd);
  std::vector<std::pair<Mask, Mask>> pairs;
  forRelatedPairs(v, false, [&](Mask a, Mask b) {
    pairs.emplace_back(a, b);
    if (!cod.precedes(t(a), t(b))) {
      failWith(pres, {show(a), show(b)});
      return false;
    }
    return true;
  });
  rep.results.push_back(pres);

  AxiomResult two = passed("two-pair", bd);
  if (pairs.size() <= 4096) {
    for (const auto& [a1, b1] : pairs) {
      for (const auto& [a2, b2] : pairs)
        if (!cod.precedes(t(a1 | a2), t(b1) | t(b2))) {
          failWith(two, {show(a1), show(b1), show(a2), show(b2)});
          break;
        }
      if (!two.pass) break;
    }
  } else {
    // Images are monotone and the codomain proximity is down-closed, so the
    // largest a_i below each b_i suffice.
    std::vector<Mask> jb(n);
    for (Mask b = 0; b < n; ++b) {
      jb[b] = v.joinBelow(b);
      if (!v.precedes(jb[b], b)) throw InputError("two-pair law: no largest element below " + v.show(b));
    }
    for (Mask b1 = 0; b1 < n && two.pass; ++b1)
      for (Mask b2 = b1; b2 < n; ++b2)
        if (!cod.precedes(t(jb[b1] | jb[b2]), t(b1) | t(b2))) {
          failWith(two, {show(jb[b1]), show(b1), show(jb[b2]), show(b2)});
          break;
        }
    two.note = "reduced to the largest element below each b";
  }
  rep.results.push_back(two);
  return rep;
}

DVMorphism starCompose(const DVMorphism& outer, const DVMorphism& inner) {
  return DVMorphism::star(outer, inner);
}

HomoVerdict isCompleteBooleanHomo(const DVMorphism& sigma, const Bounds& bounds) {
  HomoVerdict out;
  const bool finite = !sigma.domain()->isArithmetic();
  if (!finite && sigma.rule().completeByConstruction()) {
    out.value = true;
    out.basis = "by construction";
    return out;
  }
  Bounds b = bounds;
  b.validate();
  const Fragment L = sigma.domain()->levelFor(b);
  const auto v = sigma.domain()->view(L);
  MorphismTable t(sigma, L, b.witnessThreshold);
  const Mask codTop = t.outputLevel().top();
  const Mask n = v->size();
  out.basis = finite ? "exhaustive" : "fragment";
  out.value = true;
  auto fail = [&](std::string what) {
    out.value = false;
    out.witness.push_back(std::move(what));
  };
  if (t(0) != 0) fail("0 -> " + std::to_string(t(0)));
  else if (t(v->top()) != codTop) fail("top not preserved");
  for (Mask a = 0; a < n && out.value; ++a) {
    if (t(v->neg(a)) != (codTop & ~t(a))) {
      fail("complement of " + v->show(a));
      break;
    }
    for (Mask c = a + 1; c < n; ++c)
      if (t(a | c) != (t(a) | t(c))) {
        fail("join of " + v->show(a));
        fail(v->show(c));
        break;
      }
  }
  return out;
}

std::optional<Mask> firstDisagreement(const DVMorphism& a, const DVMorphism& b,
                                      const Bounds& bounds) {
  const Fragment L = a.domain()->levelFor(bounds);
  MorphismTable ta(a, L, bounds.witnessThreshold), tb(b, L, bounds.witnessThreshold);
  const Fragment& la = ta.outputLevel();
  const Fragment& lb = tb.outputLevel();
  if (la.isFinite() != lb.isFinite()) return Mask{0};
  const Fragment common = la.isFinite() ? la : join(la, lb);
  for (Mask x = 0; x < L.size(); ++x) {
    const Mask ya = la.isFinite() ? ta(x) : la.refine(ta(x), common);
    const Mask yb = lb.isFinite() ? tb(x) : lb.refine(tb(x), common);
    if (ya != yb) return x;
  }
  return std::nullopt;
}

}  // namespace dvw
