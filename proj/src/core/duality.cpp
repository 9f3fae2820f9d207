#include "duality.hpp"

#include <algorithm>

namespace dvw {

namespace {

constexpr unsigned kMaxFiniteAtoms = 6;

const AlgebraView& requireSmallFinite(const Algebra& a, std::unique_ptr<AlgebraView>& holder) {
  if (a.isArithmetic() || a.atoms() > kMaxFiniteAtoms)
    throw InputError("finite duality needs an algebra with at most 6 atoms; got " + a.name());
  holder = a.view(Fragment::finite(a.atoms()));
  return *holder;
}

bool has(ElemSet s, Mask m) { return (s >> m) & 1U; }

AxiomResult cell(std::string name, bool bounded = false) {
  AxiomResult r;
  r.axiom = std::move(name);
  r.bounded = bounded;
  return r;
}

void fail(AxiomResult& r, std::vector<std::string> w) {
  if (!r.pass) return;
  r.pass = false;
  r.witness = std::move(w);
}

bool powersetType(const Algebra& a) {
  return a.kind() == Algebra::Kind::ArithPowerset ||
         (a.kind() == Algebra::Kind::Finite && a.orderProximity());
}

}  // namespace

ElemSet principalFilter(const Algebra& a, Mask c) {
  std::unique_ptr<AlgebraView> h;
  const auto& v = requireSmallFinite(a, h);
  ElemSet s = 0;
  for (Mask x = 0; x < v.size(); ++x)
    if (isSubset(c, x)) s |= ElemSet{1} << x;
  return s;
}

ElemSet twoheadUp(const Algebra& a, ElemSet s) {
  std::unique_ptr<AlgebraView> h;
  const auto& v = requireSmallFinite(a, h);
  ElemSet out = 0;
  for (Mask b = 0; b < v.size(); ++b) {
    if (!has(s, b)) continue;
    for (Mask x = 0; x < v.size(); ++x)
      if (v.precedes(b, x)) out |= ElemSet{1} << x;
  }
  return out;
}

bool isFilter(const Algebra& a, ElemSet s) {
  std::unique_ptr<AlgebraView> h;
  const auto& v = requireSmallFinite(a, h);
  if (!has(s, v.top())) return false;
  for (Mask x = 0; x < v.size(); ++x) {
    if (!has(s, x)) continue;
    for (Mask y = 0; y < v.size(); ++y) {
      if (isSubset(x, y) && !has(s, y)) return false;
      if (has(s, y) && !has(s, x & y)) return false;
    }
  }
  return true;
}

bool isRoundFilter(const Algebra& a, ElemSet s) { return isFilter(a, s) && twoheadUp(a, s) == s; }

std::vector<ElemSet> endsOf(const Algebra& a) {
  std::unique_ptr<AlgebraView> h;
  const auto& v = requireSmallFinite(a, h);
  // Every filter of a finite Boolean algebra is principal.
  std::vector<ElemSet> round;
  for (Mask c = 1; c < v.size(); ++c) {
    const ElemSet f = principalFilter(a, c);
    if (twoheadUp(a, f) == f) round.push_back(f);
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

std::uint64_t zeta(const std::vector<ElemSet>& ends, Mask a) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < ends.size(); ++i)
    if (has(ends[i], a)) out |= std::uint64_t{1} << i;
  return out;
}

int endIndex(const std::vector<ElemSet>& ends, ElemSet s) {
  for (std::size_t i = 0; i < ends.size(); ++i)
    if (ends[i] == s) return static_cast<int>(i);
  return -1;
}

ElemSet rhoStarPoint(const DVMorphism& rho, ElemSet y) {
  std::unique_ptr<AlgebraView> h;
  const auto& v = requireSmallFinite(*rho.domain(), h);
  const auto t = rho.finiteTable();
  ElemSet pre = 0;
  for (Mask a = 0; a < v.size(); ++a)
    if (has(y, t[a])) pre |= ElemSet{1} << a;
  return twoheadUp(*rho.domain(), pre);
}

bool realizedEndContains(const AlgebraView& w, Mask a, const Point& y) {
  return findBelow(w, a, [&](Mask x) { return y.below(x); }).has_value();
}

std::vector<unsigned> tarskiDual(const DVMorphism& sigma) {
  const auto verdict = isCompleteBooleanHomo(sigma);
  if (!verdict.value) throw InputError(sigma.name() + " is not a complete Boolean homomorphism");
  const auto t = sigma.finiteTable();
  const unsigned m = sigma.domain()->atoms();
  const unsigned n = sigma.codomain()->atoms();
  std::vector<unsigned> out;
  for (unsigned x = 0; x < n; ++x) {
    Mask meet = (Mask{1} << m) - 1;
    for (Mask b = 0; b < t.size(); ++b)
      if ((t[b] >> x) & 1U) meet &= b;
    if (popcount(meet) != 1) throw InputError("sigma_+ of atom " + std::to_string(x) + " is not an atom");
    out.push_back(static_cast<unsigned>(__builtin_ctzll(meet)));
  }
  return out;
}

std::vector<DVMorphism> completeHomomorphisms(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a->isArithmetic() || b->isArithmetic()) throw InputError("finite algebras expected");
  const unsigned m = a->atoms(), n = b->atoms();
  std::vector<DVMorphism> out;
  std::vector<unsigned> f(n, 0);
  if (m == 0 && n > 0) return out;
  while (true) {
    out.push_back(DVMorphism::finitePreimage(a, b, f));
    unsigned i = 0;
    while (i < n && ++f[i] == m) f[i++] = 0;
    if (i == n) break;
  }
  return out;
}

std::vector<DVMorphism> finiteDVMorphisms(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a->isArithmetic() || b->isArithmetic() || a->atoms() > 3 || b->atoms() > 3)
    throw InputError("de Vries morphism enumeration needs finite algebras with at most 3 atoms");
  const unsigned m = a->atoms(), k = b->atoms();
  const Mask topA = (Mask{1} << m) - 1, topB = (Mask{1} << k) - 1;
  const std::uint64_t choices = std::uint64_t{1} << (k * m);
  std::vector<DVMorphism> out;
  // rho(1) = 1 and rho preserves meets, so rho is fixed by the coatom images.
  for (std::uint64_t code = 0; code < choices; ++code) {
    std::vector<Mask> img(m);
    for (unsigned i = 0; i < m; ++i) img[i] = (code >> (i * k)) & topB;
    std::vector<Mask> table(std::size_t{1} << m);
    for (Mask x = 0; x <= topA; ++x) {
      Mask v = topB;
      for (unsigned i = 0; i < m; ++i)
        if (!((x >> i) & 1U)) v &= img[i];
      table[x] = v;
    }
    auto rho = DVMorphism::table(a, b, table, "rho" + std::to_string(code));
    if (checkMorphismAxioms(rho).allPass()) out.push_back(rho);
  }
  return out;
}

Extension functorE(const FinDiscrete& x) {
  auto ro = Algebra::regularOpen(x);
  auto p = Algebra::finitePowerset(x.size);
  std::vector<Mask> id(std::size_t{1} << x.size);
  for (Mask i = 0; i < id.size(); ++i) id[i] = i;
  return {DVMorphism::table(ro, p, id, "e^-1", true),
          "identity compactification of " + std::to_string(x.size) + " points"};
}

Extension functorE(const ArithCompactification& y) {
  return {DVMorphism::pullback(y), y.print()};
}

ExtMorphism functorE(unsigned n, unsigned m, const std::vector<unsigned>& f) {
  if (f.size() != n) throw InputError("f must have one value per point");
  auto roN = Algebra::regularOpen(FinDiscrete{n});
  auto roM = Algebra::regularOpen(FinDiscrete{m});
  auto pN = Algebra::finitePowerset(n);
  auto pM = Algebra::finitePowerset(m);
  return {DVMorphism::finitePreimage(roM, roN, f, "g*"),
          DVMorphism::finitePreimage(pM, pN, f, "f^-1")};
}

ExtMorphism functorE(const ArithCompactification& y, const ArithCompactification& yPrime,
                     const PiecewiseArithMap& f, const std::vector<unsigned>& assign) {
  return {DVMorphism::regularizedPreimage(y, yPrime, f, assign, "g*"), DVMorphism::preimage(f)};
}

AxiomResult checkExtMorphismSquare(const Extension& from, const Extension& to,
                                   const ExtMorphism& m, const Bounds& bounds) {
  const auto left = DVMorphism::compose(m.sigma, from.alpha);
  const auto right = DVMorphism::star(to.alpha, m.rho);
  const auto& dom = *from.alpha.domain();
  AxiomResult r = cell("square", dom.isArithmetic());
  if (!dom.isArithmetic()) {
    const auto a = left.finiteTable(), b = right.finiteTable();
    const auto v = dom.view(Fragment::finite(dom.atoms()));
    for (Mask x = 0; x < a.size(); ++x)
      if (a[x] != b[x]) {
        fail(r, {v->show(x)});
        break;
      }
    return r;
  }
  bounds.validate();
  const Fragment L = dom.levelFor(bounds);
  const auto v = dom.view(L);
  MorphismTable tl(left, L, bounds.witnessThreshold), tr(right, L, bounds.witnessThreshold);
  const Fragment &lo = tl.outputLevel(), &ro = tr.outputLevel();
  for (Mask x = 0; x < L.size() && r.pass; ++x) {
    const Mask p = tl(x), q = tr(x);
    for (unsigned n = 0; n < bounds.threshold; ++n)
      if (((p >> lo.bitOf(n)) & 1U) != ((q >> ro.bitOf(n)) & 1U)) {
        fail(r, {v->show(x), std::to_string(n)});
        break;
      }
  }
  r.note = "compared on points n < " + std::to_string(bounds.threshold);
  return r;
}

FiniteCompactification functorC(const Extension& alpha) {
  const auto& a = *alpha.alpha.domain();
  const auto& b = *alpha.alpha.codomain();
  if (a.isArithmetic() || !powersetType(b))
    throw InputError("not realizable in this universe: C needs a finite extension into a powerset");
  FiniteCompactification c;
  c.points = b.atoms();
  c.ends = endsOf(a);
  for (unsigned j = 0; j < b.atoms(); ++j) {
    const ElemSet s = rhoStarPoint(alpha.alpha, principalFilter(b, Mask{1} << j));
    const int idx = endIndex(c.ends, s);
    if (idx < 0) throw InputError("alpha_* of atom " + std::to_string(j) + " is not an end");
    c.embedding.push_back(static_cast<unsigned>(idx));
  }
  return c;
}

FinitePair functorC(const Extension& from, const Extension& to, const ExtMorphism& m) {
  FinitePair p;
  p.f = tarskiDual(m.sigma);
  const auto endsA = endsOf(*from.alpha.domain());
  const auto endsAp = endsOf(*to.alpha.domain());
  for (ElemSet y : endsAp) {
    const int idx = endIndex(endsA, rhoStarPoint(m.rho, y));
    if (idx < 0) throw InputError("rho_* does not send ends to ends");
    p.g.push_back(static_cast<unsigned>(idx));
  }
  return p;
}

AxiomReport checkExtension(const Extension& ext, const Bounds& bounds) {
  const DVMorphism& alpha = ext.alpha;
  if (!powersetType(*alpha.codomain()))
    throw InputError("extension codomain must be a powerset algebra");
  AxiomReport rep = checkMorphismAxioms(alpha, bounds);
  const auto& dom = *alpha.domain();
  const bool bd = dom.isArithmetic();
  const Fragment L = dom.levelFor(bounds);
  const auto v = dom.view(L);
  MorphismTable t(alpha, L, bounds.witnessThreshold);
  const Fragment& lo = t.outputLevel();
  const auto cod = alpha.codomain()->view(lo);
  const auto pts = cod->points();
  const Mask n = L.size();

  AxiomResult inj = cell("injective", bd);
  {
    std::vector<std::pair<Mask, Mask>> img;
    img.reserve(n);
    for (Mask a = 0; a < n; ++a) img.emplace_back(t(a), a);
    std::sort(img.begin(), img.end());
    for (std::size_t i = 1; i < img.size(); ++i)
      if (img[i].first == img[i - 1].first) {
        const Mask x = std::min(img[i].second, img[i - 1].second);
        const Mask y = std::max(img[i].second, img[i - 1].second);
        fail(inj, {v->show(x), v->show(y)});
        break;
      }
  }
  rep.results.push_back(inj);

  AxiomResult dens = cell("atom-meet-density", bd);
  for (const auto& x : pts) {
    Mask meet = lo.top();
    for (Mask a = 0; a < n; ++a)
      if (x.below(t(a))) meet &= t(a);
    if (meet != x.support) {
      fail(dens, {x.label, cod->show(meet)});
      break;
    }
  }
  rep.results.push_back(dens);

  AxiomResult sep = cell("separation", bd);
  {
    // separated[i] collects the points j with some alpha(a) containing i but not j.
    std::vector<std::uint64_t> separated(pts.size(), 0);
    for (Mask a = 0; a < n; ++a) {
      const Mask img = t(a);
      std::uint64_t outside = 0;
      for (std::size_t j = 0; j < pts.size(); ++j)
        if (!pts[j].below(img)) outside |= std::uint64_t{1} << j;
      for (std::size_t i = 0; i < pts.size(); ++i)
        if (pts[i].below(img)) separated[i] |= outside;
    }
    for (std::size_t i = 0; i < pts.size() && sep.pass; ++i)
      for (std::size_t j = 0; j < pts.size(); ++j)
        if (i != j && !((separated[i] >> j) & 1U)) {
          fail(sep, {pts[i].label, pts[j].label});
          break;
        }
  }
  rep.results.push_back(sep);

  AxiomResult agree = cell("density-iff-separation", bd);
  if (dens.pass != sep.pass)
    fail(agree, {dens.pass ? "density" : "no density", sep.pass ? "separation" : "no separation"});
  rep.results.push_back(agree);

  AxiomResult coatom = cell("coatom-join", bd);
  for (const auto& x : pts) {
    Mask join = 0;
    for (Mask a = 0; a < n; ++a)
      if (x.below(t(a))) join |= t(v->neg(a));
    const Mask want = lo.top() & ~x.support;
    if (join != want) {
      fail(coatom, {x.label, cod->show(join)});
      break;
    }
  }
  rep.results.push_back(coatom);
  if (coatom.pass != dens.pass) {
    AxiomResult conv = cell("density-forms-agree", bd);
    fail(conv, {"join-meet " + std::string(dens.pass ? "holds" : "fails"),
                "meet-join " + std::string(coatom.pass ? "holds" : "fails")});
    rep.results.push_back(conv);
  }
  return rep;
}

AxiomReport lemma53Audit(const Extension& ext, const Bounds& bounds, unsigned maxPoint) {
  const DVMorphism& alpha = ext.alpha;
  const auto& dom = *alpha.domain();
  AxiomReport rep;
  rep.subject = alpha.name() + " : " + dom.name() + " -> " + alpha.codomain()->name();
  rep.mode = dom.isArithmetic() ? "fragment" : "exhaustive";

  if (!dom.isArithmetic()) {
    const auto& cod = *alpha.codomain();
    if (!powersetType(cod)) throw InputError("extension codomain must be a powerset algebra");
    const auto ends = endsOf(dom);
    const auto t = alpha.finiteTable();
    const auto v = dom.view(Fragment::finite(dom.atoms()));
    rep.level = Fragment::finite(dom.atoms()).describe();
    AxiomResult r = cell("points");
    for (unsigned b = 0; b < cod.atoms() && r.pass; ++b) {
      const ElemSet end = rhoStarPoint(alpha, principalFilter(cod, Mask{1} << b));
      const int idx = endIndex(ends, end);
      for (Mask a = 0; a < t.size(); ++a) {
        const bool c1 = (t[a] >> b) & 1U;
        const bool c2 = has(end, a);
        const bool c3 = idx >= 0 && ((zeta(ends, a) >> idx) & 1U);
        if (c1 != c2 || c2 != c3) {
          fail(r, {v->show(a), std::to_string(b), c1 ? "1" : "0", c2 ? "1" : "0", c3 ? "1" : "0"});
          break;
        }
      }
    }
    rep.results.push_back(r);
    return rep;
  }

  const auto* space = dom.space();
  if (!space) throw InputError("the atom audit needs RO of a registered compactification");
  bounds.validate();
  const Fragment L = dom.levelFor(bounds);
  const Fragment W = dom.witnessLevel(L, std::max(bounds.witnessThreshold, maxPoint + 1));
  rep.level = L.describe();
  rep.witnessLevel = W.describe();
  const auto v = dom.view(L);
  const auto vw = dom.view(W);
  MorphismTable tl(alpha, L, W.threshold()), tw(alpha, W, W.threshold());
  const Fragment &lo = tl.outputLevel(), &wo = tw.outputLevel();

  AxiomResult r = cell("points", true);
  for (Mask a = 0; a < L.size() && r.pass; ++a) {
    const Mask aw = L.refine(a, W);
    const Mask j = vw->joinBelow(aw);
    const bool jOk = vw->precedes(j, aw);
    for (unsigned nn = 0; nn <= maxPoint; ++nn) {
      const bool c1 = (tl(a) >> lo.bitOf(nn)) & 1U;
      bool c2 = jOk && ((tw(j) >> wo.bitOf(nn)) & 1U);
      if (!c2)
        c2 = findBelow(*vw, aw, [&](Mask x) { return (tw(x) >> wo.bitOf(nn)) & 1U; }).has_value();
      const bool c3 = (a >> L.bitOf(nn)) & 1U;  // e(n) lies in the regular open set a
      if (c1 != c2 || c2 != c3) {
        fail(r, {v->show(a), std::to_string(nn), c1 ? "1" : "0", c2 ? "1" : "0", c3 ? "1" : "0"});
        break;
      }
    }
  }
  r.note = "points 0.." + std::to_string(maxPoint);
  rep.results.push_back(r);

  AxiomResult inf = cell("infinity-ends", true);
  const auto ptsL = v->points();
  const auto ptsW = vw->points();
  for (Mask a = 0; a < L.size() && inf.pass; ++a) {
    const Mask aw = L.refine(a, W);
    for (std::size_t i = 0; i < ptsL.size(); ++i) {
      if (!ptsL[i].atInfinity) continue;
      const Point* yw = nullptr;
      for (const auto& p : ptsW)
        if (p.atInfinity && p.label == ptsL[i].label) yw = &p;
      const bool inU = ptsL[i].below(a);
      const bool round = realizedEndContains(*vw, aw, *yw);
      if (inU != round) {
        fail(inf, {v->show(a), ptsL[i].label, inU ? "1" : "0", round ? "1" : "0"});
        break;
      }
    }
  }
  inf.note = "ends realized by points at infinity";
  rep.results.push_back(inf);
  return rep;
}

AxiomReport roundTripAudit(unsigned n, unsigned m, const std::vector<unsigned>& f) {
  if (f.size() != n) throw InputError("f must have one value per point");
  for (unsigned x : f)
    if (x >= m) throw InputError("f value out of range");
  const Extension ex = functorE(FinDiscrete{n});
  const Extension exp = functorE(FinDiscrete{m});
  const ExtMorphism em = functorE(n, m, f);
  const FiniteCompactification ce = functorC(ex), cep = functorC(exp);
  const FinitePair cef = functorC(exp, ex, em);
  const auto& g = f;  // the compactifications are identities

  const auto& roX = *ex.alpha.domain();
  const auto& roXp = *exp.alpha.domain();
  auto xi = [&](const Algebra& ro, const std::vector<ElemSet>& ends, unsigned y) {
    return endIndex(ends, principalFilter(ro, Mask{1} << y));
  };

  AxiomReport rep;
  rep.subject = "identity compactifications of " + std::to_string(n) + " and " +
                std::to_string(m) + " points";
  rep.level = "P(" + std::to_string(n) + "), P(" + std::to_string(m) + ")";
  rep.mode = "exhaustive";

  AxiomResult front = cell("front");
  for (unsigned x = 0; x < n; ++x)
    if (f[x] != g[x]) fail(front, {std::to_string(x)});
  AxiomResult back = cell("back");
  for (unsigned x = 0; x < n; ++x)
    if (cep.embedding[cef.f[x]] != cef.g[ce.embedding[x]]) fail(back, {std::to_string(x)});
  AxiomResult top = cell("top");
  for (unsigned x = 0; x < n; ++x)
    if (static_cast<int>(ce.embedding[x]) != xi(roX, ce.ends, x)) fail(top, {std::to_string(x)});
  AxiomResult bottom = cell("bottom");
  for (unsigned x = 0; x < m; ++x)
    if (static_cast<int>(cep.embedding[x]) != xi(roXp, cep.ends, x)) fail(bottom, {std::to_string(x)});
  AxiomResult left = cell("left");
  for (unsigned x = 0; x < n; ++x)
    if (cef.f[x] != f[x]) fail(left, {std::to_string(x)});
  AxiomResult right = cell("right");
  for (unsigned y = 0; y < n; ++y) {
    const int lhs = static_cast<int>(cef.g[xi(roX, ce.ends, y)]);
    if (lhs != xi(roXp, cep.ends, g[y])) fail(right, {std::to_string(y)});
  }

  auto qSquare = [&](const Extension& e, const FiniteCompactification& c, const char* name) {
    AxiomResult q = cell(name);
    const auto t = e.alpha.finiteTable();
    for (Mask b = 0; b < t.size(); ++b) {
      Mask pre = 0;  // alpha_*^{-1}(zeta(b))
      const auto z = zeta(c.ends, b);
      for (unsigned x = 0; x < c.points; ++x)
        if ((z >> c.embedding[x]) & 1U) pre |= Mask{1} << x;
      if (pre != t[b]) {
        fail(q, {showAtoms(b, c.points)});
        break;
      }
    }
    return q;
  };

  rep.results = {front, back, top, bottom, left, right, qSquare(ex, ce, "q_alpha"),
                 qSquare(exp, cep, "q_alpha'")};
  AxiomResult sq = checkExtMorphismSquare(exp, ex, em);
  sq.axiom = "E(f,g) square";
  rep.results.push_back(sq);
  return rep;
}

AxiomReport roundTripAudit(unsigned n) {
  std::vector<unsigned> id(n);
  for (unsigned i = 0; i < n; ++i) id[i] = i;
  return roundTripAudit(n, n, id);
}

AxiomReport roundTripAudit(const ArithCompactification& y, const Bounds& bounds) {
  bounds.validate();
  const Extension ext = functorE(y);
  const auto& dom = *ext.alpha.domain();
  const Fragment L = dom.levelFor(bounds);
  const Fragment W = dom.witnessLevelFor(bounds);
  const auto v = dom.view(L);
  const auto vw = dom.view(W);
  MorphismTable tl(ext.alpha, L, bounds.witnessThreshold), tw(ext.alpha, W, bounds.witnessThreshold);
  const Fragment &lo = tl.outputLevel(), &wo = tw.outputLevel();

  AxiomReport rep;
  rep.subject = "E(" + y.print() + ")";
  rep.level = L.describe();
  rep.witnessLevel = W.describe();
  rep.mode = "fragment";

  AxiomResult q = cell("q_alpha", true);
  AxiomResult p = cell("p_e", true);
  for (Mask b = 0; b < L.size() && q.pass && p.pass; ++b) {
    const Mask bw = L.refine(b, W);
    for (unsigned nn = 0; nn < W.threshold(); ++nn) {
      // theta(alpha(b)) against alpha_*^{-1}(zeta(b)) at the atom {n}
      const bool theta = (tl(b) >> lo.bitOf(nn)) & 1U;
      const bool pulled = findBelow(*vw, bw, [&](Mask x) {
                            return (tw(x) >> wo.bitOf(nn)) & 1U;
                          }).has_value();
      if (theta != pulled) fail(q, {v->show(b), std::to_string(nn)});
      // (e^{-1})_*(eta(n)) against xi(e(n)) at U = b
      const bool inU = (b >> L.bitOf(nn)) & 1U;
      if (inU != pulled) fail(p, {v->show(b), std::to_string(nn)});
    }
  }
  q.note = p.note = "atoms {n}, n < " + std::to_string(W.threshold());
  rep.results = {q, p};
  return rep;
}

}  // namespace dvw
