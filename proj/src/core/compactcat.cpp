#include "compactcat.hpp"

#include <algorithm>
#include <numeric>

namespace dvw {

namespace {

AxiomResult entry(std::string name, bool bounded = false) {
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

unsigned commonPeriod(const ArithCompactification& y, const ArithCompactification& yp) {
  return static_cast<unsigned>(lcm64(y.period(), yp.period()));
}

}  // namespace

std::string describeInfinities(const ArithCompactification& y, const ArithCompactification& yp,
                               const std::vector<unsigned>& assign) {
  std::string out = "[";
  for (unsigned i = 0; i < assign.size(); ++i) {
    if (i) out += ", ";
    out += y.labels()[i] + " -> " + yp.labels()[assign[i]];
  }
  return out + "]";
}

AxiomReport checkCMorphism(const ArithCompactification& y, const ArithCompactification& yp,
                           const CMorphism& m) {
  AxiomReport rep;
  rep.subject = "(f, g) : " + y.print() + " -> " + yp.print();
  rep.level = "structural";
  rep.mode = "exact";
  if (m.gInf.size() != y.points())
    throw InputError("g needs one target for each of the " + std::to_string(y.points()) +
                     " infinity points");
  for (unsigned j : m.gInf)
    if (j >= yp.points()) throw InputError("infinity target out of range");

  // Every map here is injective on each residue class past its threshold, so
  // g is finite-to-one on N; continuity at inf_i reduces to N_i landing in
  // N'_j up to finitely many points.
  AxiomResult cont = entry("continuity");
  for (unsigned i = 0; i < y.points(); ++i) {
    const ArithSet stray = difference(y.region(i), preimage(m.gBase, yp.region(m.gInf[i])));
    if (!stray.isFinite()) {
      fail(cont, {y.labels()[i], yp.labels()[m.gInf[i]], stray.print()});
      break;
    }
  }
  rep.results.push_back(cont);

  AxiomResult comm = entry("commutation");
  if (auto n = m.f.firstDifference(m.gBase))
    fail(comm, {std::to_string(*n), std::to_string(m.f(*n)), std::to_string(m.gBase(*n))});
  rep.results.push_back(comm);
  return rep;
}

IsoVerdict isIsoInC(const ArithCompactification& y, const ArithCompactification& yp,
                    const CMorphism& m) {
  IsoVerdict v;
  if (!checkCMorphism(y, yp, m).allPass()) {
    v.reason = "not a morphism";
    return v;
  }
  const auto bf = checkBijection(m.f);
  if (!bf.bijective) {
    v.reason = "f is not a bijection: " + bf.reason;
    return v;
  }
  const auto bg = checkBijection(m.gBase);
  if (!bg.bijective) {
    v.reason = "g is not a bijection on N: " + bg.reason;
    return v;
  }
  if (y.points() != yp.points()) {
    v.reason = "different numbers of points at infinity";
    return v;
  }
  std::vector<unsigned> inv(yp.points(), ~0U);
  for (unsigned i = 0; i < m.gInf.size(); ++i) {
    if (inv[m.gInf[i]] != ~0U) {
      v.reason = "g identifies " + y.labels()[inv[m.gInf[i]]] + " and " + y.labels()[i];
      return v;
    }
    inv[m.gInf[i]] = i;
  }
  CMorphism back{*bf.inverse, *bg.inverse, inv};
  if (!checkCMorphism(yp, y, back).allPass()) {
    v.reason = "inverse of g is not continuous";
    return v;
  }
  v.iso = true;
  v.inverse = back;
  return v;
}

std::string describePartition(const ArithCompactification& y, unsigned q) {
  std::vector<std::vector<unsigned>> blocks;
  for (unsigned i = 0; i < y.points(); ++i) blocks.push_back(y.liftedBlock(i, q));
  std::sort(blocks.begin(), blocks.end());
  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) out += "/";
    out += "{";
    for (std::size_t j = 0; j < blocks[i].size(); ++j) {
      if (j) out += ",";
      out += std::to_string(blocks[i][j]);
    }
    out += "}";
  }
  return out;
}

EquivVerdict isEquivalent(const ArithCompactification& y, const ArithCompactification& yp) {
  EquivVerdict v;
  const unsigned q = commonPeriod(y, yp);
  v.commonPeriod = q;
  v.left = describePartition(y, q);
  v.right = describePartition(yp, q);
  for (unsigned r1 = 0; r1 < q && !v.separating; ++r1)
    for (unsigned r2 = r1 + 1; r2 < q; ++r2)
      if ((y.blockOf(r1) == y.blockOf(r2)) != (yp.blockOf(r1) == yp.blockOf(r2))) {
        v.separating = {r1, r2};
        break;
      }
  v.equivalent = !v.separating;
  if (v.equivalent) {
    v.matching.assign(y.points(), 0);
    for (unsigned r = 0; r < q; ++r) v.matching[y.blockOf(r)] = yp.blockOf(r);
  }
  return v;
}

LeqVerdict leqClassical(const ArithCompactification& y, const ArithCompactification& yp) {
  LeqVerdict v;
  const unsigned q = commonPeriod(y, yp);
  for (unsigned r1 = 0; r1 < q && !v.witness; ++r1)
    for (unsigned r2 = r1 + 1; r2 < q; ++r2)
      if (yp.blockOf(r1) == yp.blockOf(r2) && y.blockOf(r1) != y.blockOf(r2)) {
        v.witness = {r1, r2};
        break;
      }
  v.leq = !v.witness;
  if (v.leq) {
    v.collapse.assign(yp.points(), 0);
    for (unsigned r = 0; r < q; ++r) v.collapse[yp.blockOf(r)] = y.blockOf(r);
  }
  return v;
}

std::vector<ArithCompactification> partitionCompactifications(unsigned period) {
  if (period == 0 || period > 8) throw InputError("partition enumeration needs 1 <= P <= 8");
  std::vector<ArithCompactification> out;
  std::vector<unsigned> rgs(period, 0);
  while (true) {
    const unsigned k = *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<std::vector<unsigned>> blocks(k);
    for (unsigned r = 0; r < period; ++r) blocks[rgs[r]].push_back(r);
    std::vector<std::string> labels;
    for (const auto& b : blocks) {
      std::string l = "inf_";
      for (unsigned r : b) l += std::to_string(r);
      labels.push_back(l);
    }
    out.emplace_back(period, blocks, labels);
    // next restricted growth string
    int i = static_cast<int>(period) - 1;
    for (; i > 0; --i) {
      const unsigned mx = *std::max_element(rgs.begin(), rgs.begin() + i);
      if (rgs[i] <= mx) {
        ++rgs[i];
        std::fill(rgs.begin() + i + 1, rgs.end(), 0);
        break;
      }
    }
    if (i <= 0) break;
  }
  return out;
}

nlohmann::json Example33::toJson() const {
  nlohmann::json j;
  j["X"] = "N";
  j["Y"] = y.print();
  j["Y_prime"] = yp.print();
  j["f"] = morphism.f.print();
  j["g"] = {{"on_N", morphism.gBase.print()},
            {"infinities", describeInfinities(y, yp, morphism.gInf)}};
  j["A"] = a.print();
  j["closure_Y"] = printYSubset(y, closureY);
  j["closure_Y_prime"] = printYSubset(yp, closureYp);
  j["checkCMorphism"] = check.toJson();
  nlohmann::json iv{{"value", iso.iso}};
  if (iso.inverse) {
    iv["inverse_f"] = iso.inverse->f.print();
    iv["inverse_g_infinities"] = describeInfinities(yp, y, iso.inverse->gInf);
  }
  if (!iso.reason.empty()) iv["reason"] = iso.reason;
  j["isIsoInC"] = iv;
  nlohmann::json ev{{"value", equivalence.equivalent},
                    {"common_period", equivalence.commonPeriod},
                    {"partition_Y", equivalence.left},
                    {"partition_Y_prime", equivalence.right}};
  if (equivalence.separating)
    ev["separating_residues"] = {equivalence.separating->first, equivalence.separating->second};
  j["isEquivalent"] = ev;
  j["verdicts"] = {check.allPass() ? "pass" : "fail", iso.iso, equivalence.equivalent};
  return j;
}

Example33 example33() {
  const auto y = ArithCompactification::parity();
  const auto yp =
      ArithCompactification::parse("compactify N period 4 blocks [{0,3} -> inf_1, {1,2} -> inf_2]");
  const auto f = PiecewiseArithMap::parse("affine modulus 4 pieces [n, n, n+1, n-1] from 0 table []");
  CMorphism m{f, f, {0, 1}};
  const ArithSet a = unite(ArithSet::progression(4, 0), ArithSet::progression(4, 3));
  return Example33{y,
                   yp,
                   m,
                   a,
                   closure(y, YSubset{a, 0}),
                   closure(yp, YSubset{a, 0}),
                   checkCMorphism(y, yp, m),
                   isIsoInC(y, yp, m),
                   isEquivalent(y, yp)};
}

namespace {

// Images of an extension on its fragment, refined to a common level.
std::vector<Mask> imagesAt(const Extension& e, const Bounds& bounds, const Fragment* common,
                           Fragment* outLevel) {
  const auto& dom = *e.alpha.domain();
  const Fragment L = dom.levelFor(bounds);
  MorphismTable t(e.alpha, L, bounds.witnessThreshold);
  if (outLevel) *outLevel = t.outputLevel();
  std::vector<Mask> out;
  for (Mask a = 0; a < L.size(); ++a) {
    const Mask m = t(a);
    out.push_back(common && !t.outputLevel().isFinite() ? t.outputLevel().refine(m, *common) : m);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

CompatVerdict compatible(const Extension& alpha, const Extension& gamma, const Bounds& bounds) {
  if (alpha.alpha.codomain()->isArithmetic() != gamma.alpha.codomain()->isArithmetic() ||
      (!alpha.alpha.codomain()->isArithmetic() &&
       alpha.alpha.codomain()->atoms() != gamma.alpha.codomain()->atoms()))
    throw InputError("compatibility needs extensions into the same algebra");
  Fragment la, lg;
  imagesAt(alpha, bounds, nullptr, &la);
  imagesAt(gamma, bounds, nullptr, &lg);
  const Fragment common = la.isFinite() ? la : join(la, lg);
  const auto ia = imagesAt(alpha, bounds, &common, nullptr);
  const auto ig = imagesAt(gamma, bounds, &common, nullptr);
  CompatVerdict v;
  v.level = common.describe();
  v.compatible = ia == ig;
  if (!v.compatible) {
    std::vector<Mask> diff;
    std::set_symmetric_difference(ia.begin(), ia.end(), ig.begin(), ig.end(),
                                  std::back_inserter(diff));
    const Mask w = diff.front();
    const bool inAlpha = std::binary_search(ia.begin(), ia.end(), w);
    const std::string shown = common.isFinite() ? showAtoms(w, common.width()) : common.decode(w).print();
    v.witness = {shown, inAlpha ? "only in the image of alpha" : "only in the image of gamma"};
  }
  return v;
}

namespace {

// alpha_*^{-1}(zeta(a)) for every a on the fragment, as sets of atoms/points.
std::vector<std::uint64_t> basisFamily(const Extension& e, const Bounds& bounds) {
  const auto& dom = *e.alpha.domain();
  std::vector<std::uint64_t> out;
  if (!dom.isArithmetic()) {
    const auto c = functorC(e);
    for (Mask a = 0; a < (Mask{1} << dom.atoms()); ++a) {
      const auto z = zeta(c.ends, a);
      std::uint64_t s = 0;
      for (unsigned x = 0; x < c.points; ++x)
        if ((z >> c.embedding[x]) & 1U) s |= std::uint64_t{1} << x;
      out.push_back(s);
    }
  } else {
    const Fragment L = dom.levelFor(bounds);
    const Fragment W = dom.witnessLevelFor(bounds);
    if (W.threshold() > 64) throw InputError("witness bound T' must be at most 64");
    const auto vw = dom.view(W);
    MorphismTable tw(e.alpha, W, bounds.witnessThreshold);
    const Fragment& wo = tw.outputLevel();
    for (Mask a = 0; a < L.size(); ++a) {
      const Mask aw = L.refine(a, W);
      std::uint64_t s = 0;
      for (unsigned n = 0; n < W.threshold(); ++n)
        if (findBelow(*vw, aw, [&](Mask x) { return (tw(x) >> wo.bitOf(n)) & 1U; }))
          s |= std::uint64_t{1} << n;
      out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

AxiomReport lemma62Audit(const Extension& alpha, const Extension& gamma, const Bounds& bounds) {
  const CompatVerdict cv = compatible(alpha, gamma, bounds);
  const auto ba = basisFamily(alpha, bounds);
  const auto bg = basisFamily(gamma, bounds);
  AxiomReport rep;
  rep.subject = alpha.alpha.name() + " vs " + gamma.alpha.name();
  rep.level = cv.level;
  rep.mode = alpha.alpha.domain()->isArithmetic() ? "fragment" : "exhaustive";
  const bool equal = ba == bg;
  AxiomResult agree = entry("bases-equal-iff-compatible", alpha.alpha.domain()->isArithmetic());
  if (equal != cv.compatible)
    fail(agree, {equal ? "bases equal" : "bases differ", cv.compatible ? "compatible" : "incompatible"});
  rep.results.push_back(agree);
  rep.data["compatible"] = cv.compatible;
  rep.data["bases_equal"] = equal;
  if (!cv.witness.empty()) rep.data["image_witness"] = cv.witness;
  if (!equal) {
    std::vector<std::uint64_t> diff;
    std::set_symmetric_difference(ba.begin(), ba.end(), bg.begin(), bg.end(),
                                  std::back_inserter(diff));
    std::string pts = "{";
    bool first = true;
    for (unsigned i = 0; i < 64; ++i)
      if ((diff.front() >> i) & 1U) {
        pts += (first ? "" : ",") + std::to_string(i);
        first = false;
      }
    rep.data["basis_witness"] = pts + "}";
  }
  return rep;
}

namespace {

// alpha * delta against gamma: exact on finite domains, on points n < T otherwise.
bool starMatches(const DVMorphism& star, const DVMorphism& gamma, const Bounds& bounds) {
  const auto& dom = *gamma.domain();
  if (!dom.isArithmetic()) return star.finiteTable() == gamma.finiteTable();
  const Fragment L = dom.levelFor(bounds);
  MorphismTable ts(star, L, bounds.witnessThreshold), tg(gamma, L, bounds.witnessThreshold);
  const Fragment &ls = ts.outputLevel(), &lg = tg.outputLevel();
  for (Mask c = 0; c < L.size(); ++c)
    for (unsigned n = 0; n < bounds.threshold; ++n)
      if (((ts(c) >> ls.bitOf(n)) & 1U) != ((tg(c) >> lg.bitOf(n)) & 1U)) return false;
  return true;
}

}  // namespace

AxiomReport isMaximalRelative(const Extension& alpha, const std::vector<Extension>& family,
                              const Bounds& bounds) {
  const auto& adom = alpha.alpha.domain();
  AxiomReport rep;
  rep.subject = alpha.source;
  rep.mode = adom->isArithmetic() ? "fragment" : "exhaustive";
  rep.level = adom->isArithmetic() ? adom->levelFor(bounds).describe() : "finite";
  auto gammas = nlohmann::json::array();
  bool maximal = true;
  std::uint64_t searched = 0;
  for (std::size_t k = 0; k < family.size(); ++k) {
    const Extension& gamma = family[k];
    nlohmann::json g{{"gamma", gamma.source}};
    const CompatVerdict cv = compatible(alpha, gamma, bounds);
    g["compatible"] = cv.compatible;
    if (!cv.compatible) {
      gammas.push_back(g);
      continue;
    }
    std::optional<std::string> found;
    std::uint64_t tried = 0;
    if (adom->isArithmetic()) {
      const auto* ya = adom->space();
      const auto* yc = gamma.alpha.domain()->space();
      if (!ya || !yc) throw InputError("maximality search needs RO algebras of registered spaces");
      std::vector<unsigned> phi(ya->points(), 0);
      while (!found) {
        ++tried;
        const auto delta =
            DVMorphism::regularizedPreimage(*ya, *yc, PiecewiseArithMap::identity(), phi, "delta");
        if (checkMorphismAxioms(delta, bounds).allPass() &&
            starMatches(DVMorphism::star(alpha.alpha, delta), gamma.alpha, bounds))
          found = "g* along id_N with " + describeInfinities(*ya, *yc, phi);
        unsigned i = static_cast<unsigned>(phi.size());
        while (i > 0 && ++phi[i - 1] == yc->points()) phi[--i] = 0;
        if (i == 0) break;
      }
    } else {
      for (const auto& delta : finiteDVMorphisms(gamma.alpha.domain(), adom)) {
        ++tried;
        if (starMatches(DVMorphism::star(alpha.alpha, delta), gamma.alpha, bounds)) {
          found = "table " + nlohmann::json(delta.finiteTable()).dump();
          break;
        }
      }
    }
    searched += tried;
    g["candidates_tried"] = tried;
    if (found) {
      g["delta"] = *found;
    } else {
      g["delta"] = nullptr;
      maximal = false;
    }
    gammas.push_back(g);
  }
  AxiomResult done = entry("search-complete", adom->isArithmetic());
  rep.results.push_back(done);
  rep.data["family"] = gammas;
  rep.data["maximal"] = maximal;
  rep.data["candidates_tried"] = searched;
  rep.data["candidate_space"] =
      adom->isArithmetic()
          ? "regularized preimages along the identity of N, every infinity assignment"
          : "all de Vries morphisms between the finite algebras";
  rep.data["claim"] = "relative to the listed family only";
  return rep;
}

namespace {

// Bijection candidates n -> n + offset[n mod m] past a threshold, with the
// values left over assigned in increasing order below it.
std::optional<PiecewiseArithMap> shiftCandidate(unsigned m, const std::vector<std::int64_t>& off) {
  std::int64_t t = 0;
  for (auto o : off) t = std::max(t, -o);
  // Round up so that every class starts at or after t.
  const std::uint64_t thr = static_cast<std::uint64_t>(t);
  std::int64_t maxOff = 0;
  for (auto o : off) maxOff = std::max(maxOff, std::abs(o));
  const std::uint64_t bound = thr + 2 * m + static_cast<std::uint64_t>(maxOff) + 1;
  std::vector<std::uint64_t> missing;
  for (std::uint64_t v = 0; v < bound; ++v) {
    bool hit = false;
    for (unsigned r = 0; r < m && !hit; ++r) {
      const std::int64_t n = static_cast<std::int64_t>(v) - off[r];
      hit = n >= static_cast<std::int64_t>(thr) && static_cast<std::uint64_t>(n) % m == r;
    }
    if (!hit) missing.push_back(v);
  }
  if (missing.size() != thr) return std::nullopt;
  std::vector<AffinePiece> pieces;
  for (auto o : off) pieces.push_back({1, o});
  return PiecewiseArithMap::make(m, pieces, thr, missing);
}

}  // namespace

AxiomReport theorem34Audit(const ArithCompactification& e, unsigned period, const Bounds& bounds) {
  if (period % e.period() != 0)
    throw InputError("universe period " + std::to_string(period) + " is not a multiple of " +
                     std::to_string(e.period()));
  const auto s = ArithCompactification::singletons(period);
  AxiomReport rep;
  rep.subject = e.print();
  rep.level = "period " + std::to_string(period);
  rep.mode = "bounded search";

  std::vector<Extension> family;
  for (const auto& p : partitionCompactifications(period)) family.push_back(functorE(p));
  const AxiomReport maxRep = isMaximalRelative(functorE(e), family, bounds);
  const bool maximal = maxRep.data["maximal"].get<bool>();

  bool iso = false;
  std::uint64_t tried = 0;
  std::string isoWitness;
  if (e.points() == s.points()) {
    for (unsigned m = 1; m <= period && !iso; ++m) {
      std::vector<std::int64_t> off(m, -static_cast<std::int64_t>(period));
      while (!iso) {
        if (auto f = shiftCandidate(m, off); f && checkBijection(*f).bijective) {
          std::vector<unsigned> phi(e.points());
          std::iota(phi.begin(), phi.end(), 0U);
          do {
            ++tried;
            if (isIsoInC(e, s, CMorphism{*f, *f, phi}).iso) {
              iso = true;
              isoWitness = f->print() + " with " + describeInfinities(e, s, phi);
              break;
            }
          } while (std::next_permutation(phi.begin(), phi.end()));
        }
        unsigned i = m;
        while (i > 0 && ++off[i - 1] > static_cast<std::int64_t>(period))
          off[--i] = -static_cast<std::int64_t>(period);
        if (i == 0) break;
      }
    }
  }
  const bool equivalent = isEquivalent(e, s).equivalent;

  AxiomResult impl = entry("iso-implies-equivalent", true);
  if (iso && !equivalent) fail(impl, {isoWitness});
  rep.results.push_back(impl);
  AxiomResult agree = entry("conditions-agree", true);
  if (maximal != iso || iso != equivalent)
    fail(agree, {std::string("maximal=") + (maximal ? "true" : "false"),
                 std::string("isomorphic=") + (iso ? "true" : "false"),
                 std::string("equivalent=") + (equivalent ? "true" : "false")});
  rep.results.push_back(agree);

  rep.data["relative_stone_cech"] = s.print();
  rep.data["relative_stone_cech_note"] =
      "singleton partition at the universe period; an extrapolation, not beta N";
  rep.data["maximal"] = maximal;
  rep.data["isomorphic"] = iso;
  rep.data["equivalent"] = equivalent;
  if (iso) rep.data["isomorphism"] = isoWitness;
  rep.data["iso_candidates_tried"] = tried;
  rep.data["iso_search_space"] = "modulus <= " + std::to_string(period) + ", offsets in [-" +
                                 std::to_string(period) + ", " + std::to_string(period) +
                                 "], scale 1, order-preserving table below the threshold";
  rep.data["maximality"] = maxRep.data;
  rep.data["bounds"] = {bounds.threshold, bounds.period, bounds.witnessThreshold};
  return rep;
}

AxiomReport theorem34Audit(unsigned points) {
  if (points == 0 || points > 3) throw InputError("finite audit supports 1 to 3 points");
  AxiomReport rep;
  rep.subject = "discrete space of " + std::to_string(points) + " points";
  rep.level = "P(" + std::to_string(points) + ")";
  rep.mode = "exhaustive";
  const Extension e = functorE(FinDiscrete{points});
  const AxiomReport maxRep = isMaximalRelative(e, {e});
  const bool maximal = maxRep.data["maximal"].get<bool>();
  // beta X = X: the identity is both the isomorphism and the equivalence.
  const auto c = functorC(e);
  bool identity = c.ends.size() == points;
  for (unsigned x = 0; x < points && identity; ++x)
    identity = c.embedding[x] == x;
  AxiomResult beta = entry("beta-X-equals-X");
  if (!identity) fail(beta, {"C(E(id)) is not the identity"});
  rep.results.push_back(beta);
  AxiomResult agree = entry("conditions-agree");
  if (!maximal || !identity) fail(agree, {maximal ? "maximal" : "not maximal"});
  rep.results.push_back(agree);
  rep.data["maximal"] = maximal;
  rep.data["isomorphic"] = identity;
  rep.data["equivalent"] = identity;
  return rep;
}

}  // namespace dvw
