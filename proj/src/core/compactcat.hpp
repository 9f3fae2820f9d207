#pragma once

// The category of compactifications on the arithmetic universe: morphisms
// (f, g), isomorphisms, classical equivalence and order, the worked example,
// compatibility and relative maximality of extensions.
//
// "Relative Stone-Cech" below is the singleton-partition compactification at
// a fixed period P. It is the largest compactification within the period-P
// universe only; beta N itself is not representable.

#include <optional>
#include <string>
#include <vector>

#include "duality.hpp"

namespace dvw {

/// (f, g) with g = gBase on N and g(inf_i) = inf'_{gInf[i]}.
struct CMorphism {
  PiecewiseArithMap f;
  PiecewiseArithMap gBase;
  std::vector<unsigned> gInf;
};

std::string describeInfinities(const ArithCompactification& y, const ArithCompactification& yp,
                               const std::vector<unsigned>& assign);

/// Continuity of g at each infinity point and commutation g o e = e' o f.
AxiomReport checkCMorphism(const ArithCompactification& y, const ArithCompactification& yp,
                           const CMorphism& m);

struct IsoVerdict {
  bool iso = false;
  std::optional<CMorphism> inverse;
  std::string reason;
};
IsoVerdict isIsoInC(const ArithCompactification& y, const ArithCompactification& yp,
                    const CMorphism& m);

/// "{0,2}/{1,3}": the blocks of y lifted to period q.
std::string describePartition(const ArithCompactification& y, unsigned q);

struct EquivVerdict {
  bool equivalent = false;
  unsigned commonPeriod = 1;
  std::string left, right;
  std::vector<unsigned> matching;  // infinity of y -> infinity of yp
  std::optional<std::pair<unsigned, unsigned>> separating;
};
/// Equal partitions at the common period.
EquivVerdict isEquivalent(const ArithCompactification& y, const ArithCompactification& yp);

struct LeqVerdict {
  bool leq = false;
  std::vector<unsigned> collapse;  // infinity of yp -> infinity of y
  std::optional<std::pair<unsigned, unsigned>> witness;
};
/// y <= yp: every block of yp lies inside a block of y at the common period.
LeqVerdict leqClassical(const ArithCompactification& y, const ArithCompactification& yp);

/// All set partitions of Z_P as compactifications, in restricted-growth order.
std::vector<ArithCompactification> partitionCompactifications(unsigned period);

struct Example33 {
  ArithCompactification y, yp;
  CMorphism morphism;
  ArithSet a;
  YSubset closureY, closureYp;
  AxiomReport check;
  IsoVerdict iso;
  EquivVerdict equivalence;

  nlohmann::json toJson() const;
};
Example33 example33();

struct CompatVerdict {
  bool compatible = false;
  std::string level;
  std::vector<std::string> witness;
};
CompatVerdict compatible(const Extension& alpha, const Extension& gamma, const Bounds& bounds = {});

/// The bases alpha_*^{-1}(zeta[A]) and gamma_*^{-1}(zeta[C]) compared against
/// compatibility.
AxiomReport lemma62Audit(const Extension& alpha, const Extension& gamma, const Bounds& bounds = {});

/// For each compatible gamma, a delta with alpha * delta = gamma among the
/// candidates: regularized preimages along the identity of N with an
/// infinity assignment (arithmetic), or all finite de Vries morphisms.
AxiomReport isMaximalRelative(const Extension& alpha, const std::vector<Extension>& family,
                              const Bounds& bounds = {});

/// Maximality, isomorphism and equivalence against the relative Stone-Cech
/// compactification of period P.
AxiomReport theorem34Audit(const ArithCompactification& e, unsigned period,
                           const Bounds& bounds = {4, 4, 8});
/// Finite discrete X: beta X = X.
AxiomReport theorem34Audit(unsigned points);

}  // namespace dvw
