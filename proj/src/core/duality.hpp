#pragma once

// Dual constructions: round filters and ends, zeta, rho_*, Tarski duality for
// finite CABAs, the functors E and C, extension checks, and the round-trip
// squares.
//
// Finite algebras here have at most 6 atoms, so a set of elements fits in one
// 64-bit word (bit m stands for the element with mask m). Ends of arithmetic
// algebras are never enumerated; they are realized by points of the space and
// membership is decided through the approximation property.

#include <cstdint>
#include <string>
#include <vector>

#include "devries.hpp"

namespace dvw {

using ElemSet = std::uint64_t;

ElemSet principalFilter(const Algebra& a, Mask c);
/// {x : b < x for some b in s}.
ElemSet twoheadUp(const Algebra& a, ElemSet s);
bool isFilter(const Algebra& a, ElemSet s);
bool isRoundFilter(const Algebra& a, ElemSet s);
/// Maximal proper round filters, ordered by their least element.
std::vector<ElemSet> endsOf(const Algebra& a);
/// Bit i set iff a belongs to ends[i].
std::uint64_t zeta(const std::vector<ElemSet>& ends, Mask a);
/// Index of an element set among the ends, or -1.
int endIndex(const std::vector<ElemSet>& ends, ElemSet s);

/// rho_*(y) = round upset of rho^{-1}(y) for an end y of the codomain.
ElemSet rhoStarPoint(const DVMorphism& rho, ElemSet y);
/// Membership of `a` (given at the witness level) in the end realized by the
/// point y: some x < a has y <= x.
bool realizedEndContains(const AlgebraView& w, Mask a, const Point& y);

/// sigma_+ : atoms of the codomain -> atoms of the domain. Rejects maps that
/// are not complete Boolean homomorphisms.
std::vector<unsigned> tarskiDual(const DVMorphism& sigma);
/// All complete Boolean homomorphisms P(m) -> P(n), i.e. f^{-1} for f : n -> m.
std::vector<DVMorphism> completeHomomorphisms(const AlgebraPtr& a, const AlgebraPtr& b);
/// All de Vries morphisms between two finite algebras with at most 3 atoms each.
std::vector<DVMorphism> finiteDVMorphisms(const AlgebraPtr& a, const AlgebraPtr& b);

struct Extension {
  DVMorphism alpha;
  std::string source;
};

/// e^{-1} : RO(X) -> P(X) for the identity compactification of X.
Extension functorE(const FinDiscrete& x);
/// e^{-1} : RO(Y) -> P(N).
Extension functorE(const ArithCompactification& y);

/// (rho, sigma) from alpha : A -> B to alpha' : A' -> B'; rho : A -> A', sigma : B -> B'.
struct ExtMorphism {
  DVMorphism rho;
  DVMorphism sigma;
};

/// E(f, g) = (g*, f^{-1}) for finite identity compactifications, f : n -> m.
ExtMorphism functorE(unsigned n, unsigned m, const std::vector<unsigned>& f);
/// E(f, g) for g extending f with g(inf_i) = inf'_{assign[i]}.
ExtMorphism functorE(const ArithCompactification& y, const ArithCompactification& yPrime,
                     const PiecewiseArithMap& f, const std::vector<unsigned>& assign);

/// sigma o alpha = alpha' * rho. Finite: exact; arithmetic: compared on
/// points n < T.
AxiomResult checkExtMorphismSquare(const Extension& from, const Extension& to,
                                   const ExtMorphism& m, const Bounds& bounds = {});

/// C(alpha) for a finite extension: X_B (atoms of B), Y_A (ends of A), and alpha_*.
struct FiniteCompactification {
  unsigned points = 0;
  std::vector<ElemSet> ends;
  std::vector<unsigned> embedding;  // atom index -> end index
};
FiniteCompactification functorC(const Extension& alpha);
/// C(rho, sigma) = (sigma_+, rho_*) for finite extensions.
struct FinitePair {
  std::vector<unsigned> f;  // atoms of B' -> atoms of B
  std::vector<unsigned> g;  // ends of A' -> ends of A
};
FinitePair functorC(const Extension& from, const Extension& to, const ExtMorphism& m);

/// M1-M4, injectivity, atom-meet density, separation of atoms, agreement of
/// the last two, and the coatom form of density.
AxiomReport checkExtension(const Extension& alpha, const Bounds& bounds = {});

/// Agreement of b <= alpha(a), a in alpha_*(up b) and alpha_*(up b) in zeta(a)
/// for every a in the fragment and every atom b = {n}, n <= maxPoint; for
/// RO(Y) domains also the infinity ends.
AxiomReport lemma53Audit(const Extension& alpha, const Bounds& bounds = {},
                         unsigned maxPoint = 12);

/// Round-trip squares for the identity compactification of an n-point space:
/// p_e, q_alpha and the six faces of the naturality cube for f : n -> m.
AxiomReport roundTripAudit(unsigned n, unsigned m, const std::vector<unsigned>& f);
AxiomReport roundTripAudit(unsigned n);
/// q_alpha and p_e for e^{-1} of an arithmetic compactification, on the fragment.
AxiomReport roundTripAudit(const ArithCompactification& y, const Bounds& bounds = {});

}  // namespace dvw
