#pragma once

// Axiom audits for proximities (DV1-DV7) and morphisms (M1-M4), the derived
// morphism laws, and the star composition.
//
// Small algebras (at most 64 elements) are checked over all tuples and report
// the lexicographically least counterexample under the mask order. Larger
// fragments use reduced forms that are equivalent given the other axioms:
// DV3 via single-atom covers, DV4 via the meet of each row, DV6/DV7/M4 via
// the join of the elements below b.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "morphism.hpp"

namespace dvw {

struct AxiomResult {
  std::string axiom;
  bool pass = true;
  std::vector<std::string> witness;
  std::vector<Mask> rawWitness;
  bool bounded = false;
  std::string note;
};

struct AxiomReport {
  std::string subject;
  std::string level;
  std::string witnessLevel;
  std::string mode;  // "exhaustive" or "reduced"
  bool refused = false;
  std::string refusal;
  std::vector<AxiomResult> results;
  /// Verdicts and other findings that are data rather than pass/fail checks.
  nlohmann::json data = nlohmann::json::object();

  bool allPass() const;
  const AxiomResult* find(const std::string& axiom) const;
  nlohmann::json toJson() const;
};

nlohmann::json toJson(const AxiomResult& r);

/// Ascending submasks of b; stops when f returns false.
template <class F>
void forSubmasks(Mask b, F&& f) {
  for (Mask a = 0;; a = (a - b) & b) {
    if (!f(a)) return;
    if (a == b) return;
  }
}

inline constexpr unsigned kMaxSearchWidth = 20;

/// Some c < b with pred(c): the join below b is tried first, then every
/// submask when the level is at most kMaxSearchWidth wide. `searched` is
/// cleared when the submask search was skipped.
std::optional<Mask> findBelow(const AlgebraView& v, Mask b, const std::function<bool(Mask)>& pred,
                              bool* searched = nullptr);

/// Elements up to this many are checked over all tuples.
inline constexpr std::uint64_t kExhaustiveElements = 64;

AxiomReport checkProximityAxioms(const Algebra& a, const Bounds& bounds = {});
AxiomReport checkMorphismAxioms(const DVMorphism& rho, const Bounds& bounds = {});
/// Standard consequences of M1-M4; refuses to run when M1-M4 fail.
AxiomReport derivedMorphismLaws(const DVMorphism& rho, const Bounds& bounds = {});

DVMorphism starCompose(const DVMorphism& outer, const DVMorphism& inner);

struct HomoVerdict {
  bool value = false;
  std::string basis;  // "exhaustive", "by construction", "fragment"
  std::vector<std::string> witness;
};
HomoVerdict isCompleteBooleanHomo(const DVMorphism& sigma, const Bounds& bounds = {});

/// Extensional equality of two morphisms on the domain level of `bounds`.
std::optional<Mask> firstDisagreement(const DVMorphism& a, const DVMorphism& b,
                                      const Bounds& bounds = {});

}  // namespace dvw
