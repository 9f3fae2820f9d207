#pragma once

// Maps between proximity algebras. A morphism is a rule that evaluates an
// element given at some level and reports its image at an output level the
// rule determines; finite morphisms are plain tables.

#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "algebra.hpp"

namespace dvw {

class MorphismRule {
 public:
  virtual ~MorphismRule() = default;
  virtual Fragment outputLevel(const Fragment& in, unsigned witnessThreshold) const = 0;
  virtual Mask apply(Mask a, const Fragment& in, unsigned witnessThreshold) const = 0;
  virtual std::string kind() const = 0;
  virtual bool completeByConstruction() const { return false; }
  /// True when evaluation involves a bounded witness search.
  virtual bool bounded() const { return false; }
};

class DVMorphism {
 public:
  DVMorphism(AlgebraPtr domain, AlgebraPtr codomain, std::shared_ptr<const MorphismRule> rule,
             std::string name);

  /// Finite morphism given by its full table.
  static DVMorphism table(AlgebraPtr domain, AlgebraPtr codomain, std::vector<Mask> images,
                          std::string name = "table", bool completeByConstruction = false);
  /// f^{-1} : P(m) -> P(n) for a function f from n points to m points.
  static DVMorphism finitePreimage(AlgebraPtr domain, AlgebraPtr codomain,
                                   const std::vector<unsigned>& f, std::string name = "f^-1");
  static DVMorphism identity(AlgebraPtr a);
  /// e^{-1} : RO(Y) -> P(N) for the inclusion e of N into Y.
  static DVMorphism pullback(const ArithCompactification& y);
  /// f^{-1} : P(N) -> P(N).
  static DVMorphism preimage(const PiecewiseArithMap& f, std::string name = "f^-1");
  /// g^* = int cl g^{-1} : RO(Y') -> RO(Y), g extending f : N -> N with g(inf_i) = inf'_{assign[i]}.
  static DVMorphism regularizedPreimage(const ArithCompactification& y,
                                        const ArithCompactification& yPrime,
                                        const PiecewiseArithMap& f, std::vector<unsigned> assign,
                                        std::string name = "g*");
  static DVMorphism compose(const DVMorphism& outer, const DVMorphism& inner);
  /// (outer * inner)(b) = join of outer(inner(a)) over a < b; arithmetic joins
  /// are taken at the witness level.
  static DVMorphism star(const DVMorphism& outer, const DVMorphism& inner);
  /// Arbitrary rule, used for constructed counterexamples.
  static DVMorphism function(AlgebraPtr domain, AlgebraPtr codomain,
                             std::function<Mask(Mask, const Fragment&)> fn,
                             std::function<Fragment(const Fragment&)> level, std::string name);

  const AlgebraPtr& domain() const { return domain_; }
  const AlgebraPtr& codomain() const { return codomain_; }
  const std::string& name() const { return name_; }
  const MorphismRule& rule() const { return *rule_; }
  std::shared_ptr<const MorphismRule> rulePtr() const { return rule_; }

  Fragment outputLevel(const Fragment& in, unsigned witnessThreshold) const {
    return rule_->outputLevel(in, witnessThreshold);
  }
  Mask apply(Mask a, const Fragment& in, unsigned witnessThreshold) const {
    return rule_->apply(a, in, witnessThreshold);
  }
  /// Materialized table for finite domains.
  std::vector<Mask> finiteTable() const;

 private:
  AlgebraPtr domain_, codomain_;
  std::shared_ptr<const MorphismRule> rule_;
  std::string name_;
};

/// A morphism evaluated on one input level, with cached images.
class MorphismTable {
 public:
  MorphismTable(const DVMorphism& m, const Fragment& in, unsigned witnessThreshold);

  Mask operator()(Mask a) const;
  const Fragment& inputLevel() const { return in_; }
  const Fragment& outputLevel() const { return out_; }

 private:
  const DVMorphism& m_;
  Fragment in_, out_;
  unsigned wT_;
  mutable std::vector<Mask> dense_;
  mutable std::vector<bool> have_;
  mutable std::unordered_map<Mask, Mask> sparse_;
};

}  // namespace dvw
