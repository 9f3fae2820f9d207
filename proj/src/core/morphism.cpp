#include "morphism.hpp"

#include <algorithm>

namespace dvw {

namespace {

class TableRule final : public MorphismRule {
 public:
  TableRule(std::vector<Mask> images, unsigned codAtoms, bool complete)
      : images_(std::move(images)), codAtoms_(codAtoms), complete_(complete) {}
  Fragment outputLevel(const Fragment&, unsigned) const override {
    return Fragment::finite(codAtoms_);
  }
  Mask apply(Mask a, const Fragment&, unsigned) const override { return images_.at(a); }
  std::string kind() const override { return complete_ ? "finite-preimage" : "table"; }
  bool completeByConstruction() const override { return complete_; }

 private:
  std::vector<Mask> images_;
  unsigned codAtoms_;
  bool complete_;
};

class IdentityRule final : public MorphismRule {
 public:
  Fragment outputLevel(const Fragment& in, unsigned) const override { return in; }
  Mask apply(Mask a, const Fragment&, unsigned) const override { return a; }
  std::string kind() const override { return "identity"; }
  bool completeByConstruction() const override { return true; }
};

// RO(Y) elements are indexed by trace, so e^{-1} is the identity on masks.
class PullbackRule final : public MorphismRule {
 public:
  explicit PullbackRule(unsigned period) : period_(period) {}
  Fragment outputLevel(const Fragment& in, unsigned) const override {
    if (in.isFinite() || in.period() % period_ != 0)
      throw InputError("pullback needs a fragment period divisible by " + std::to_string(period_));
    return in;
  }
  Mask apply(Mask a, const Fragment&, unsigned) const override { return a; }
  std::string kind() const override { return "pullback"; }
  // The trace map RO(Y) -> P(N) is a Boolean isomorphism.
  bool completeByConstruction() const override { return true; }

 private:
  unsigned period_;
};

// Level containing f^{-1}(S) for every S in `in`.
Fragment preimageLevel(const PiecewiseArithMap& f, const Fragment& in, unsigned extraPeriod) {
  std::int64_t t = static_cast<std::int64_t>(f.threshold());
  for (const auto& pc : f.pieces())
    t = std::max(t, static_cast<std::int64_t>(in.threshold()) - pc.offset);
  const auto p = lcm64(lcm64(in.period(), f.modulus()), extraPeriod);
  return Fragment(static_cast<unsigned>(t), static_cast<unsigned>(p));
}

class PreimageRule final : public MorphismRule {
 public:
  explicit PreimageRule(PiecewiseArithMap f) : f_(std::move(f)) {}
  Fragment outputLevel(const Fragment& in, unsigned) const override {
    return preimageLevel(f_, in, 1);
  }
  Mask apply(Mask a, const Fragment& in, unsigned wT) const override {
    return outputLevel(in, wT).encode(preimage(f_, in.decode(a)));
  }
  std::string kind() const override { return "preimage"; }
  bool completeByConstruction() const override { return true; }

 private:
  PiecewiseArithMap f_;
};

class RegularizedPreimageRule final : public MorphismRule {
 public:
  RegularizedPreimageRule(ArithCompactification y, ArithCompactification yPrime,
                          PiecewiseArithMap f, std::vector<unsigned> assign)
      : y_(std::move(y)), yPrime_(std::move(yPrime)), f_(std::move(f)), assign_(std::move(assign)) {
    if (assign_.size() != y_.points())
      throw InputError("infinity assignment needs one target per infinity point");
    for (unsigned j : assign_)
      if (j >= yPrime_.points()) throw InputError("infinity assignment target out of range");
  }
  Fragment outputLevel(const Fragment& in, unsigned) const override {
    return preimageLevel(f_, in, y_.period());
  }
  Mask apply(Mask a, const Fragment& in, unsigned wT) const override {
    const YSubset u = regularOpenWithTrace(yPrime_, in.decode(a));
    YSubset pre{preimage(f_, u.trace), 0};
    for (unsigned i = 0; i < assign_.size(); ++i)
      if ((u.infinities >> assign_[i]) & 1U) pre.infinities |= InfinitySet{1} << i;
    return outputLevel(in, wT).encode(regularize(y_, pre).trace);
  }
  std::string kind() const override { return "regularized-preimage"; }

 private:
  ArithCompactification y_, yPrime_;
  PiecewiseArithMap f_;
  std::vector<unsigned> assign_;
};

class ComposeRule final : public MorphismRule {
 public:
  ComposeRule(std::shared_ptr<const MorphismRule> outer, std::shared_ptr<const MorphismRule> inner)
      : outer_(std::move(outer)), inner_(std::move(inner)) {}
  Fragment outputLevel(const Fragment& in, unsigned wT) const override {
    return outer_->outputLevel(inner_->outputLevel(in, wT), wT);
  }
  Mask apply(Mask a, const Fragment& in, unsigned wT) const override {
    return outer_->apply(inner_->apply(a, in, wT), inner_->outputLevel(in, wT), wT);
  }
  std::string kind() const override { return "compose"; }
  bool completeByConstruction() const override {
    return outer_->completeByConstruction() && inner_->completeByConstruction();
  }
  bool bounded() const override { return outer_->bounded() || inner_->bounded(); }

 private:
  std::shared_ptr<const MorphismRule> outer_, inner_;
};

class StarRule final : public MorphismRule {
 public:
  StarRule(std::shared_ptr<const MorphismRule> outer, std::shared_ptr<const MorphismRule> inner,
           AlgebraPtr innerDomain)
      : outer_(std::move(outer)), inner_(std::move(inner)), dom_(std::move(innerDomain)) {}

  Fragment outputLevel(const Fragment& in, unsigned wT) const override {
    const Fragment w = dom_->witnessLevel(in, wT);
    return outer_->outputLevel(inner_->outputLevel(w, wT), wT);
  }
  Mask apply(Mask b, const Fragment& in, unsigned wT) const override {
    const Fragment w = dom_->witnessLevel(in, wT);
    const Fragment mid = inner_->outputLevel(w, wT);
    auto through = [&](Mask a) { return outer_->apply(inner_->apply(a, w, wT), mid, wT); };
    const Mask bw = in.refine(b, w);
    const auto view = dom_->view(w);
    if (!dom_->isArithmetic() || w.width() <= 12) {
      // Exact join over the whole level.
      Mask acc = 0;
      for (Mask a = 0; a < view->size(); ++a)
        if (view->precedes(a, bw)) acc |= through(a);
      return acc;
    }
    // Images are monotone in a, so when the join of {a < b} is itself below b
    // the join of images is attained there.
    const Mask j = view->joinBelow(bw);
    if (view->precedes(j, bw)) return through(j);
    if (w.width() > 20) throw InputError("star composition: no largest element below " + view->show(bw));
    Mask acc = 0;
    for (Mask a = bw;; a = (a - 1) & bw) {
      if (view->precedes(a, bw)) acc |= through(a);
      if (a == 0) break;
    }
    return acc;
  }
  std::string kind() const override { return "star"; }
  bool bounded() const override { return dom_->isArithmetic() || outer_->bounded() || inner_->bounded(); }

 private:
  std::shared_ptr<const MorphismRule> outer_, inner_;
  AlgebraPtr dom_;
};

class FunctionRule final : public MorphismRule {
 public:
  FunctionRule(std::function<Mask(Mask, const Fragment&)> fn,
               std::function<Fragment(const Fragment&)> level)
      : fn_(std::move(fn)), level_(std::move(level)) {}
  Fragment outputLevel(const Fragment& in, unsigned) const override { return level_(in); }
  Mask apply(Mask a, const Fragment& in, unsigned) const override { return fn_(a, in); }
  std::string kind() const override { return "function"; }

 private:
  std::function<Mask(Mask, const Fragment&)> fn_;
  std::function<Fragment(const Fragment&)> level_;
};

}  // namespace

DVMorphism::DVMorphism(AlgebraPtr domain, AlgebraPtr codomain,
                       std::shared_ptr<const MorphismRule> rule, std::string name)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), rule_(std::move(rule)),
      name_(std::move(name)) {}

DVMorphism DVMorphism::table(AlgebraPtr domain, AlgebraPtr codomain, std::vector<Mask> images,
                             std::string name, bool completeByConstruction) {
  if (domain->isArithmetic() || codomain->isArithmetic())
    throw InputError("table morphisms are finite");
  if (images.size() != (std::size_t{1} << domain->atoms()))
    throw InputError("morphism table needs one image per domain element");
  const Mask codTop = (Mask{1} << codomain->atoms()) - 1;
  for (Mask m : images)
    if (!isSubset(m, codTop)) throw InputError("morphism image outside codomain");
  const unsigned codAtoms = codomain->atoms();
  return DVMorphism(std::move(domain), std::move(codomain),
                    std::make_shared<TableRule>(std::move(images), codAtoms, completeByConstruction),
                    std::move(name));
}

DVMorphism DVMorphism::finitePreimage(AlgebraPtr domain, AlgebraPtr codomain,
                                      const std::vector<unsigned>& f, std::string name) {
  if (f.size() != codomain->atoms())
    throw InputError("function must assign a domain atom to every codomain atom");
  for (unsigned v : f)
    if (v >= domain->atoms()) throw InputError("function value out of range");
  std::vector<Mask> images(std::size_t{1} << domain->atoms(), 0);
  for (Mask b = 0; b < images.size(); ++b)
    for (unsigned j = 0; j < f.size(); ++j)
      if ((b >> f[j]) & 1U) images[b] |= Mask{1} << j;
  return table(std::move(domain), std::move(codomain), std::move(images), std::move(name), true);
}

DVMorphism DVMorphism::identity(AlgebraPtr a) {
  auto b = a;
  return DVMorphism(std::move(a), std::move(b), std::make_shared<IdentityRule>(), "id");
}

DVMorphism DVMorphism::pullback(const ArithCompactification& y) {
  return DVMorphism(Algebra::regularOpen(y), Algebra::arithPowerset(),
                    std::make_shared<PullbackRule>(y.period()), "e^-1");
}

DVMorphism DVMorphism::preimage(const PiecewiseArithMap& f, std::string name) {
  auto p = Algebra::arithPowerset();
  return DVMorphism(p, p, std::make_shared<PreimageRule>(f), std::move(name));
}

DVMorphism DVMorphism::regularizedPreimage(const ArithCompactification& y,
                                           const ArithCompactification& yPrime,
                                           const PiecewiseArithMap& f, std::vector<unsigned> assign,
                                           std::string name) {
  return DVMorphism(Algebra::regularOpen(yPrime), Algebra::regularOpen(y),
                    std::make_shared<RegularizedPreimageRule>(y, yPrime, f, std::move(assign)),
                    std::move(name));
}

DVMorphism DVMorphism::compose(const DVMorphism& outer, const DVMorphism& inner) {
  if (!inner.codomain()->sameAs(*outer.domain()))
    throw InputError("cannot compose: codomain of " + inner.name() + " is not the domain of " +
                     outer.name());
  return DVMorphism(inner.domain(), outer.codomain(),
                    std::make_shared<ComposeRule>(outer.rulePtr(), inner.rulePtr()),
                    outer.name() + " o " + inner.name());
}

DVMorphism DVMorphism::star(const DVMorphism& outer, const DVMorphism& inner) {
  if (!inner.codomain()->sameAs(*outer.domain()))
    throw InputError("cannot compose: codomain of " + inner.name() + " is not the domain of " +
                     outer.name());
  return DVMorphism(inner.domain(), outer.codomain(),
                    std::make_shared<StarRule>(outer.rulePtr(), inner.rulePtr(), inner.domain()),
                    outer.name() + " * " + inner.name());
}

DVMorphism DVMorphism::function(AlgebraPtr domain, AlgebraPtr codomain,
                                std::function<Mask(Mask, const Fragment&)> fn,
                                std::function<Fragment(const Fragment&)> level, std::string name) {
  return DVMorphism(std::move(domain), std::move(codomain),
                    std::make_shared<FunctionRule>(std::move(fn), std::move(level)),
                    std::move(name));
}

std::vector<Mask> DVMorphism::finiteTable() const {
  if (domain_->isArithmetic()) throw InputError("finiteTable needs a finite domain");
  const Fragment in = Fragment::finite(domain_->atoms());
  std::vector<Mask> out(in.size());
  for (Mask a = 0; a < in.size(); ++a) out[a] = apply(a, in, 0);
  return out;
}

MorphismTable::MorphismTable(const DVMorphism& m, const Fragment& in, unsigned witnessThreshold)
    : m_(m), in_(in), out_(m.outputLevel(in, witnessThreshold)), wT_(witnessThreshold) {
  if (in.width() <= 20) {
    dense_.assign(in.size(), 0);
    have_.assign(in.size(), false);
  }
}

Mask MorphismTable::operator()(Mask a) const {
  if (!dense_.empty()) {
    if (!have_[a]) {
      dense_[a] = m_.apply(a, in_, wT_);
      have_[a] = true;
    }
    return dense_[a];
  }
  auto it = sparse_.find(a);
  if (it != sparse_.end()) return it->second;
  const Mask v = m_.apply(a, in_, wT_);
  sparse_.emplace(a, v);
  return v;
}

}  // namespace dvw
