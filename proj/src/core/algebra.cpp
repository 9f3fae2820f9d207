#include "algebra.hpp"

namespace dvw {

void Bounds::validate() const {
  if (threshold == 0 || period == 0 || witnessThreshold == 0)
    throw InputError("bounds must be positive");
  if (witnessThreshold < threshold) throw InputError("witness bound T' must be at least T");
}

std::string showAtoms(Mask m, unsigned width) {
  std::string out = "{";
  bool first = true;
  for (unsigned i = 0; i < width; ++i) {
    if (!((m >> i) & 1U)) continue;
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

Mask AlgebraView::joinBelow(Mask b) const {
  if (width() > 20) throw InputError("joinBelow by enumeration needs width <= 20");
  Mask acc = 0;
  for (Mask a = 0; a < size(); ++a)
    if (precedes(a, b)) acc |= a;
  return acc;
}

namespace {

class FiniteView final : public AlgebraView {
 public:
  FiniteView(unsigned atoms, const std::optional<std::vector<Mask>>* rows)
      : AlgebraView(Fragment::finite(atoms)), rows_(rows) {}

  bool precedes(Mask a, Mask b) const override {
    if (rows_ && rows_->has_value()) return ((**rows_)[a] >> b) & 1U;
    return isSubset(a, b);
  }
  Mask joinBelow(Mask b) const override {
    if (orderProximity()) return b;
    return AlgebraView::joinBelow(b);
  }
  std::vector<Point> points() const override {
    std::vector<Point> pts;
    for (unsigned i = 0; i < width(); ++i) pts.push_back({std::to_string(i), Mask{1} << i, false});
    return pts;
  }
  std::string show(Mask a) const override { return showAtoms(a, width()); }
  bool orderProximity() const override { return !(rows_ && rows_->has_value()); }

 private:
  const std::optional<std::vector<Mask>>* rows_;
};

class ArithPowersetView final : public AlgebraView {
 public:
  using AlgebraView::AlgebraView;

  bool precedes(Mask a, Mask b) const override { return isSubset(a, b); }
  Mask joinBelow(Mask b) const override { return b; }
  std::vector<Point> points() const override {
    std::vector<Point> pts;
    for (unsigned n = 0; n < level().threshold(); ++n)
      pts.push_back({std::to_string(n), Mask{1} << n, false});
    return pts;
  }
  std::string show(Mask a) const override { return level().decode(a).print(); }
  bool orderProximity() const override { return true; }
};

// Canonical proximity on the RO(Y) fragment, computed on traces:
// cl(U) adds the infinity points whose block meets the tail of U, and U
// contains infinity point i iff its tail covers block i.
class RegularOpenView final : public AlgebraView {
 public:
  RegularOpenView(const Fragment& level, const ArithCompactification& y)
      : AlgebraView(level), y_(y) {
    for (unsigned i = 0; i < y.points(); ++i) {
      Mask m = 0;
      for (unsigned r : y.liftedBlock(i, level.period())) m |= level.tailBit(r);
      blockTail_.push_back(m);
    }
  }

  InfinitySet infinitiesOf(Mask a) const {
    InfinitySet s = 0;
    for (unsigned i = 0; i < blockTail_.size(); ++i)
      if (isSubset(blockTail_[i], a)) s |= InfinitySet{1} << i;
    return s;
  }
  InfinitySet closureInfinities(Mask a) const {
    InfinitySet s = 0;
    for (unsigned i = 0; i < blockTail_.size(); ++i)
      if (a & blockTail_[i]) s |= InfinitySet{1} << i;
    return s;
  }

  bool precedes(Mask a, Mask b) const override {
    return isSubset(a, b) && isSubset(closureInfinities(a), infinitiesOf(b));
  }
  Mask joinBelow(Mask b) const override {
    Mask out = b;
    for (const Mask bt : blockTail_)
      if (!isSubset(bt, b)) out &= ~bt;
    return out;
  }
  std::vector<Point> points() const override {
    std::vector<Point> pts;
    for (unsigned n = 0; n < level().threshold(); ++n)
      pts.push_back({std::to_string(n), Mask{1} << n, false});
    for (unsigned i = 0; i < blockTail_.size(); ++i)
      pts.push_back({y_.labels()[i], blockTail_[i], true});
    return pts;
  }
  std::string show(Mask a) const override {
    return printYSubset(y_, YSubset{level().decode(a), infinitiesOf(a)});
  }

 private:
  const ArithCompactification& y_;
  std::vector<Mask> blockTail_;
};

}  // namespace

AlgebraPtr Algebra::finitePowerset(unsigned atoms, std::string name) {
  if (atoms > 20) throw InputError("finite algebras are limited to 20 atoms");
  auto a = std::make_shared<Algebra>();
  a->kind_ = Kind::Finite;
  a->atoms_ = atoms;
  a->name_ = name.empty() ? "P(" + std::to_string(atoms) + ")" : std::move(name);
  return a;
}

AlgebraPtr Algebra::finiteTable(unsigned atoms, std::vector<Mask> rows, std::string name) {
  if (atoms > 6) throw InputError("explicit proximity tables are limited to 6 atoms");
  if (rows.size() != (std::size_t{1} << atoms))
    throw InputError("proximity table needs one row per element");
  auto a = std::make_shared<Algebra>();
  a->kind_ = Kind::Finite;
  a->atoms_ = atoms;
  a->rows_ = std::move(rows);
  a->name_ = name.empty() ? "P(" + std::to_string(atoms) + ",table)" : std::move(name);
  return a;
}

AlgebraPtr Algebra::regularOpen(const FinDiscrete& x, std::string name) {
  if (x.size > 6) throw InputError("RO of a discrete space is tabulated up to 6 points");
  const unsigned n = x.size;
  const Mask top = (Mask{1} << n) - 1;
  std::vector<Mask> rows(std::size_t{1} << n, 0);
  for (Mask u = 0; u <= top; ++u)
    for (Mask v = 0; v <= top; ++v)
      if (x.canonicalProximity(FinSubset{n, u}, FinSubset{n, v})) rows[u] |= Mask{1} << v;
  return finiteTable(n, std::move(rows), name.empty() ? "RO(" + std::to_string(n) + ")" : name);
}

AlgebraPtr Algebra::arithPowerset(std::string name) {
  auto a = std::make_shared<Algebra>();
  a->kind_ = Kind::ArithPowerset;
  a->name_ = std::move(name);
  return a;
}

AlgebraPtr Algebra::regularOpen(const ArithCompactification& y, std::string name) {
  auto a = std::make_shared<Algebra>();
  a->kind_ = Kind::RegularOpen;
  a->space_ = y;
  a->name_ = name.empty() ? "RO(" + y.print() + ")" : std::move(name);
  return a;
}

bool Algebra::orderProximity() const {
  switch (kind_) {
    case Kind::Finite: {
      if (!rows_) return true;
      const Mask top = (Mask{1} << atoms_) - 1;
      for (Mask a = 0; a <= top; ++a)
        for (Mask b = 0; b <= top; ++b)
          if ((((*rows_)[a] >> b) & 1U) != static_cast<Mask>(isSubset(a, b))) return false;
      return true;
    }
    case Kind::ArithPowerset: return true;
    case Kind::RegularOpen: return false;
  }
  return false;
}

Fragment Algebra::levelFor(const Bounds& b) const {
  if (kind_ == Kind::Finite) return Fragment::finite(atoms_);
  if (space_ && b.period % space_->period() != 0)
    throw InputError("fragment period " + std::to_string(b.period) + " is not a multiple of " +
                     std::to_string(space_->period()) + " for " + name_);
  return Fragment(b.threshold, b.period);
}

Fragment Algebra::witnessLevel(const Fragment& base, unsigned witnessThreshold) const {
  if (base.isFinite()) return base;
  return Fragment(std::max(base.threshold(), witnessThreshold), base.period());
}

Fragment Algebra::witnessLevelFor(const Bounds& b) const {
  return witnessLevel(levelFor(b), b.witnessThreshold);
}

std::unique_ptr<AlgebraView> Algebra::view(const Fragment& level) const {
  switch (kind_) {
    case Kind::Finite:
      if (!(level == Fragment::finite(atoms_)))
        throw InputError(name_ + " has no level " + level.describe());
      return std::make_unique<FiniteView>(atoms_, &rows_);
    case Kind::ArithPowerset:
      if (level.isFinite()) throw InputError("P(N) needs a periodic fragment level");
      return std::make_unique<ArithPowersetView>(level);
    case Kind::RegularOpen:
      if (level.isFinite() || level.period() % space_->period() != 0)
        throw InputError(name_ + " has no level " + level.describe());
      return std::make_unique<RegularOpenView>(level, *space_);
  }
  return nullptr;
}

bool Algebra::sameAs(const Algebra& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case Kind::Finite: return atoms_ == o.atoms_ && rows_ == o.rows_;
    case Kind::ArithPowerset: return true;
    case Kind::RegularOpen: return *space_ == *o.space_;
  }
  return false;
}

}  // namespace dvw
