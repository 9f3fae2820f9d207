#pragma once

// Boolean algebras carrying a proximity, presented so that every checker can
// work on finite bitmask algebras.
//
// A finite algebra is the powerset of its atoms, with either the order or an
// explicit relation table as proximity. An arithmetic algebra (the powerset
// of N, or the regular open sets of an arithmetic compactification) is
// infinite; it is viewed through a fragment level Frag(T, P), which is a
// finite subalgebra. Elements of RO(Y) are indexed by their trace on N, which
// determines them.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fragment.hpp"
#include "topology.hpp"

namespace dvw {

/// Fragment bound (T, P) plus the witness threshold T' used for existential
/// searches (approximation, M4, interpolants for star composition).
struct Bounds {
  unsigned threshold = 6;
  unsigned period = 4;
  unsigned witnessThreshold = 12;

  void validate() const;
  bool operator==(const Bounds&) const = default;
};

/// A point of the algebra's dual: x <= b iff b contains all of `support`.
struct Point {
  std::string label;
  Mask support = 0;
  bool atInfinity = false;

  bool below(Mask b) const { return (b & support) == support; }
};

/// One finite level of an algebra.
class AlgebraView {
 public:
  explicit AlgebraView(Fragment level) : level_(level) {}
  virtual ~AlgebraView() = default;

  const Fragment& level() const { return level_; }
  unsigned width() const { return level_.width(); }
  std::uint64_t size() const { return level_.size(); }
  Mask top() const { return level_.top(); }
  Mask neg(Mask a) const { return top() & ~a; }

  virtual bool precedes(Mask a, Mask b) const = 0;
  /// Join of {a : a < b} at this level.
  virtual Mask joinBelow(Mask b) const;
  /// Points checked by pointwise (approximation-style) axioms.
  virtual std::vector<Point> points() const = 0;
  virtual std::string show(Mask a) const = 0;
  virtual bool orderProximity() const { return false; }

 private:
  Fragment level_;
};

class Algebra {
 public:
  enum class Kind { Finite, ArithPowerset, RegularOpen };

  /// (P(atoms), <=), the extremally disconnected finite algebra.
  static std::shared_ptr<const Algebra> finitePowerset(unsigned atoms, std::string name = "");
  /// P(atoms) with an explicit relation; rows[a] has bit b set iff a < b. atoms <= 6.
  static std::shared_ptr<const Algebra> finiteTable(unsigned atoms, std::vector<Mask> rows,
                                                    std::string name = "");
  /// RO of a finite discrete space with its canonical proximity.
  static std::shared_ptr<const Algebra> regularOpen(const FinDiscrete& x, std::string name = "");
  /// (P(N), subset), seen through fragments.
  static std::shared_ptr<const Algebra> arithPowerset(std::string name = "P(N)");
  /// RO(Y) with the canonical proximity, seen through fragments.
  static std::shared_ptr<const Algebra> regularOpen(const ArithCompactification& y,
                                                    std::string name = "");

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  bool isArithmetic() const { return kind_ != Kind::Finite; }
  bool orderProximity() const;
  unsigned atoms() const { return atoms_; }
  const std::optional<std::vector<Mask>>& table() const { return rows_; }
  const ArithCompactification* space() const { return space_ ? &*space_ : nullptr; }

  /// The level used for elements under the given bounds.
  Fragment levelFor(const Bounds& b) const;
  /// Level for witness searches: threshold raised to T'.
  Fragment witnessLevelFor(const Bounds& b) const;
  Fragment witnessLevel(const Fragment& base, unsigned witnessThreshold) const;
  std::unique_ptr<AlgebraView> view(const Fragment& level) const;

  bool sameAs(const Algebra& o) const;

 private:
  Kind kind_ = Kind::Finite;
  std::string name_;
  unsigned atoms_ = 0;
  std::optional<std::vector<Mask>> rows_;
  std::optional<ArithCompactification> space_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// "{0,2}" for a mask over atoms.
std::string showAtoms(Mask m, unsigned width);

}  // namespace dvw
