#pragma once

// Compactifications of N with finitely many points at infinity, and finite
// discrete spaces. Every natural number is isolated; a set containing the
// infinity point i is a neighbourhood of it iff it contains all but finitely
// many naturals whose residue (mod period) lies in block i.

#include <cstdint>
#include <string>
#include <vector>

#include "fragment.hpp"
#include "set_algebra.hpp"

namespace dvw {

using InfinitySet = std::uint64_t;  // bit i = infinity point i

class ArithCompactification {
 public:
  /// Throws InputError naming the offending residue for anything that is
  /// not a partition of {0..period-1} into nonempty blocks.
  ArithCompactification(unsigned period, std::vector<std::vector<unsigned>> blocks,
                        std::vector<std::string> labels);

  static ArithCompactification onePoint();
  static ArithCompactification parity();
  /// One infinity point per residue class mod period.
  static ArithCompactification singletons(unsigned period);

  unsigned period() const { return period_; }
  unsigned points() const { return static_cast<unsigned>(blocks_.size()); }
  const std::vector<std::vector<unsigned>>& blocks() const { return blocks_; }
  const std::vector<std::string>& labels() const { return labels_; }
  unsigned blockOf(std::uint64_t residue) const { return blockOf_[residue % period_]; }
  InfinitySet allInfinities() const;
  int labelIndex(const std::string& label) const;

  /// N_i: the naturals accumulating at infinity point i.
  const ArithSet& region(unsigned i) const { return regions_[i]; }
  /// Residues mod `period` (a multiple of ours) lying in block i.
  std::vector<unsigned> liftedBlock(unsigned i, unsigned period) const;

  std::string print() const;
  static ArithCompactification parse(std::string_view text);
  bool operator==(const ArithCompactification& o) const {
    return period_ == o.period_ && blocks_ == o.blocks_ && labels_ == o.labels_;
  }

 private:
  unsigned period_;
  std::vector<std::vector<unsigned>> blocks_;
  std::vector<std::string> labels_;
  std::vector<unsigned> blockOf_;
  std::vector<ArithSet> regions_;
};

/// A subset of N together with some points at infinity.
struct YSubset {
  ArithSet trace;
  InfinitySet infinities = 0;

  bool operator==(const YSubset&) const = default;
};

std::string printYSubset(const ArithCompactification& y, const YSubset& s);
bool containsPoint(const YSubset& s, std::uint64_t n);
bool subsetOf(const YSubset& a, const YSubset& b);

YSubset wholeSpace(const ArithCompactification& y);
YSubset closure(const ArithCompactification& y, const YSubset& s);
YSubset interior(const ArithCompactification& y, const YSubset& s);
YSubset complementIn(const ArithCompactification& y, const YSubset& s);
YSubset unionOf(const YSubset& a, const YSubset& b);
YSubset intersectionOf(const YSubset& a, const YSubset& b);

bool isOpen(const ArithCompactification& y, const YSubset& s);
YSubset regularize(const ArithCompactification& y, const YSubset& s);
bool isRegularOpen(const ArithCompactification& y, const YSubset& s);

/// Raised when a regular-open operation receives a set that is not regular open.
class NotRegularOpen : public InputError {
 public:
  explicit NotRegularOpen(const std::string& witness)
      : InputError("not regular open: " + witness), witness_(witness) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

enum class RoOp { Join, Meet, Neg };
YSubset roAlgebraOp(RoOp kind, const ArithCompactification& y, const YSubset& u,
                    const YSubset& v = {});

/// U < V iff cl(U) is contained in V; both must be regular open.
bool canonicalProximity(const ArithCompactification& y, const YSubset& u, const YSubset& v);

/// The regular open set whose trace is s.
YSubset regularOpenWithTrace(const ArithCompactification& y, const ArithSet& s);

/// Finite discrete space {0..size-1}.
struct FinDiscrete {
  unsigned size = 0;

  FinSubset closure(const FinSubset& s) const { return s; }
  FinSubset interior(const FinSubset& s) const { return s; }
  bool isRegularOpen(const FinSubset& s) const { return interior(closure(s)) == s; }
  bool canonicalProximity(const FinSubset& u, const FinSubset& v) const {
    return isSubset(closure(u).members, v.members);
  }
  bool operator==(const FinDiscrete&) const = default;
};

}  // namespace dvw
