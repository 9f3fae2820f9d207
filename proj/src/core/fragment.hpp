#pragma once

// Finite fragments Frag(T, P) of the eventually periodic sets: all sets whose
// threshold is at most T and whose period divides P. Such a fragment is a
// finite Boolean algebra with T + P atoms ({0}, ..., {T-1} and the P tail
// classes {n >= T : n = r mod P}), which is what lets every checker run on
// plain bitmasks. Period 0 is used for a finite universe {0..T-1}.

#include <cstdint>
#include <string>

#include "set_algebra.hpp"

namespace dvw {

class Fragment {
 public:
  static constexpr unsigned kMaxWidth = 62;

  Fragment() = default;
  Fragment(unsigned threshold, unsigned period);
  static Fragment finite(unsigned atoms) { return Fragment(atoms, 0); }

  unsigned threshold() const { return threshold_; }
  unsigned period() const { return period_; }
  bool isFinite() const { return period_ == 0; }
  unsigned width() const { return threshold_ + period_; }
  Mask top() const { return width() == 0 ? 0 : ((Mask{1} << width()) - 1); }
  std::uint64_t size() const { return std::uint64_t{1} << width(); }

  /// Bit representing the tail class of residue r (mod period).
  Mask tailBit(unsigned r) const { return Mask{1} << (threshold_ + r); }
  Mask tailMask() const { return top() & ~((Mask{1} << threshold_) - 1); }
  /// Bit whose atom contains the natural number n.
  unsigned bitOf(std::uint64_t n) const;

  bool fits(const ArithSet& s) const;
  Mask encode(const ArithSet& s) const;  // throws if !fits(s)
  ArithSet decode(Mask m) const;

  /// Same fragment element seen in a finer fragment.
  bool coarserOrEqual(const Fragment& finer) const;
  Mask refine(Mask m, const Fragment& finer) const;

  bool operator==(const Fragment&) const = default;
  std::string describe() const;

 private:
  unsigned threshold_ = 0;
  unsigned period_ = 1;
};

/// Frag(T', P') containing both.
Fragment join(const Fragment& a, const Fragment& b);

inline int popcount(Mask m) { return __builtin_popcountll(m); }
inline bool isSubset(Mask a, Mask b) { return (a & ~b) == 0; }

}  // namespace dvw
