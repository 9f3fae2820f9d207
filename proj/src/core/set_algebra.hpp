#pragma once

// Decidable subsets of finite universes and of the natural numbers.
//
// ArithSet is an eventually-periodic subset of N kept in canonical form, so
// that structural equality is set equality. PiecewiseArithMap is a total
// self-map of N that is affine on each residue class past a threshold.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dvw {

using Mask = std::uint64_t;

/// Raised for malformed literals and invalid constructor arguments.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm64(std::uint64_t a, std::uint64_t b);

/// A subset of {0..size-1}.
struct FinSubset {
  unsigned size = 0;
  Mask members = 0;

  static FinSubset of(unsigned size, std::initializer_list<unsigned> elems);
  bool contains(unsigned i) const { return i < size && ((members >> i) & 1U); }
  Mask universe() const { return size >= 64 ? ~Mask{0} : ((Mask{1} << size) - 1); }
  FinSubset complement() const { return {size, universe() & ~members}; }
  bool operator==(const FinSubset&) const = default;
};

/// Eventually periodic subset of N.
///
/// n is a member iff (n < threshold and n is in the initial segment) or
/// (n >= threshold and n mod period is a member residue). Canonical form:
/// the period is the least eventual period and the threshold is the least
/// one at which the tail rule takes over.
class ArithSet {
 public:
  ArithSet();  // empty set

  /// Builds and canonicalizes. `residues` must be < period, `initial` < threshold.
  static ArithSet make(std::uint64_t threshold, std::uint64_t period,
                       const std::vector<std::uint64_t>& residues,
                       const std::vector<std::uint64_t>& initial);
  static ArithSet fromBits(std::uint64_t threshold, std::vector<bool> initial,
                           std::vector<bool> tail);
  static ArithSet empty() { return ArithSet(); }
  static ArithSet all();
  static ArithSet finite(const std::vector<std::uint64_t>& elems);
  /// {n : n mod period == residue}
  static ArithSet progression(std::uint64_t period, std::uint64_t residue);

  bool contains(std::uint64_t n) const;
  std::uint64_t threshold() const { return threshold_; }
  std::uint64_t period() const { return tail_.size(); }
  const std::vector<bool>& initialBits() const { return initial_; }
  const std::vector<bool>& tailBits() const { return tail_; }
  std::vector<std::uint64_t> residues() const;
  std::vector<std::uint64_t> initialMembers() const;

  bool isFinite() const;
  bool isCofinite() const;
  bool isEmpty() const { return isFinite() && initialMembers().empty(); }

  bool subsetOf(const ArithSet& other) const;
  /// Least member >= from, if any.
  std::optional<std::uint64_t> firstMemberFrom(std::uint64_t from) const;

  std::string print() const;
  static ArithSet parse(std::string_view text);

  bool operator==(const ArithSet&) const = default;
  /// Total order on canonical forms (threshold, period, initial, tail).
  bool operator<(const ArithSet& other) const;

 private:
  void canonicalize();

  std::uint64_t threshold_ = 0;
  std::vector<bool> initial_;    // size threshold_
  std::vector<bool> tail_{false};  // size period
};

enum class BoolOp { Union, Intersection, Complement, Difference };

/// Pointwise Boolean combination; `b` is ignored for Complement.
ArithSet booleanOp(BoolOp kind, const ArithSet& a, const ArithSet& b = ArithSet());
inline ArithSet unite(const ArithSet& a, const ArithSet& b) { return booleanOp(BoolOp::Union, a, b); }
inline ArithSet intersect(const ArithSet& a, const ArithSet& b) {
  return booleanOp(BoolOp::Intersection, a, b);
}
inline ArithSet complement(const ArithSet& a) { return booleanOp(BoolOp::Complement, a); }
inline ArithSet difference(const ArithSet& a, const ArithSet& b) {
  return booleanOp(BoolOp::Difference, a, b);
}

/// Membership oracle bound for comparing two sets pointwise: past this many
/// naturals both sets have repeated their joint period twice.
std::uint64_t oracleWindow(const ArithSet& a, const ArithSet& b);

/// n -> scale * n + offset on one residue class.
struct AffinePiece {
  std::uint64_t scale = 1;
  std::int64_t offset = 0;
  bool operator==(const AffinePiece&) const = default;
};

/// Total map N -> N: explicit table below `threshold`, then per residue
/// class r (mod modulus) the affine piece pieces[r].
class PiecewiseArithMap {
 public:
  PiecewiseArithMap();  // identity
  static PiecewiseArithMap make(std::uint64_t modulus, std::vector<AffinePiece> pieces,
                                std::uint64_t threshold, std::vector<std::uint64_t> table);
  static PiecewiseArithMap identity() { return PiecewiseArithMap(); }
  static PiecewiseArithMap shift(std::int64_t by);

  std::uint64_t operator()(std::uint64_t n) const;
  std::uint64_t modulus() const { return pieces_.size(); }
  std::uint64_t threshold() const { return threshold_; }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  const std::vector<std::uint64_t>& table() const { return table_; }

  /// Past this point every class is affine with a common modulus, so two maps
  /// agreeing on [0, window) agree everywhere.
  std::uint64_t agreementWindow(const PiecewiseArithMap& other) const;
  bool extensionallyEqual(const PiecewiseArithMap& other) const;
  std::optional<std::uint64_t> firstDifference(const PiecewiseArithMap& other) const;

  std::string print() const;
  static PiecewiseArithMap parse(std::string_view text);

 private:
  std::uint64_t threshold_ = 0;
  std::vector<AffinePiece> pieces_{AffinePiece{}};
  std::vector<std::uint64_t> table_;
};

/// n -> outer(inner(n))
PiecewiseArithMap compose(const PiecewiseArithMap& outer, const PiecewiseArithMap& inner);

/// {n : f(n) in s}
ArithSet preimage(const PiecewiseArithMap& f, const ArithSet& s);

/// Image of a set under a map; only used for sets on which f is decidable
/// structurally (every map here is finite-to-one).
ArithSet image(const PiecewiseArithMap& f, const ArithSet& s);

struct BijectionReport {
  bool bijective = false;
  std::optional<PiecewiseArithMap> inverse;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> collision;  // n1 < n2, f(n1) == f(n2)
  std::optional<std::uint64_t> missed;                               // no preimage
  std::string reason;
};

BijectionReport checkBijection(const PiecewiseArithMap& f);

}  // namespace dvw
