#include "set_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <sstream>

namespace dvw {

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t lcm64(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a / std::gcd(a, b) * b;
}

FinSubset FinSubset::of(unsigned size, std::initializer_list<unsigned> elems) {
  FinSubset s{size, 0};
  for (unsigned e : elems) {
    if (e >= size) throw InputError("element " + std::to_string(e) + " outside universe of size " +
                                    std::to_string(size));
    s.members |= Mask{1} << e;
  }
  return s;
}

// ---------------------------------------------------------------------------
// ArithSet

ArithSet::ArithSet() = default;

ArithSet ArithSet::make(std::uint64_t threshold, std::uint64_t period,
                        const std::vector<std::uint64_t>& residues,
                        const std::vector<std::uint64_t>& initial) {
  if (period == 0) throw InputError("period must be at least 1");
  std::vector<bool> init(threshold, false);
  std::vector<bool> tail(period, false);
  for (auto r : residues) {
    if (r >= period)
      throw InputError("residue " + std::to_string(r) + " out of range for period " +
                       std::to_string(period));
    tail[r] = true;
  }
  for (auto e : initial) {
    if (e >= threshold)
      throw InputError("initial element " + std::to_string(e) + " not below threshold " +
                       std::to_string(threshold));
    init[e] = true;
  }
  return fromBits(threshold, std::move(init), std::move(tail));
}

ArithSet ArithSet::fromBits(std::uint64_t threshold, std::vector<bool> initial,
                            std::vector<bool> tail) {
  if (tail.empty()) throw InputError("period must be at least 1");
  if (initial.size() != threshold) throw InputError("initial segment length must equal threshold");
  ArithSet s;
  s.threshold_ = threshold;
  s.initial_ = std::move(initial);
  s.tail_ = std::move(tail);
  s.canonicalize();
  return s;
}

ArithSet ArithSet::all() { return fromBits(0, {}, {true}); }

ArithSet ArithSet::finite(const std::vector<std::uint64_t>& elems) {
  std::uint64_t t = 0;
  for (auto e : elems) t = std::max(t, e + 1);
  return make(t, 1, {}, elems);
}

ArithSet ArithSet::progression(std::uint64_t period, std::uint64_t residue) {
  return make(0, period, {residue % period}, {});
}

void ArithSet::canonicalize() {
  const std::uint64_t p = tail_.size();
  // Least eventual period: it divides every eventual period, so try divisors.
  for (std::uint64_t d = 1; d <= p; ++d) {
    if (p % d != 0) continue;
    bool ok = true;
    for (std::uint64_t i = d; i < p && ok; ++i) ok = tail_[i] == tail_[i % d];
    if (ok) {
      tail_.resize(d);
      break;
    }
  }
  const std::uint64_t q = tail_.size();
  while (threshold_ > 0 && initial_[threshold_ - 1] == tail_[(threshold_ - 1) % q]) {
    --threshold_;
    initial_.pop_back();
  }
}

bool ArithSet::contains(std::uint64_t n) const {
  if (n < threshold_) return initial_[n];
  return tail_[n % tail_.size()];
}

std::vector<std::uint64_t> ArithSet::residues() const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t r = 0; r < tail_.size(); ++r)
    if (tail_[r]) out.push_back(r);
  return out;
}

std::vector<std::uint64_t> ArithSet::initialMembers() const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 0; n < threshold_; ++n)
    if (initial_[n]) out.push_back(n);
  return out;
}

bool ArithSet::isFinite() const {
  return std::none_of(tail_.begin(), tail_.end(), [](bool b) { return b; });
}

bool ArithSet::isCofinite() const {
  return std::all_of(tail_.begin(), tail_.end(), [](bool b) { return b; });
}

std::uint64_t oracleWindow(const ArithSet& a, const ArithSet& b) {
  return std::max(a.threshold(), b.threshold()) + 2 * lcm64(a.period(), b.period());
}

bool ArithSet::subsetOf(const ArithSet& other) const {
  const std::uint64_t w = std::max(threshold_, other.threshold_) + lcm64(period(), other.period());
  for (std::uint64_t n = 0; n < w; ++n)
    if (contains(n) && !other.contains(n)) return false;
  return true;
}

std::optional<std::uint64_t> ArithSet::firstMemberFrom(std::uint64_t from) const {
  const std::uint64_t end = std::max(from, threshold_) + period();
  for (std::uint64_t n = from; n < end; ++n)
    if (contains(n)) return n;
  return std::nullopt;
}

bool ArithSet::operator<(const ArithSet& o) const {
  if (threshold_ != o.threshold_) return threshold_ < o.threshold_;
  if (period() != o.period()) return period() < o.period();
  if (initial_ != o.initial_) return initial_ < o.initial_;
  return tail_ < o.tail_;
}

namespace {

std::string joinNumbers(const std::vector<std::uint64_t>& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(xs[i]);
  }
  return out + "}";
}

// Minimal cursor over a literal; positions are reported 1-based.
class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  void skipSpace() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool atEnd() {
    skipSpace();
    return i_ >= s_.size();
  }
  bool tryChar(char c) {
    skipSpace();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  void expectChar(char c) {
    if (!tryChar(c)) fail(std::string("expected '") + c + "'");
  }
  bool tryWord(std::string_view w) {
    skipSpace();
    if (s_.substr(i_, w.size()) == w) {
      i_ += w.size();
      return true;
    }
    return false;
  }
  void expectWord(std::string_view w) {
    if (!tryWord(w)) fail("expected '" + std::string(w) + "'");
  }
  bool peekDigit() {
    skipSpace();
    return i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]));
  }
  std::uint64_t number() {
    skipSpace();
    if (!peekDigit()) fail("expected a natural number");
    std::uint64_t v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      v = v * 10 + static_cast<std::uint64_t>(s_[i_] - '0');
      ++i_;
    }
    return v;
  }
  std::vector<std::uint64_t> numberSet() {
    std::vector<std::uint64_t> out;
    expectChar('{');
    if (tryChar('}')) return out;
    do {
      out.push_back(number());
    } while (tryChar(','));
    expectChar('}');
    return out;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw InputError(msg + " at column " + std::to_string(i_ + 1), 1, i_ + 1);
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

std::string ArithSet::print() const {
  std::ostringstream os;
  os << joinNumbers(initialMembers()) << " ++ period " << period() << " residues "
     << joinNumbers(residues()) << " from " << threshold_;
  return os.str();
}

ArithSet ArithSet::parse(std::string_view text) {
  Cursor c(text);
  auto initial = c.numberSet();
  c.expectWord("++");
  c.expectWord("period");
  auto period = c.number();
  c.expectWord("residues");
  auto residues = c.numberSet();
  c.expectWord("from");
  auto threshold = c.number();
  if (!c.atEnd()) c.fail("trailing input");
  return make(threshold, period, residues, initial);
}

ArithSet booleanOp(BoolOp kind, const ArithSet& a, const ArithSet& b) {
  const bool unary = kind == BoolOp::Complement;
  const std::uint64_t t = unary ? a.threshold() : std::max(a.threshold(), b.threshold());
  const std::uint64_t p = unary ? a.period() : lcm64(a.period(), b.period());
  auto eval = [&](std::uint64_t n) {
    switch (kind) {
      case BoolOp::Union: return a.contains(n) || b.contains(n);
      case BoolOp::Intersection: return a.contains(n) && b.contains(n);
      case BoolOp::Difference: return a.contains(n) && !b.contains(n);
      case BoolOp::Complement: return !a.contains(n);
    }
    return false;
  };
  std::vector<bool> init(t), tail(p);
  for (std::uint64_t n = 0; n < t; ++n) init[n] = eval(n);
  for (std::uint64_t r = 0; r < p; ++r) tail[r] = eval(t + (r + p - t % p) % p);
  return ArithSet::fromBits(t, std::move(init), std::move(tail));
}

// ---------------------------------------------------------------------------
// PiecewiseArithMap

PiecewiseArithMap::PiecewiseArithMap() = default;

PiecewiseArithMap PiecewiseArithMap::make(std::uint64_t modulus, std::vector<AffinePiece> pieces,
                                          std::uint64_t threshold,
                                          std::vector<std::uint64_t> table) {
  if (modulus == 0) throw InputError("map modulus must be at least 1");
  if (pieces.size() != modulus)
    throw InputError("map needs one affine piece per residue class (" + std::to_string(modulus) +
                     "), got " + std::to_string(pieces.size()));
  if (table.size() != threshold)
    throw InputError("map table must list exactly the values below the threshold");
  for (std::uint64_t r = 0; r < modulus; ++r) {
    const auto& pc = pieces[r];
    if (pc.scale == 0) throw InputError("affine pieces must have scale at least 1");
    const std::uint64_t first = threshold + (r + modulus - threshold % modulus) % modulus;
    if (static_cast<std::int64_t>(pc.scale * first) + pc.offset < 0)
      throw InputError("map sends " + std::to_string(first) + " below zero");
  }
  PiecewiseArithMap f;
  f.threshold_ = threshold;
  f.pieces_ = std::move(pieces);
  f.table_ = std::move(table);
  return f;
}

PiecewiseArithMap PiecewiseArithMap::shift(std::int64_t by) {
  if (by >= 0) return make(1, {AffinePiece{1, by}}, 0, {});
  // Values below |by| have nowhere to go; clamp them to 0.
  const auto t = static_cast<std::uint64_t>(-by);
  return make(1, {AffinePiece{1, by}}, t, std::vector<std::uint64_t>(t, 0));
}

std::uint64_t PiecewiseArithMap::operator()(std::uint64_t n) const {
  if (n < threshold_) return table_[n];
  const auto& pc = pieces_[n % pieces_.size()];
  return static_cast<std::uint64_t>(static_cast<std::int64_t>(pc.scale * n) + pc.offset);
}

std::uint64_t PiecewiseArithMap::agreementWindow(const PiecewiseArithMap& other) const {
  // Two affine functions on a class agree everywhere once they agree twice.
  return std::max(threshold_, other.threshold_) + 2 * lcm64(modulus(), other.modulus());
}

std::optional<std::uint64_t> PiecewiseArithMap::firstDifference(
    const PiecewiseArithMap& other) const {
  const auto w = agreementWindow(other);
  for (std::uint64_t n = 0; n < w; ++n)
    if ((*this)(n) != other(n)) return n;
  return std::nullopt;
}

bool PiecewiseArithMap::extensionallyEqual(const PiecewiseArithMap& other) const {
  return !firstDifference(other).has_value();
}

std::string PiecewiseArithMap::print() const {
  std::ostringstream os;
  os << "affine modulus " << modulus() << " pieces [";
  for (std::size_t r = 0; r < pieces_.size(); ++r) {
    if (r) os << ", ";
    const auto& pc = pieces_[r];
    if (pc.scale != 1) os << pc.scale;
    os << "n";
    if (pc.offset > 0) os << "+" << pc.offset;
    if (pc.offset < 0) os << pc.offset;
  }
  os << "] from " << threshold_ << " table [";
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (i) os << ", ";
    os << table_[i];
  }
  os << "]";
  return os.str();
}

PiecewiseArithMap PiecewiseArithMap::parse(std::string_view text) {
  Cursor c(text);
  c.expectWord("affine");
  c.expectWord("modulus");
  const auto m = c.number();
  c.expectWord("pieces");
  c.expectChar('[');
  std::vector<AffinePiece> pieces;
  if (!c.tryChar(']')) {
    do {
      AffinePiece pc;
      if (c.peekDigit()) pc.scale = c.number();
      c.expectChar('n');
      if (c.tryChar('+')) {
        pc.offset = static_cast<std::int64_t>(c.number());
      } else if (c.tryChar('-')) {
        pc.offset = -static_cast<std::int64_t>(c.number());
      }
      pieces.push_back(pc);
    } while (c.tryChar(','));
    c.expectChar(']');
  }
  c.expectWord("from");
  const auto t = c.number();
  c.expectWord("table");
  c.expectChar('[');
  std::vector<std::uint64_t> table;
  if (!c.tryChar(']')) {
    do {
      table.push_back(c.number());
    } while (c.tryChar(','));
    c.expectChar(']');
  }
  if (!c.atEnd()) c.fail("trailing input");
  return make(m, std::move(pieces), t, std::move(table));
}

PiecewiseArithMap compose(const PiecewiseArithMap& outer, const PiecewiseArithMap& inner) {
  const std::uint64_t m = lcm64(outer.modulus(), inner.modulus());
  // Past t every inner value is past the outer threshold.
  std::uint64_t t = inner.threshold();
  for (const auto& pc : inner.pieces())
    if (pc.offset < static_cast<std::int64_t>(outer.threshold()))
      t = std::max<std::uint64_t>(t, static_cast<std::uint64_t>(
                                          static_cast<std::int64_t>(outer.threshold()) - pc.offset));
  std::vector<AffinePiece> pieces(m);
  for (std::uint64_t r = 0; r < m; ++r) {
    const std::uint64_t n = t + (r + m - t % m) % m;
    const auto& in = inner.pieces()[n % inner.modulus()];
    const std::uint64_t mid = inner(n);
    const auto& out = outer.pieces()[mid % outer.modulus()];
    pieces[r] = AffinePiece{out.scale * in.scale, static_cast<std::int64_t>(out.scale) * in.offset +
                                                      out.offset};
  }
  std::vector<std::uint64_t> table(t);
  for (std::uint64_t n = 0; n < t; ++n) table[n] = outer(inner(n));
  return PiecewiseArithMap::make(m, std::move(pieces), t, std::move(table));
}

ArithSet preimage(const PiecewiseArithMap& f, const ArithSet& s) {
  const std::uint64_t p = lcm64(f.modulus(), s.period());
  std::uint64_t t = f.threshold();
  for (const auto& pc : f.pieces())
    if (pc.offset < static_cast<std::int64_t>(s.threshold()))
      t = std::max<std::uint64_t>(
          t, static_cast<std::uint64_t>(static_cast<std::int64_t>(s.threshold()) - pc.offset));
  std::vector<bool> init(t), tail(p);
  for (std::uint64_t n = 0; n < t; ++n) init[n] = s.contains(f(n));
  for (std::uint64_t r = 0; r < p; ++r) tail[r] = s.contains(f(t + (r + p - t % p) % p));
  return ArithSet::fromBits(t, std::move(init), std::move(tail));
}

ArithSet image(const PiecewiseArithMap& f, const ArithSet& s) {
  const std::uint64_t p = lcm64(f.modulus(), s.period());
  const std::uint64_t t = std::max(f.threshold(), s.threshold());
  std::vector<std::uint64_t> finiteValues;
  for (std::uint64_t n = 0; n < t; ++n)
    if (s.contains(n)) finiteValues.push_back(f(n));
  ArithSet out = ArithSet::finite(finiteValues);
  for (std::uint64_t r = 0; r < p; ++r) {
    const std::uint64_t n0 = t + (r + p - t % p) % p;
    if (!s.contains(n0)) continue;
    // {f(n0 + k p)} is the progression f(n0) + k * scale * p.
    const auto& pc = f.pieces()[n0 % f.modulus()];
    const std::uint64_t start = f(n0);
    const std::uint64_t step = pc.scale * p;
    std::vector<bool> init(start, false), tail(step, false);
    tail[start % step] = true;
    out = unite(out, ArithSet::fromBits(start, std::move(init), std::move(tail)));
  }
  return out;
}

namespace {

std::int64_t floorMod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

// Non-bijective maps: locate an explicit collision or missed value by
// scanning a growing window. Values hit by n >= w are all >= w + minOffset.
void findBijectionWitness(const PiecewiseArithMap& f, BijectionReport& rep) {
  std::int64_t minOffset = 0;
  for (const auto& pc : f.pieces()) minOffset = std::min(minOffset, pc.offset);
  std::uint64_t w = std::max<std::uint64_t>(16, 4 * (f.threshold() + f.modulus()));
  for (int round = 0; round < 12; ++round, w *= 2) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> imgs;
    imgs.reserve(w);
    for (std::uint64_t n = 0; n < w; ++n) imgs.emplace_back(f(n), n);
    std::sort(imgs.begin(), imgs.end());
    std::optional<std::pair<std::uint64_t, std::uint64_t>> best;
    for (std::size_t i = 1; i < imgs.size(); ++i) {
      if (imgs[i].first == imgs[i - 1].first) {
        std::pair<std::uint64_t, std::uint64_t> c{imgs[i - 1].second, imgs[i].second};
        if (!best || c.second < best->second || (c.second == best->second && c.first < best->first))
          best = c;
      }
    }
    if (best) {
      rep.collision = best;
      rep.reason = "f(" + std::to_string(best->first) + ") = f(" + std::to_string(best->second) + ")";
      return;
    }
    const std::int64_t safe = static_cast<std::int64_t>(w) + minOffset;
    std::uint64_t v = 0;
    for (const auto& [img, n] : imgs) {
      if (img > v) break;
      if (img == v) ++v;
    }
    if (static_cast<std::int64_t>(v) < safe) {
      rep.missed = v;
      rep.reason = std::to_string(v) + " has no preimage";
      return;
    }
  }
  rep.reason = "not bijective (structural), no witness within search window";
}

}  // namespace

BijectionReport checkBijection(const PiecewiseArithMap& f) {
  BijectionReport rep;
  const std::uint64_t m = f.modulus();
  const std::uint64_t t = f.threshold();
  const auto& pieces = f.pieces();

  bool structural = std::all_of(pieces.begin(), pieces.end(),
                                [](const AffinePiece& pc) { return pc.scale == 1; });
  std::vector<std::int64_t> targetOf(m), sourceOf(m, -1);
  if (structural) {
    for (std::uint64_t r = 0; r < m; ++r) {
      const auto c = static_cast<std::uint64_t>(
          floorMod(static_cast<std::int64_t>(r) + pieces[r].offset, static_cast<std::int64_t>(m)));
      targetOf[r] = static_cast<std::int64_t>(c);
      if (sourceOf[c] != -1) structural = false;
      sourceOf[c] = static_cast<std::int64_t>(r);
    }
  }
  if (!structural) {
    findBijectionWitness(f, rep);
    return rep;
  }

  // Class r's tail image starts at imgStart[c] within target class c.
  std::vector<std::uint64_t> imgStart(m);
  for (std::uint64_t r = 0; r < m; ++r) {
    const std::uint64_t first = t + (r + m - t % m) % m;
    imgStart[static_cast<std::uint64_t>(targetOf[r])] = f(first);
  }
  auto inTailImage = [&](std::uint64_t v) { return v >= imgStart[v % m]; };

  std::vector<std::uint64_t> missed;
  for (std::uint64_t c = 0; c < m; ++c)
    for (std::uint64_t v = c; v < imgStart[c]; v += m) missed.push_back(v);
  std::sort(missed.begin(), missed.end());

  std::vector<std::pair<std::uint64_t, std::uint64_t>> tableImgs;
  for (std::uint64_t n = 0; n < t; ++n) {
    const std::uint64_t v = f(n);
    if (inTailImage(v)) {
      const auto r = static_cast<std::uint64_t>(sourceOf[v % m]);
      const auto src = static_cast<std::uint64_t>(static_cast<std::int64_t>(v) - pieces[r].offset);
      rep.collision = std::make_pair(n, src);
      rep.reason = "f(" + std::to_string(n) + ") = f(" + std::to_string(src) + ")";
      return rep;
    }
    tableImgs.emplace_back(v, n);
  }
  std::sort(tableImgs.begin(), tableImgs.end());
  for (std::size_t i = 1; i < tableImgs.size(); ++i) {
    if (tableImgs[i].first == tableImgs[i - 1].first) {
      auto a = std::min(tableImgs[i].second, tableImgs[i - 1].second);
      auto b = std::max(tableImgs[i].second, tableImgs[i - 1].second);
      rep.collision = std::make_pair(a, b);
      rep.reason = "f(" + std::to_string(a) + ") = f(" + std::to_string(b) + ")";
      return rep;
    }
  }
  std::size_t j = 0;
  for (auto v : missed) {
    if (j < tableImgs.size() && tableImgs[j].first == v) {
      ++j;
      continue;
    }
    rep.missed = v;
    rep.reason = std::to_string(v) + " has no preimage";
    return rep;
  }

  rep.bijective = true;
  std::uint64_t tInv = 0;
  for (auto s : imgStart) tInv = std::max(tInv, s);
  std::vector<AffinePiece> invPieces(m);
  for (std::uint64_t c = 0; c < m; ++c)
    invPieces[c] = AffinePiece{1, -pieces[static_cast<std::uint64_t>(sourceOf[c])].offset};
  std::vector<std::uint64_t> invTable(tInv);
  for (std::uint64_t v = 0; v < tInv; ++v) {
    if (inTailImage(v)) {
      invTable[v] = static_cast<std::uint64_t>(static_cast<std::int64_t>(v) +
                                               invPieces[v % m].offset);
    } else {
      auto it = std::lower_bound(tableImgs.begin(), tableImgs.end(),
                                 std::make_pair(v, std::uint64_t{0}));
      invTable[v] = it->second;
    }
  }
  rep.inverse = PiecewiseArithMap::make(m, std::move(invPieces), tInv, std::move(invTable));
  return rep;
}

}  // namespace dvw
