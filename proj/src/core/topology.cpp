#include "topology.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace dvw {

ArithCompactification::ArithCompactification(unsigned period,
                                             std::vector<std::vector<unsigned>> blocks,
                                             std::vector<std::string> labels)
    : period_(period), blocks_(std::move(blocks)), labels_(std::move(labels)) {
  if (period_ == 0) throw InputError("compactification period must be at least 1");
  if (blocks_.empty()) throw InputError("compactification needs at least one block");
  if (blocks_.size() > 64) throw InputError("at most 64 points at infinity are supported");
  if (labels_.size() != blocks_.size()) throw InputError("one label per block is required");
  std::set<std::string> seen;
  for (const auto& l : labels_)
    if (!seen.insert(l).second) throw InputError("duplicate infinity label '" + l + "'");
  constexpr unsigned kUnset = ~0U;
  blockOf_.assign(period_, kUnset);
  for (unsigned i = 0; i < blocks_.size(); ++i) {
    auto& b = blocks_[i];
    if (b.empty()) throw InputError("block " + labels_[i] + " is empty");
    std::sort(b.begin(), b.end());
    for (unsigned r : b) {
      if (r >= period_)
        throw InputError("residue " + std::to_string(r) + " out of range for period " +
                         std::to_string(period_));
      if (blockOf_[r] != kUnset)
        throw InputError("blocks " + labels_[blockOf_[r]] + " and " + labels_[i] +
                         " share residue " + std::to_string(r));
      blockOf_[r] = i;
    }
  }
  for (unsigned r = 0; r < period_; ++r)
    if (blockOf_[r] == kUnset)
      throw InputError("residue " + std::to_string(r) + " is not covered by any block");
  for (const auto& b : blocks_) {
    std::vector<std::uint64_t> rs(b.begin(), b.end());
    regions_.push_back(ArithSet::make(0, period_, rs, {}));
  }
}

ArithCompactification ArithCompactification::onePoint() {
  return ArithCompactification(1, {{0}}, {"inf"});
}

ArithCompactification ArithCompactification::parity() {
  return ArithCompactification(2, {{0}, {1}}, {"inf_e", "inf_o"});
}

ArithCompactification ArithCompactification::singletons(unsigned period) {
  std::vector<std::vector<unsigned>> blocks;
  std::vector<std::string> labels;
  for (unsigned r = 0; r < period; ++r) {
    blocks.push_back({r});
    labels.push_back("inf_" + std::to_string(r));
  }
  return ArithCompactification(period, std::move(blocks), std::move(labels));
}

InfinitySet ArithCompactification::allInfinities() const {
  return points() >= 64 ? ~InfinitySet{0} : ((InfinitySet{1} << points()) - 1);
}

int ArithCompactification::labelIndex(const std::string& label) const {
  for (unsigned i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<int>(i);
  return -1;
}

std::vector<unsigned> ArithCompactification::liftedBlock(unsigned i, unsigned period) const {
  if (period % period_ != 0)
    throw InputError("period " + std::to_string(period) + " is not a multiple of " +
                     std::to_string(period_));
  std::vector<unsigned> out;
  for (unsigned r = 0; r < period; ++r)
    if (blockOf_[r % period_] == i) out.push_back(r);
  return out;
}

std::string ArithCompactification::print() const {
  std::string out = "compactify N period " + std::to_string(period_) + " blocks [";
  for (unsigned i = 0; i < blocks_.size(); ++i) {
    if (i) out += ", ";
    out += "{";
    for (std::size_t j = 0; j < blocks_[i].size(); ++j) {
      if (j) out += ",";
      out += std::to_string(blocks_[i][j]);
    }
    out += "} -> " + labels_[i];
  }
  return out + "]";
}

ArithCompactification ArithCompactification::parse(std::string_view text) {
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw InputError(msg + " at column " + std::to_string(i + 1), 1, i + 1);
  };
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto word = [&](std::string_view w) {
    skip();
    if (text.substr(i, w.size()) != w) fail("expected '" + std::string(w) + "'");
    i += w.size();
  };
  auto tryChar = [&](char c) {
    skip();
    if (i < text.size() && text[i] == c) {
      ++i;
      return true;
    }
    return false;
  };
  auto number = [&]() -> unsigned {
    skip();
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      fail("expected a natural number");
    unsigned v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      v = v * 10 + static_cast<unsigned>(text[i++] - '0');
    return v;
  };
  auto ident = [&]() {
    skip();
    std::size_t s = i;
    while (i < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' || text[i] == '\''))
      ++i;
    if (s == i) fail("expected an infinity label");
    return std::string(text.substr(s, i - s));
  };
  word("compactify");
  word("N");
  word("period");
  const unsigned p = number();
  word("blocks");
  if (!tryChar('[')) fail("expected '['");
  std::vector<std::vector<unsigned>> blocks;
  std::vector<std::string> labels;
  if (!tryChar(']')) {
    do {
      if (!tryChar('{')) fail("expected '{'");
      std::vector<unsigned> b;
      if (!tryChar('}')) {
        do {
          b.push_back(number());
        } while (tryChar(','));
        if (!tryChar('}')) fail("expected '}'");
      }
      word("->");
      blocks.push_back(std::move(b));
      labels.push_back(ident());
    } while (tryChar(','));
    if (!tryChar(']')) fail("expected ']'");
  }
  skip();
  if (i != text.size()) fail("trailing input");
  return ArithCompactification(p, std::move(blocks), std::move(labels));
}

std::string printYSubset(const ArithCompactification& y, const YSubset& s) {
  std::string out = s.trace.print() + " + {";
  bool first = true;
  for (unsigned i = 0; i < y.points(); ++i) {
    if (!((s.infinities >> i) & 1U)) continue;
    if (!first) out += ",";
    out += y.labels()[i];
    first = false;
  }
  return out + "}";
}

bool containsPoint(const YSubset& s, std::uint64_t n) { return s.trace.contains(n); }

bool subsetOf(const YSubset& a, const YSubset& b) {
  return isSubset(a.infinities, b.infinities) && a.trace.subsetOf(b.trace);
}

YSubset wholeSpace(const ArithCompactification& y) { return {ArithSet::all(), y.allInfinities()}; }

YSubset closure(const ArithCompactification& y, const YSubset& s) {
  YSubset out = s;
  for (unsigned i = 0; i < y.points(); ++i)
    if (!intersect(s.trace, y.region(i)).isFinite()) out.infinities |= InfinitySet{1} << i;
  return out;
}

YSubset interior(const ArithCompactification& y, const YSubset& s) {
  YSubset out{s.trace, 0};
  for (unsigned i = 0; i < y.points(); ++i)
    if (((s.infinities >> i) & 1U) && difference(y.region(i), s.trace).isFinite())
      out.infinities |= InfinitySet{1} << i;
  return out;
}

YSubset complementIn(const ArithCompactification& y, const YSubset& s) {
  return {complement(s.trace), y.allInfinities() & ~s.infinities};
}

YSubset unionOf(const YSubset& a, const YSubset& b) {
  return {unite(a.trace, b.trace), a.infinities | b.infinities};
}

YSubset intersectionOf(const YSubset& a, const YSubset& b) {
  return {intersect(a.trace, b.trace), a.infinities & b.infinities};
}

bool isOpen(const ArithCompactification& y, const YSubset& s) { return interior(y, s) == s; }

YSubset regularize(const ArithCompactification& y, const YSubset& s) {
  return interior(y, closure(y, s));
}

bool isRegularOpen(const ArithCompactification& y, const YSubset& s) {
  return isOpen(y, s) && regularize(y, s) == s;
}

namespace {
void requireRegularOpen(const ArithCompactification& y, const YSubset& s) {
  if (!isOpen(y, s)) throw NotRegularOpen(printYSubset(y, s) + " is not open");
  const auto r = regularize(y, s);
  if (!(r == s))
    throw NotRegularOpen(printYSubset(y, s) + " differs from int(cl(.)) = " + printYSubset(y, r));
}
}  // namespace

YSubset roAlgebraOp(RoOp kind, const ArithCompactification& y, const YSubset& u,
                    const YSubset& v) {
  requireRegularOpen(y, u);
  if (kind != RoOp::Neg) requireRegularOpen(y, v);
  switch (kind) {
    case RoOp::Join: return regularize(y, unionOf(u, v));
    case RoOp::Meet: {
      auto m = intersectionOf(u, v);
      requireRegularOpen(y, m);
      return m;
    }
    case RoOp::Neg: return interior(y, complementIn(y, u));
  }
  return u;
}

bool canonicalProximity(const ArithCompactification& y, const YSubset& u, const YSubset& v) {
  requireRegularOpen(y, u);
  requireRegularOpen(y, v);
  return subsetOf(closure(y, u), v);
}

YSubset regularOpenWithTrace(const ArithCompactification& y, const ArithSet& s) {
  return regularize(y, YSubset{s, 0});
}

}  // namespace dvw
