#include "fragment.hpp"

#include <algorithm>

namespace dvw {

Fragment::Fragment(unsigned threshold, unsigned period) : threshold_(threshold), period_(period) {
  if (threshold + period > kMaxWidth)
    throw InputError("fragment Frag(" + std::to_string(threshold) + "," + std::to_string(period) +
                     ") exceeds " + std::to_string(kMaxWidth) + " atoms");
}

unsigned Fragment::bitOf(std::uint64_t n) const {
  if (n < threshold_) return static_cast<unsigned>(n);
  if (period_ == 0) throw InputError("point " + std::to_string(n) + " outside finite universe");
  return threshold_ + static_cast<unsigned>(n % period_);
}

bool Fragment::fits(const ArithSet& s) const {
  if (period_ == 0) return s.isFinite() && s.threshold() <= threshold_;
  return s.threshold() <= threshold_ && period_ % s.period() == 0;
}

Mask Fragment::encode(const ArithSet& s) const {
  if (!fits(s)) throw InputError("set " + s.print() + " is not in " + describe());
  Mask m = 0;
  for (unsigned n = 0; n < threshold_; ++n)
    if (s.contains(n)) m |= Mask{1} << n;
  for (unsigned r = 0; r < period_; ++r) {
    const std::uint64_t n = threshold_ + (r + period_ - threshold_ % period_) % period_;
    if (s.contains(n)) m |= tailBit(r);
  }
  return m;
}

ArithSet Fragment::decode(Mask m) const {
  std::vector<bool> init(threshold_), tail(std::max(period_, 1U), false);
  for (unsigned n = 0; n < threshold_; ++n) init[n] = (m >> n) & 1U;
  for (unsigned r = 0; r < period_; ++r) tail[r] = (m & tailBit(r)) != 0;
  return ArithSet::fromBits(threshold_, std::move(init), std::move(tail));
}

bool Fragment::coarserOrEqual(const Fragment& finer) const {
  if (period_ == 0 || finer.period_ == 0) return *this == finer;
  return finer.threshold_ >= threshold_ && finer.period_ % period_ == 0;
}

Mask Fragment::refine(Mask m, const Fragment& finer) const {
  if (!coarserOrEqual(finer))
    throw InputError(describe() + " does not refine into " + finer.describe());
  if (*this == finer) return m;
  Mask out = m & ((Mask{1} << threshold_) - 1);
  for (unsigned n = threshold_; n < finer.threshold_; ++n)
    if (m & tailBit(n % period_)) out |= Mask{1} << n;
  for (unsigned r = 0; r < finer.period_; ++r)
    if (m & tailBit(r % period_)) out |= finer.tailBit(r);
  return out;
}

std::string Fragment::describe() const {
  if (period_ == 0) return "P(" + std::to_string(threshold_) + ")";
  return "Frag(" + std::to_string(threshold_) + "," + std::to_string(period_) + ")";
}

Fragment join(const Fragment& a, const Fragment& b) {
  if (a.isFinite() || b.isFinite()) {
    if (!(a == b)) throw InputError("cannot join " + a.describe() + " with " + b.describe());
    return a;
  }
  return Fragment(std::max(a.threshold(), b.threshold()),
                  static_cast<unsigned>(lcm64(a.period(), b.period())));
}

}  // namespace dvw
