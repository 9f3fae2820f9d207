#include "structure.hpp"

#include <cctype>

namespace dvw {

namespace {

class Line {
 public:
  Line(std::string_view text, std::size_t number) : s_(text), line_(number) {}

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool atEnd() {
    skip();
    return i_ == s_.size();
  }
  std::size_t column() const { return i_ + 1; }
  std::size_t line() const { return line_; }

  std::string word() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' ||
                              s_[i_] == '\''))
      ++i_;
    if (start == i_) fail("expected a name");
    return std::string(s_.substr(start, i_ - start));
  }
  bool tryWord(std::string_view w) {
    skip();
    if (s_.substr(i_, w.size()) != w) return false;
    const std::size_t end = i_ + w.size();
    if (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_'))
      return false;
    i_ = end;
    return true;
  }
  void expectWord(std::string_view w) {
    if (!tryWord(w)) fail("expected '" + std::string(w) + "'");
  }
  bool tryToken(std::string_view t) {
    skip();
    if (s_.substr(i_, t.size()) != t) return false;
    i_ += t.size();
    return true;
  }
  void expectToken(std::string_view t) {
    if (!tryToken(t)) fail("expected '" + std::string(t) + "'");
  }
  unsigned number() {
    skip();
    if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_])))
      fail("expected a natural number");
    std::uint64_t v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      v = v * 10 + static_cast<std::uint64_t>(s_[i_] - '0');
      if (v > 1'000'000) fail("number too large");
      ++i_;
    }
    return static_cast<unsigned>(v);
  }
  /// {i, j, ...} over atoms 0..atoms-1.
  Mask atomSet(unsigned atoms) {
    expectToken("{");
    Mask m = 0;
    if (tryToken("}")) return m;
    do {
      const std::size_t at = i_;
      const unsigned v = number();
      if (v >= atoms) {
        i_ = at;
        skip();
        fail("atom " + std::to_string(v) + " out of range for " + std::to_string(atoms) +
             " atoms");
      }
      m |= Mask{1} << v;
    } while (tryToken(","));
    expectToken("}");
    return m;
  }
  std::string_view rest() {
    skip();
    return s_.substr(i_);
  }
  void end() {
    if (!atEnd()) fail("unexpected text");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError(msg + " (line " + std::to_string(line_) + ", column " +
                         std::to_string(i_ + 1) + ")",
                     line_, i_ + 1);
  }

 private:
  std::string_view s_;
  std::size_t line_;
  std::size_t i_ = 0;
};

// Re-raise an error from a literal parser or constructor at this line.
template <class F>
auto delegate(Line& ln, F&& f) {
  (void)ln.rest();
  const std::size_t base = ln.column();
  try {
    return f();
  } catch (const InputError& e) {
    std::string msg = e.what();
    if (auto p = msg.find(" at column "); p != std::string::npos) msg.erase(p);
    const std::size_t col = e.column() ? base + e.column() - 1 : base;
    throw InputError(msg + " (line " + std::to_string(ln.line()) + ", column " +
                         std::to_string(col) + ")",
                     ln.line(), col);
  }
}

class Parser {
 public:
  Structure run(std::string_view text) {
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t nl = text.find('\n', pos);
      if (nl == std::string_view::npos) nl = text.size();
      std::string_view line = text.substr(pos, nl - pos);
      ++number;
      pos = nl + 1;
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      Line ln(line, number);
      if (ln.atEnd()) continue;
      declaration(ln);
    }
    if (st_.order.empty()) throw InputError("no structure", 0, 0);
    return std::move(st_);
  }

 private:
  void declaration(Line& ln) {
    const std::string kind = ln.word();
    const std::string name = ln.word();
    for (const auto& [k, n] : st_.order)
      if (n == name) ln.fail("'" + name + "' is already declared as a " + k);
    std::string from, to;
    if (kind == "function" || kind == "morphism" || kind == "cmorphism") {
      ln.expectToken(":");
      from = ln.word();
      ln.expectToken("->");
      to = ln.word();
    }
    ln.expectToken("=");
    if (kind == "space") {
      space(ln, name);
    } else if (kind == "algebra") {
      algebra(ln, name);
    } else if (kind == "map") {
      st_.maps.emplace(name, delegate(ln, [&] { return PiecewiseArithMap::parse(ln.rest()); }));
    } else if (kind == "set") {
      st_.sets.emplace(name, delegate(ln, [&] { return ArithSet::parse(ln.rest()); }));
    } else if (kind == "function") {
      function(ln, name, from, to);
    } else if (kind == "morphism") {
      morphism(ln, name, from, to);
    } else if (kind == "cmorphism") {
      cmorphism(ln, name, from, to);
    } else {
      throw InputError("unknown declaration '" + kind + "' (line " + std::to_string(ln.line()) +
                           ", column 1)",
                       ln.line(), 1);
    }
    st_.order.emplace_back(kind, name);
  }

  void space(Line& ln, const std::string& name) {
    if (ln.tryWord("discrete")) {
      const unsigned n = ln.number();
      if (n == 0 || n > 6) ln.fail("discrete spaces need 1 to 6 points");
      ln.end();
      st_.spaces.emplace(name, FinDiscrete{n});
      return;
    }
    st_.spaces.emplace(name,
                       delegate(ln, [&] { return ArithCompactification::parse(ln.rest()); }));
  }

  void algebra(Line& ln, const std::string& name) {
    if (ln.tryWord("ro")) {
      const std::string sp = ln.word();
      ln.end();
      const auto it = st_.spaces.find(sp);
      if (it == st_.spaces.end()) ln.fail("unknown space '" + sp + "'");
      if (const auto* d = std::get_if<FinDiscrete>(&it->second))
        st_.algebras.emplace(name, Algebra::regularOpen(*d, name));
      else
        st_.algebras.emplace(
            name, Algebra::regularOpen(std::get<ArithCompactification>(it->second), name));
      return;
    }
    ln.expectWord("powerset");
    if (ln.tryWord("N")) {
      ln.end();
      st_.algebras.emplace(name, Algebra::arithPowerset(name));
      return;
    }
    const unsigned atoms = ln.number();
    if (atoms == 0 || atoms > 6) ln.fail("finite algebras need 1 to 6 atoms");
    if (ln.atEnd()) {
      st_.algebras.emplace(name, Algebra::finitePowerset(atoms, name));
      return;
    }
    ln.expectWord("prox");
    const std::size_t n = std::size_t{1} << atoms;
    std::vector<Mask> rows(n, 0);
    bool minus = false;
    if (ln.tryWord("order")) {
      for (Mask a = 0; a < n; ++a)
        for (Mask b = 0; b < n; ++b)
          if (isSubset(a, b)) rows[a] |= Mask{1} << b;
      if (ln.atEnd()) {
        st_.algebras.emplace(name, Algebra::finiteTable(atoms, rows, name));
        return;
      }
      ln.expectWord("minus");
      minus = true;
    }
    ln.expectToken("[");
    if (!ln.tryToken("]")) {
      do {
        const Mask a = ln.atomSet(atoms);
        ln.expectToken("<");
        const Mask b = ln.atomSet(atoms);
        if (minus)
          rows[a] &= ~(Mask{1} << b);
        else
          rows[a] |= Mask{1} << b;
      } while (ln.tryToken(","));
      ln.expectToken("]");
    }
    ln.end();
    st_.algebras.emplace(name, Algebra::finiteTable(atoms, rows, name));
  }

  const FinDiscrete& discrete(Line& ln, const std::string& sp) {
    const auto it = st_.spaces.find(sp);
    if (it == st_.spaces.end()) ln.fail("unknown space '" + sp + "'");
    const auto* d = std::get_if<FinDiscrete>(&it->second);
    if (!d) ln.fail("'" + sp + "' is not a discrete space");
    return *d;
  }
  const ArithCompactification& arith(Line& ln, const std::string& sp) {
    const auto it = st_.spaces.find(sp);
    if (it == st_.spaces.end()) ln.fail("unknown space '" + sp + "'");
    const auto* y = std::get_if<ArithCompactification>(&it->second);
    if (!y) ln.fail("'" + sp + "' is not a compactification of N");
    return *y;
  }
  const AlgebraPtr& algebraNamed(Line& ln, const std::string& a) {
    const auto it = st_.algebras.find(a);
    if (it == st_.algebras.end()) ln.fail("unknown algebra '" + a + "'");
    return it->second;
  }
  const PiecewiseArithMap& mapNamed(Line& ln, const std::string& f) {
    const auto it = st_.maps.find(f);
    if (it == st_.maps.end()) ln.fail("unknown map '" + f + "'");
    return it->second;
  }

  void function(Line& ln, const std::string& name, const std::string& from, const std::string& to) {
    const unsigned n = discrete(ln, from).size;
    const unsigned m = discrete(ln, to).size;
    std::vector<unsigned> values;
    ln.expectToken("[");
    if (!ln.tryToken("]")) {
      do {
        const unsigned v = ln.number();
        if (v >= m) ln.fail("value " + std::to_string(v) + " is not a point of " + to);
        values.push_back(v);
      } while (ln.tryToken(","));
      ln.expectToken("]");
    }
    ln.end();
    if (values.size() != n)
      ln.fail("function needs " + std::to_string(n) + " values, got " +
              std::to_string(values.size()));
    st_.functions.emplace(name, FiniteFunction{from, to, values});
  }

  // [inf_a -> inf_b, ...] with exactly one entry for each infinity point of y.
  std::vector<unsigned> infinities(Line& ln, const ArithCompactification& y,
                                   const ArithCompactification& yp) {
    ln.expectWord("infinities");
    std::vector<unsigned> assign(y.points(), ~0U);
    ln.expectToken("[");
    if (!ln.tryToken("]")) {
      do {
        const std::string a = ln.word();
        const int i = y.labelIndex(a);
        if (i < 0) ln.fail("'" + a + "' is not an infinity point of the source");
        if (assign[i] != ~0U) ln.fail("'" + a + "' is assigned twice");
        ln.expectToken("->");
        const std::string b = ln.word();
        const int j = yp.labelIndex(b);
        if (j < 0) ln.fail("'" + b + "' is not an infinity point of the target");
        assign[i] = static_cast<unsigned>(j);
      } while (ln.tryToken(","));
      ln.expectToken("]");
    }
    ln.end();
    for (unsigned i = 0; i < assign.size(); ++i)
      if (assign[i] == ~0U) ln.fail("no image given for " + y.labels()[i]);
    return assign;
  }

  void morphism(Line& ln, const std::string& name, const std::string& from, const std::string& to) {
    const AlgebraPtr a = algebraNamed(ln, from);
    const AlgebraPtr b = algebraNamed(ln, to);
    const std::size_t rhsCol = ln.column();
    auto wrap = [&](const DVMorphism& m) {
      if (!m.domain()->sameAs(*a) || !m.codomain()->sameAs(*b)) {
        throw InputError("morphism '" + name + "' does not go from " + from + " to " + to +
                             " (line " + std::to_string(ln.line()) + ", column " +
                             std::to_string(rhsCol) + ")",
                         ln.line(), rhsCol);
      }
      st_.morphisms.emplace(name, DVMorphism(a, b, m.rulePtr(), name));
    };
    if (ln.tryWord("identity")) {
      ln.end();
      wrap(DVMorphism::identity(a));
    } else if (ln.tryWord("pullback")) {
      ln.end();
      if (a->kind() != Algebra::Kind::RegularOpen || !a->space())
        ln.fail("pullback needs the RO algebra of a compactification as domain");
      wrap(DVMorphism::pullback(*a->space()));
    } else if (ln.tryWord("preimage")) {
      const std::string f = ln.word();
      ln.end();
      if (auto it = st_.functions.find(f); it != st_.functions.end()) {
        if (a->isArithmetic() || b->isArithmetic()) ln.fail("finite preimage needs finite algebras");
        const auto& fn = it->second;
        if (a->atoms() != discrete(ln, fn.to).size || b->atoms() != discrete(ln, fn.from).size)
          ln.fail("preimage of " + f + " goes from P(" + fn.to + ") to P(" + fn.from + ")");
        wrap(delegate(ln, [&] { return DVMorphism::finitePreimage(a, b, fn.values, name); }));
      } else {
        wrap(DVMorphism::preimage(mapNamed(ln, f), name));
      }
    } else if (ln.tryWord("regularize")) {
      const PiecewiseArithMap& f = mapNamed(ln, ln.word());
      if (!a->space() || !b->space())
        ln.fail("regularize needs RO algebras of compactifications on both sides");
      const auto& yp = *a->space();
      const auto& y = *b->space();
      const auto assign = infinities(ln, y, yp);
      wrap(delegate(ln, [&] { return DVMorphism::regularizedPreimage(y, yp, f, assign, name); }));
    } else if (ln.tryWord("table")) {
      if (a->isArithmetic() || b->isArithmetic()) ln.fail("tables need finite algebras");
      const std::size_t n = std::size_t{1} << a->atoms();
      std::vector<Mask> images(n, 0);
      std::vector<bool> seen(n, false);
      ln.expectToken("[");
      if (!ln.tryToken("]")) {
        do {
          const Mask x = ln.atomSet(a->atoms());
          if (seen[x]) ln.fail(showAtoms(x, a->atoms()) + " is listed twice");
          ln.expectToken("->");
          images[x] = ln.atomSet(b->atoms());
          seen[x] = true;
        } while (ln.tryToken(","));
        ln.expectToken("]");
      }
      ln.end();
      for (Mask x = 0; x < n; ++x)
        if (!seen[x]) ln.fail("no image given for " + showAtoms(x, a->atoms()));
      st_.morphisms.emplace(name, DVMorphism::table(a, b, images, name));
    } else {
      ln.fail("expected identity, pullback, preimage, regularize or table");
    }
  }

  void cmorphism(Line& ln, const std::string& name, const std::string& from, const std::string& to) {
    const auto& y = arith(ln, from);
    const auto& yp = arith(ln, to);
    ln.expectWord("map");
    const PiecewiseArithMap& f = mapNamed(ln, ln.word());
    const auto assign = infinities(ln, y, yp);
    st_.cmorphisms.emplace(name, NamedCMorphism{from, to, CMorphism{f, f, assign}});
  }

  Structure st_;
};

}  // namespace

std::vector<std::string> Structure::namesOf(const std::string& kind) const {
  std::vector<std::string> out;
  for (const auto& [k, n] : order)
    if (k == kind) out.push_back(n);
  return out;
}

Structure parseStructure(std::string_view text) { return Parser().run(text); }

}  // namespace dvw
