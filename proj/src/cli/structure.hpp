#pragma once

// Structure files: one declaration per line, '#' starts a comment.
//
//   space Y = compactify N period 2 blocks [{0} -> inf_e, {1} -> inf_o]
//   space D = discrete 3
//   algebra A = powerset 2 prox order minus [{0} < {0}]
//   algebra R = ro Y
//   algebra P = powerset N
//   map f = affine modulus 2 pieces [n, n] from 0 table []
//   set S = {} ++ period 4 residues {0,3} from 0
//   function u : D -> E = [0, 1, 1]
//   morphism e : R -> P = pullback
//   morphism h : B -> A = table [{} -> {}, {0} -> {0,1}, ...]
//   cmorphism c : Y -> Y2 = map f infinities [inf_e -> inf_1, inf_o -> inf_2]
//
// The README lists every right-hand side form.

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "compactcat.hpp"

namespace dvw {

struct FiniteFunction {
  std::string from, to;
  std::vector<unsigned> values;
};

struct NamedCMorphism {
  std::string from, to;
  CMorphism m;
};

struct Structure {
  using Space = std::variant<FinDiscrete, ArithCompactification>;

  std::map<std::string, AlgebraPtr> algebras;
  std::map<std::string, Space> spaces;
  std::map<std::string, PiecewiseArithMap> maps;
  std::map<std::string, ArithSet> sets;
  std::map<std::string, FiniteFunction> functions;
  std::map<std::string, DVMorphism> morphisms;
  std::map<std::string, NamedCMorphism> cmorphisms;
  /// (kind, name) in declaration order.
  std::vector<std::pair<std::string, std::string>> order;

  std::vector<std::string> namesOf(const std::string& kind) const;
};

/// Throws InputError with the 1-based line and column of the problem.
Structure parseStructure(std::string_view text);

}  // namespace dvw
