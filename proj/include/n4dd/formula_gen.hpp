#pragma once

#include <string>
#include <vector>

#include "n4dd/syntax.hpp"

// Deterministic closed-formula corpora for the semantic sweeps: all closed
// formulas over one unary predicate, identity, one constant and one
// quantified variable, ordered by connective count and then by printed form,
// deduplicated by printed form, truncated at `cap`.

namespace n4dd::formula_gen {

struct Options {
  syntax::Lang lang = syntax::Lang::Neg;
  int depth = 3;              // maximum number of connectives
  std::size_t cap = 6000;     // canonical-prefix truncation
  bool with_descriptions = false;
  std::string predicate = "P";
  std::string constant = "a";
  std::string variable = "x";
};

std::vector<syntax::Formula> closed_formulas(const Options& opt);

}  // namespace n4dd::formula_gen
