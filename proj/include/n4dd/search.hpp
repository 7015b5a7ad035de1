#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "n4dd/kernel.hpp"
#include "n4dd/semantics.hpp"

// Bounded enumeration of finite models and countermodel search.

namespace n4dd::search {

using semantics::KripkeModel;
using semantics::StructureKind;

struct PredicateBounds {
  int arity = 1;
  bool with_pos = true;  // enumerate positive extensions
  bool with_neg = true;  // enumerate negative extensions (nelsonian only)
};

struct Bounds {
  int max_worlds = 1;
  int max_objects = 1;
  int max_intensions = 1;
  StructureKind kind = StructureKind::Nelsonian;
  bool free_models = false;  // when false, E_w = D_w everywhere (ordinary)
  std::map<std::string, PredicateBounds> predicates;
  std::set<std::string> constants;
  bool with_neg_identity = true;  // nelsonian only
  // Non-constant intensions are enumerated only while |W|*|H| stays within
  // this cap; beyond it intensions are restricted to constant functions.
  int intension_cap = 2;

  std::string to_string() const;
};

// Derives bounds whose signature and extension components cover exactly what
// evaluating the given formulas can touch.
Bounds bounds_for(const std::vector<syntax::Formula>& formulas, StructureKind kind,
                  bool free_models, int worlds, int objects, int intensions);

// Visits every validated model within bounds in a fixed canonical order:
// worlds, frame, objects, intensions, domains, existents, constants, then
// extensions as bit-vectors filtered by monotonicity and strictness. The
// model reference is only valid during the visit; return false to stop.
void enumerate_models(const Bounds& b,
                      const std::function<bool(const KripkeModel&, std::uint64_t)>& visit);

// Materialising convenience for small bounds.
std::vector<KripkeModel> all_models(const Bounds& b);

std::uint64_t count_models(const Bounds& b);

struct Verdict {
  bool found = false;
  KripkeModel model;  // validated countermodel when found
  int world = -1;
  std::uint64_t models_examined = 0;
  std::uint64_t model_index = 0;  // canonical index when found
  Bounds bounds;

  std::string to_string() const;
};

// First model (in canonical order) with a world where every assumption of s
// holds and the conclusion fails. The sequent must be closed. A found
// countermodel is re-validated and re-falsified before being returned.
Verdict find_countermodel(const kernel::Sequent& s, const Bounds& b);

}  // namespace n4dd::search
