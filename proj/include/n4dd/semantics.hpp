#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "n4dd/kernel.hpp"
#include "n4dd/syntax.hpp"

// Finite Kripke structures for the intuitionistic and Nelsonian semantics,
// model validation, and formula evaluation.
//
// A structure is a seventuple (W, R, H, D, E, J, phi): worlds, a reflexive
// transitive accessibility relation, objects, intensions (total maps from
// worlds to objects), per-world domains and existents, the per-world value
// set J_w of the existents, and the extension assignment. Nelsonian models
// additionally carry per-world negative extensions and a negative identity
// relation.

namespace n4dd::semantics {

using syntax::Formula;
using syntax::Term;

enum class StructureKind : std::uint8_t { Intuitionistic, Nelsonian };

struct PredicateExtension {
  int arity = 1;
  // per world, tuples of object indices
  std::vector<std::set<std::vector<int>>> pos;
  std::vector<std::set<std::vector<int>>> neg;  // nelsonian only
};

struct KripkeModel {
  StructureKind kind = StructureKind::Nelsonian;
  std::vector<std::string> worlds;
  std::vector<std::vector<bool>> reach;  // [w][w'], expected refl+transitive

  std::vector<std::string> objects;  // H
  struct Intension {
    std::string name;
    std::vector<int> value;  // value[w]: object index
  };
  std::vector<Intension> intensions;        // D
  std::vector<std::vector<bool>> domain;    // D_w as [w][d]
  std::vector<std::vector<bool>> existent;  // E_w as [w][d]

  std::map<std::string, int> constants;  // name -> intension index
  std::map<std::string, PredicateExtension> predicates;
  std::vector<std::set<std::pair<int, int>>> neg_identity;  // per world

  int world_index(const std::string& name) const;
  int object_index(const std::string& name) const;

  // J_w: values of the existents at w, as a mask over objects.
  std::vector<bool> value_set(int w) const;
  bool is_ordinary() const;  // E_w == D_w at every world

  syntax::Signature signature() const;
  std::string to_string() const;  // model file format
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string clause;  // e.g. "reflexivity", "monotonicity", "strictness"
  std::string detail;
};

// Empty iff the model satisfies every structure condition. When
// require_ordinary is set, E_w = D_w is additionally demanded.
std::vector<Violation> validate_model(const KripkeModel& m,
                                      bool require_ordinary = false);

// ---------------------------------------------------------------------------
// Environments and evaluation

struct EvalError : std::runtime_error {
  explicit EvalError(std::string msg) : std::runtime_error(std::move(msg)) {}
};

// The injected-constant table: k{i} names intension i of the model.
struct Environment {
  const KripkeModel* model = nullptr;

  // Intension index of a closed term; throws EvalError (UnknownConstant).
  int resolve(Term t) const;
  static Term injected(int index) { return Term::injected(index); }
};

// Evaluation plans precompute every quantifier instantiation so evaluation
// allocates nothing. A plan may serve many models, as long as every model
// has at most `max_intensions` intensions and the formulas fit its kind.
class EvalPlan {
 public:
  EvalPlan(const std::vector<Formula>& roots, int max_intensions);
  ~EvalPlan();

  int node_of(Formula f) const;  // root or sub-plan id of a planned formula
  int size() const;

  EvalPlan(const EvalPlan&) = delete;
  EvalPlan& operator=(const EvalPlan&) = delete;

  struct Impl;
  const Impl& impl() const { return *impl_; }

 private:
  std::unique_ptr<Impl> impl_;
};

// Per-model evaluator with memoised results per (plan node, world).
// reset() rebinds it to another model, reusing internal buffers.
class Evaluator {
 public:
  Evaluator(const KripkeModel& m, const EvalPlan& plan);

  void reset(const KripkeModel& m);

  bool eval(int plan_node, int world);
  bool eval(Formula f, int world) { return eval(plan_.node_of(f), world); }

 private:
  bool compute(int plan_node, int world);

  const KripkeModel* m_;
  const EvalPlan& plan_;
  std::vector<std::vector<int>> existents_at_;  // per world, intension indices
  std::vector<std::vector<int>> succ_;          // per world, successor worlds
  std::vector<std::vector<bool>> jset_;         // per world, object mask
  std::vector<std::uint8_t> memo_;              // 0 unknown, 1 false, 2 true
};

// One-shot evaluation of a closed formula (builds a small plan internally).
// The formula language must match the model kind: the strong-negation
// language on Nelsonian models, the bot language on intuitionistic ones.
bool eval_formula(const KripkeModel& m, int world, Formula f);

// True iff at every world where all assumptions hold, the conclusion holds;
// formulas with free variables are checked under every assignment of
// intensions (via injected constants) to their free variables.
bool holds_sequent(const KripkeModel& m, const kernel::Sequent& s);

// The canonical unfolding of the positive description:
//   exists x. ((F & forall y. (F^x_y -> y=x)) & G)
// with a fresh uniqueness variable.
Formula description_unfolding(Formula descr);

// The canonical unfolding of the negated description:
//   forall x. ((~F | exists y. (F^x_y & ~y=x)) | ~G)
Formula negated_description_unfolding(Formula descr);

// ---------------------------------------------------------------------------
// Model files (line oriented; '#' starts a comment)
//
//   kind: nelsonian | intuitionistic
//   worlds: w0 w1 ...
//   rel: w0 w1  [w1 w1 ...]      # pairs; refl-transitive closure is taken
//   objects: h0 h1 ...
//   intension d0 = w0:h0 w1:h1
//   domain w0: d0 d1
//   exists w0: d0
//   const a = d0
//   pos P w0: (h0) (h1)
//   neg P w0: (h0,h1)            # nelsonian
//   neg= w0: (h0,h1)             # nelsonian

KripkeModel parse_model(std::string_view text);
std::string print_model(const KripkeModel& m);

}  // namespace n4dd::semantics
