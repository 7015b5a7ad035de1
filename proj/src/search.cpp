#include "n4dd/search.hpp"

#include <optional>
#include <sstream>

#include "n4dd/embedding.hpp"

namespace n4dd::search {

using syntax::Formula;
using syntax::Kind;
using syntax::Term;

namespace {

// Which extension components evaluation of f can touch, by polarity.
void touched(Formula f, bool neg, Bounds& b) {
  switch (f.kind()) {
    case Kind::Atom: {
      if (f.pred() == "E!'") break;  // value-set builtin
      auto [it, inserted] = b.predicates.try_emplace(
          f.pred(), PredicateBounds{static_cast<int>(f.args().size()), false, false});
      (neg ? it->second.with_neg : it->second.with_pos) = true;
      break;
    }
    case Kind::Identity:
      if (neg) b.with_neg_identity = true;
      break;
    case Kind::Existence:
    case Kind::Falsum:
      break;
    case Kind::Negation:
      touched(f.body(), !neg, b);
      return;
    case Kind::Conjunction:
    case Kind::Disjunction:
      touched(f.lhs(), neg, b);
      touched(f.rhs(), neg, b);
      return;
    case Kind::Implication:
      touched(f.lhs(), false, b);
      touched(f.rhs(), neg, b);
      return;
    case Kind::Forall:
    case Kind::Exists:
      touched(f.body(), neg, b);
      return;
    case Kind::Description:
      touched(f.lhs(), false, b);
      touched(f.rhs(), false, b);
      if (neg) {
        touched(f.lhs(), true, b);
        touched(f.rhs(), true, b);
        b.with_neg_identity = true;
      }
      return;
  }
  // collect named constants of atoms
  if (f.kind() == Kind::Atom || f.kind() == Kind::Identity ||
      f.kind() == Kind::Existence) {
    for (Term t : f.args())
      if (t.is_constant() && !syntax::is_reserved_constant_name(t.name()))
        b.constants.insert(t.name());
  }
}

}  // namespace

Bounds bounds_for(const std::vector<Formula>& formulas, StructureKind kind,
                  bool free_models, int worlds, int objects, int intensions) {
  Bounds b;
  b.max_worlds = worlds;
  b.max_objects = objects;
  b.max_intensions = intensions;
  b.kind = kind;
  b.free_models = free_models;
  b.with_neg_identity = false;
  for (Formula f : formulas) touched(f, false, b);
  for (auto& [name, pb] : b.predicates) {
    // components never touched stay out of the enumeration: their contents
    // cannot influence any check over these formulas
    if (kind != StructureKind::Nelsonian) pb.with_neg = false;
  }
  if (kind != StructureKind::Nelsonian) b.with_neg_identity = false;
  return b;
}

std::string Verdict::to_string() const {
  std::ostringstream out;
  if (found) {
    out << "countermodel found at world " << model.worlds[world] << " (model "
        << model_index << " of " << models_examined << " examined; " <<
        bounds.to_string() << ")";
  } else {
    out << "no countermodel within bounds (" << bounds.to_string() << "; "
        << models_examined << " models examined)";
  }
  return out.str();
}

Verdict find_countermodel(const kernel::Sequent& s, const Bounds& b) {
  std::vector<Formula> roots(s.assumptions.begin(), s.assumptions.end());
  roots.push_back(s.conclusion);
  for (Formula f : roots) {
    if (!f.is_closed())
      throw semantics::EvalError("countermodel search needs a closed sequent, got " +
                                 syntax::print(f));
    syntax::Lang lang = b.kind == StructureKind::Nelsonian ? syntax::Lang::Neg
                                                           : syntax::Lang::Bot;
    std::string bad = syntax::language_violation(f, lang);
    if (!bad.empty()) throw semantics::EvalError(bad);
  }

  semantics::EvalPlan plan(roots, b.max_intensions);
  std::optional<semantics::Evaluator> ev;

  Verdict v;
  v.bounds = b;
  enumerate_models(b, [&](const KripkeModel& m, std::uint64_t index) {
    v.models_examined = index + 1;
    if (ev)
      ev->reset(m);
    else
      ev.emplace(m, plan);
    const int W = static_cast<int>(m.worlds.size());
    for (int w = 0; w < W; ++w) {
      bool all = true;
      for (Formula f : s.assumptions)
        if (!ev->eval(f, w)) {
          all = false;
          break;
        }
      if (all && !ev->eval(s.conclusion, w)) {
        v.found = true;
        v.model = m;
        v.world = w;
        v.model_index = index;
        return false;
      }
    }
    return true;
  });

  if (v.found) {
    // replay: the countermodel must re-validate and re-falsify the query
    if (!validate_model(v.model).empty())
      throw semantics::EvalError("internal: enumerated countermodel fails validation");
    if (holds_sequent(v.model, s))
      throw semantics::EvalError("internal: countermodel does not falsify the sequent");
  }
  return v;
}

}  // namespace n4dd::search
