#include "n4dd/semantics.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace n4dd::semantics {

using syntax::Kind;

// ---------------------------------------------------------------------------
// Model helpers

int KripkeModel::world_index(const std::string& name) const {
  for (std::size_t i = 0; i < worlds.size(); ++i)
    if (worlds[i] == name) return static_cast<int>(i);
  return -1;
}

int KripkeModel::object_index(const std::string& name) const {
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (objects[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<bool> KripkeModel::value_set(int w) const {
  std::vector<bool> j(objects.size(), false);
  for (std::size_t d = 0; d < intensions.size(); ++d)
    if (existent[w][d]) j[intensions[d].value[w]] = true;
  return j;
}

bool KripkeModel::is_ordinary() const {
  for (std::size_t w = 0; w < worlds.size(); ++w)
    if (existent[w] != domain[w]) return false;
  return true;
}

syntax::Signature KripkeModel::signature() const {
  syntax::Signature sig;
  for (const auto& [name, ext] : predicates) sig.predicates[name] = ext.arity;
  for (const auto& [name, d] : constants) sig.constants.insert(name);
  sig.free_logic = true;  // E! always evaluable on a model
  for (const auto& [name, ext] : predicates)
    if (!name.empty() && name.back() == '\'') sig.primed = true;
  return sig;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

std::string tuple_str(const KripkeModel& m, const std::vector<int>& tuple) {
  std::string s = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) s += ',';
    s += m.objects[tuple[i]];
  }
  return s + ")";
}

}  // namespace

std::vector<Violation> validate_model(const KripkeModel& m, bool require_ordinary) {
  std::vector<Violation> out;
  const int W = static_cast<int>(m.worlds.size());
  const int D = static_cast<int>(m.intensions.size());

  if (W == 0) out.push_back({"structure", "no worlds"});
  if (m.objects.empty()) out.push_back({"structure", "no objects"});
  if (m.intensions.empty()) out.push_back({"structure", "empty quantification domain"});

  for (int w = 0; w < W; ++w)
    if (!m.reach[w][w])
      out.push_back({"reflexivity", "world " + m.worlds[w] + " does not reach itself"});
  for (int a = 0; a < W; ++a)
    for (int b = 0; b < W; ++b)
      for (int c = 0; c < W; ++c)
        if (m.reach[a][b] && m.reach[b][c] && !m.reach[a][c])
          out.push_back({"transitivity", m.worlds[a] + " reaches " + m.worlds[b] +
                                             " reaches " + m.worlds[c] +
                                             " but not transitively"});

  for (int w = 0; w < W; ++w)
    for (int d = 0; d < D; ++d)
      if (m.existent[w][d] && !m.domain[w][d])
        out.push_back({"existents", "existent " + m.intensions[d].name +
                                        " outside the domain at " + m.worlds[w]});

  for (int a = 0; a < W; ++a)
    for (int b = 0; b < W; ++b) {
      if (!m.reach[a][b] || a == b) continue;
      for (int d = 0; d < D; ++d) {
        if (m.domain[a][d] && !m.domain[b][d])
          out.push_back({"domain monotonicity",
                         m.intensions[d].name + " in the domain at " + m.worlds[a] +
                             " but not at " + m.worlds[b]});
        if (m.existent[a][d] && !m.existent[b][d])
          out.push_back({"existent monotonicity",
                         m.intensions[d].name + " existent at " + m.worlds[a] +
                             " but not at " + m.worlds[b]});
      }
    }

  if (require_ordinary && !m.is_ordinary())
    out.push_back({"ordinary", "existents differ from the domain at some world"});

  if (m.kind == StructureKind::Intuitionistic) {
    for (const auto& [name, ext] : m.predicates)
      for (int w = 0; w < W; ++w)
        if (w < static_cast<int>(ext.neg.size()) && !ext.neg[w].empty())
          out.push_back({"kind", "negative extension of " + name +
                                     " in an intuitionistic model"});
    for (int w = 0; w < W; ++w)
      if (!m.neg_identity[w].empty())
        out.push_back({"kind", "negative identity in an intuitionistic model"});
  }

  // strictness and extension monotonicity
  for (const auto& [name, ext] : m.predicates) {
    for (int w = 0; w < W; ++w) {
      std::vector<bool> j = m.value_set(w);
      for (int polarity = 0; polarity < 2; ++polarity) {
        const auto& table = polarity ? ext.neg : ext.pos;
        if (w >= static_cast<int>(table.size())) continue;
        for (const auto& tuple : table[w]) {
          if (static_cast<int>(tuple.size()) != ext.arity)
            out.push_back({"arity", "tuple of wrong arity for " + name});
          for (int h : tuple)
            if (!j[h]) {
              out.push_back({"strictness",
                             (polarity ? "negative " : "") + name + " tuple " +
                                 tuple_str(m, tuple) + " at " + m.worlds[w] +
                                 " mentions a non-existent object"});
              break;
            }
        }
      }
    }
    for (int a = 0; a < W; ++a)
      for (int b = 0; b < W; ++b) {
        if (!m.reach[a][b] || a == b) continue;
        for (const auto& tuple : ext.pos[a])
          if (!ext.pos[b].count(tuple))
            out.push_back({"monotonicity", name + " tuple " + tuple_str(m, tuple) +
                                               " at " + m.worlds[a] + " missing at " +
                                               m.worlds[b]});
        for (const auto& tuple : ext.neg[a])
          if (!ext.neg[b].count(tuple))
            out.push_back({"monotonicity", "negative " + name + " tuple " +
                                               tuple_str(m, tuple) + " at " +
                                               m.worlds[a] + " missing at " +
                                               m.worlds[b]});
      }
  }

  for (int w = 0; w < W; ++w) {
    std::vector<bool> j = m.value_set(w);
    for (const auto& [h1, h2] : m.neg_identity[w])
      if (!j[h1] || !j[h2])
        out.push_back({"strictness", "negative identity pair at " + m.worlds[w] +
                                         " mentions a non-existent object"});
  }
  for (int a = 0; a < W; ++a)
    for (int b = 0; b < W; ++b) {
      if (!m.reach[a][b] || a == b) continue;
      for (const auto& pair : m.neg_identity[a])
        if (!m.neg_identity[b].count(pair))
          out.push_back({"monotonicity", "negative identity pair at " + m.worlds[a] +
                                             " missing at " + m.worlds[b]});
    }

  for (const auto& [name, d] : m.constants)
    if (d < 0 || d >= D)
      out.push_back({"constants", "constant " + name + " maps outside the domain"});

  return out;
}

// ---------------------------------------------------------------------------
// Environment

int Environment::resolve(Term t) const {
  if (t.is_variable()) throw EvalError("open formula: free variable " + t.name());
  const std::string& name = t.name();
  if (syntax::is_reserved_constant_name(name)) {
    int idx = std::stoi(name.substr(1));
    if (idx < 0 || idx >= static_cast<int>(model->intensions.size()))
      throw EvalError("unknown constant " + name);
    return idx;
  }
  auto it = model->constants.find(name);
  if (it == model->constants.end()) throw EvalError("unknown constant " + name);
  return it->second;
}

// ---------------------------------------------------------------------------
// Evaluation plans

namespace {

enum class Op : std::uint8_t {
  AtomPos, AtomNeg, IdentPos, IdentNeg, ExistPos, ExistNeg, FalsumOp,
  AndOp, OrOp, ImpOp, ForallOp, ExistsOp, DescrOp,
};

struct PlanNode {
  Op op;
  int a = -1, b = -1;
  std::string pred;
  std::vector<Term> args;
  std::vector<int> insts;                // per intension: instantiated body
  std::vector<int> insts2;               // description second argument
  std::vector<std::vector<int>> uniq;    // description uniqueness premises
};

// Fresh variable distinct from `avoid` and not free in any of `in`.
Term fresh_variable(const std::vector<Formula>& in, Term avoid) {
  static const char* names[] = {"y", "z", "u", "v", "w", "x"};
  for (const char* base : names) {
    Term cand = Term::variable(base);
    if (cand == avoid) continue;
    bool free = false;
    for (Formula f : in)
      if (f.has_free(cand)) { free = true; break; }
    if (!free) return cand;
  }
  for (int i = 0;; ++i) {
    Term cand = Term::variable("y" + std::to_string(i));
    if (cand == avoid) continue;
    bool free = false;
    for (Formula f : in)
      if (f.has_free(cand)) { free = true; break; }
    if (!free) return cand;
  }
}

}  // namespace

Formula description_unfolding(Formula d) {
  assert(d.kind() == Kind::Description);
  Term x = d.var();
  Formula f = d.lhs(), g = d.rhs();
  Term y = fresh_variable({f, g}, x);
  Formula uniqueness = Formula::forall(
      y, Formula::implies(syntax::substitute(f, x, y), Formula::identity(y, x)));
  return Formula::exists(x, Formula::conj(Formula::conj(f, uniqueness), g));
}

Formula negated_description_unfolding(Formula d) {
  assert(d.kind() == Kind::Description);
  Term x = d.var();
  Formula f = d.lhs(), g = d.rhs();
  Term y = fresh_variable({f, g}, x);
  Formula differs = Formula::exists(
      y, Formula::conj(syntax::substitute(f, x, y),
                       Formula::negation(Formula::identity(y, x))));
  return Formula::forall(
      x, Formula::disj(Formula::disj(Formula::negation(f), differs),
                       Formula::negation(g)));
}

struct EvalPlan::Impl {
  std::vector<PlanNode> nodes;
  std::map<std::pair<syntax::FormulaId, bool>, int> index;
  int kmax = 0;

  int build(Formula f, bool neg) {
    auto key = std::make_pair(f.id(), neg);
    auto it = index.find(key);
    if (it != index.end()) return it->second;

    PlanNode node{};
    switch (f.kind()) {
      case Kind::Atom:
        if (f.pred() == "E!'") {
          // primed copy of ~E!: true of values outside J, never stored
          node.op = neg ? Op::ExistPos : Op::ExistNeg;
          node.args = f.args();
        } else {
          // includes =': the paired models declare it as an ordinary predicate
          node.op = neg ? Op::AtomNeg : Op::AtomPos;
          node.pred = f.pred();
          node.args = f.args();
        }
        break;
      case Kind::Identity:
        node.op = neg ? Op::IdentNeg : Op::IdentPos;
        node.args = f.args();
        break;
      case Kind::Existence:
        node.op = neg ? Op::ExistNeg : Op::ExistPos;
        node.args = f.args();
        break;
      case Kind::Falsum:
        assert(!neg);
        node.op = Op::FalsumOp;
        break;
      case Kind::Negation:
        return memo(key, build(f.body(), !neg));
      case Kind::Conjunction:
        node.op = neg ? Op::OrOp : Op::AndOp;
        node.a = build(f.lhs(), neg);
        node.b = build(f.rhs(), neg);
        break;
      case Kind::Disjunction:
        node.op = neg ? Op::AndOp : Op::OrOp;
        node.a = build(f.lhs(), neg);
        node.b = build(f.rhs(), neg);
        break;
      case Kind::Implication:
        if (neg) {  // ~(A->B) is A and ~B at the current world
          node.op = Op::AndOp;
          node.a = build(f.lhs(), false);
          node.b = build(f.rhs(), true);
        } else {
          node.op = Op::ImpOp;
          node.a = build(f.lhs(), false);
          node.b = build(f.rhs(), false);
        }
        break;
      case Kind::Forall:
      case Kind::Exists: {
        bool universal = (f.kind() == Kind::Forall) != neg;
        node.op = universal ? Op::ForallOp : Op::ExistsOp;
        node.insts.resize(kmax);
        for (int d = 0; d < kmax; ++d)
          node.insts[d] =
              build(syntax::substitute(f.body(), f.var(), Term::injected(d)), neg);
        break;
      }
      case Kind::Description: {
        if (neg)
          return memo(key, build(negated_description_unfolding(f), false));
        node.op = Op::DescrOp;
        node.insts.resize(kmax);
        node.insts2.resize(kmax);
        node.uniq.assign(kmax, std::vector<int>(kmax, -1));
        for (int d = 0; d < kmax; ++d) {
          Formula fd = syntax::substitute(f.lhs(), f.var(), Term::injected(d));
          node.insts[d] = build(fd, false);
          node.insts2[d] =
              build(syntax::substitute(f.rhs(), f.var(), Term::injected(d)), false);
          for (int e = 0; e < kmax; ++e)
            node.uniq[d][e] = build(
                syntax::substitute_constant(fd, Term::injected(d), Term::injected(e)),
                false);
        }
        break;
      }
    }
    nodes.push_back(std::move(node));
    return memo(key, static_cast<int>(nodes.size()) - 1);
  }

  int memo(std::pair<syntax::FormulaId, bool> key, int id) {
    index[key] = id;
    return id;
  }
};

EvalPlan::EvalPlan(const std::vector<Formula>& roots, int max_intensions)
    : impl_(std::make_unique<Impl>()) {
  impl_->kmax = max_intensions;
  for (Formula f : roots) impl_->build(f, false);
}

EvalPlan::~EvalPlan() = default;

int EvalPlan::node_of(Formula f) const {
  auto it = impl_->index.find({f.id(), false});
  if (it == impl_->index.end()) throw EvalError("formula not in evaluation plan");
  return it->second;
}

int EvalPlan::size() const { return static_cast<int>(impl_->nodes.size()); }

// ---------------------------------------------------------------------------
// Evaluator

Evaluator::Evaluator(const KripkeModel& m, const EvalPlan& plan)
    : m_(&m), plan_(plan) {
  reset(m);
}

void Evaluator::reset(const KripkeModel& m) {
  m_ = &m;
  const int W = static_cast<int>(m.worlds.size());
  const int D = static_cast<int>(m.intensions.size());
  existents_at_.assign(W, {});
  succ_.assign(W, {});
  jset_.assign(W, {});
  for (int w = 0; w < W; ++w) {
    for (int d = 0; d < D; ++d)
      if (m.existent[w][d]) existents_at_[w].push_back(d);
    for (int v = 0; v < W; ++v)
      if (m.reach[w][v]) succ_[w].push_back(v);
    jset_[w] = m.value_set(w);
  }
  memo_.assign(static_cast<std::size_t>(plan_.size()) * W, 0);
}

bool Evaluator::eval(int node, int world) {
  std::uint8_t& slot =
      memo_[static_cast<std::size_t>(node) * m_->worlds.size() + world];
  if (slot) return slot == 2;
  bool value = compute(node, world);
  slot = value ? 2 : 1;
  return value;
}

bool Evaluator::compute(int node, int w) {
  const PlanNode& n = plan_.impl().nodes[node];
  const KripkeModel& model = *m_;
  Environment env{&model};
  auto value_at = [&](Term t) { return model.intensions[env.resolve(t)].value[w]; };

  switch (n.op) {
    case Op::AtomPos:
    case Op::AtomNeg: {
      auto it = model.predicates.find(n.pred);
      if (it == model.predicates.end()) throw EvalError("unknown predicate " + n.pred);
      std::vector<int> tuple;
      tuple.reserve(n.args.size());
      for (Term t : n.args) tuple.push_back(value_at(t));
      const auto& table = n.op == Op::AtomPos ? it->second.pos : it->second.neg;
      return table[w].count(tuple) != 0;
    }
    case Op::IdentPos: {
      int h1 = value_at(n.args[0]), h2 = value_at(n.args[1]);
      return h1 == h2 && jset_[w][h1];
    }
    case Op::IdentNeg: {
      int h1 = value_at(n.args[0]), h2 = value_at(n.args[1]);
      return model.neg_identity[w].count({h1, h2}) != 0;
    }
    case Op::ExistPos:
      return jset_[w][value_at(n.args[0])];
    case Op::ExistNeg:
      return !jset_[w][value_at(n.args[0])];
    case Op::FalsumOp:
      return false;
    case Op::AndOp:
      return eval(n.a, w) && eval(n.b, w);
    case Op::OrOp:
      return eval(n.a, w) || eval(n.b, w);
    case Op::ImpOp:
      for (int v : succ_[w])
        if (eval(n.a, v) && !eval(n.b, v)) return false;
      return true;
    case Op::ForallOp:
      for (int v : succ_[w])
        for (int d : existents_at_[v])
          if (!eval(n.insts[d], v)) return false;
      return true;
    case Op::ExistsOp:
      for (int d : existents_at_[w])
        if (eval(n.insts[d], w)) return true;
      return false;
    case Op::DescrOp: {
      for (int d : existents_at_[w]) {
        if (!eval(n.insts[d], w) || !eval(n.insts2[d], w)) continue;
        bool unique = true;
        for (int v : succ_[w]) {
          for (int e : existents_at_[v]) {
            for (int u : succ_[v]) {
              if (!eval(n.uniq[d][e], u)) continue;
              int hd = model.intensions[d].value[u], he = model.intensions[e].value[u];
              if (hd != he || !jset_[u][hd]) { unique = false; break; }
            }
            if (!unique) break;
          }
          if (!unique) break;
        }
        if (unique) return true;
      }
      return false;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// One-shot helpers

bool eval_formula(const KripkeModel& m, int world, Formula f) {
  if (!f.is_closed()) throw EvalError("open formula: " + syntax::print(f));
  syntax::Lang lang = m.kind == StructureKind::Nelsonian ? syntax::Lang::Neg
                                                         : syntax::Lang::Bot;
  std::string bad = syntax::language_violation(f, lang);
  if (!bad.empty()) throw EvalError(bad + " (model kind mismatch)");
  EvalPlan plan({f}, static_cast<int>(m.intensions.size()));
  Evaluator ev(m, plan);
  return ev.eval(f, world);
}

bool holds_sequent(const KripkeModel& m, const kernel::Sequent& s) {
  // Free variables range over the quantification domain via injected
  // constants; the sequent must be truth-preserving under every assignment.
  std::set<Term> fv;
  for (Formula f : s.assumptions)
    for (Term v : f.free_vars()) fv.insert(v);
  for (Term v : s.conclusion.free_vars()) fv.insert(v);
  std::vector<Term> vars(fv.begin(), fv.end());

  const int D = static_cast<int>(m.intensions.size());
  const int W = static_cast<int>(m.worlds.size());
  std::vector<int> assign(vars.size(), 0);

  std::vector<std::vector<Formula>> instantiations;  // per assignment: [prems..., concl]
  while (true) {
    std::vector<Formula> fs;
    for (Formula f : s.assumptions) {
      Formula g = f;
      for (std::size_t i = 0; i < vars.size(); ++i)
        g = syntax::substitute(g, vars[i], Term::injected(assign[i]));
      fs.push_back(g);
    }
    {
      Formula g = s.conclusion;
      for (std::size_t i = 0; i < vars.size(); ++i)
        g = syntax::substitute(g, vars[i], Term::injected(assign[i]));
      fs.push_back(g);
    }
    instantiations.push_back(std::move(fs));
    std::size_t i = 0;
    for (; i < vars.size(); ++i) {
      if (++assign[i] < D) break;
      assign[i] = 0;
    }
    if (i == vars.size()) break;
  }

  std::vector<Formula> roots;
  for (const auto& fs : instantiations)
    for (Formula f : fs) roots.push_back(f);
  EvalPlan plan(roots, D);
  Evaluator ev(m, plan);

  for (const auto& fs : instantiations) {
    for (int w = 0; w < W; ++w) {
      bool all = true;
      for (std::size_t i = 0; i + 1 < fs.size(); ++i)
        if (!ev.eval(fs[i], w)) { all = false; break; }
      if (all && !ev.eval(fs.back(), w)) return false;
    }
  }
  return true;
}

}  // namespace n4dd::semantics
