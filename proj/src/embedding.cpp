#include "n4dd/embedding.hpp"

#include <cassert>

namespace n4dd::embedding {

using syntax::Kind;
using syntax::Term;

TranslationContext::TranslationContext(const Signature& src) : source(src) {
  target = src;
  target.primed = true;
  for (const auto& [name, arity] : src.predicates)
    target.predicates[name + "'"] = arity;
  target.predicates["='"] = 2;
  if (src.free_logic) target.predicates["E!'"] = 1;
}

namespace {

Formula tau_neg(Formula a);  // tau(~a)

Formula tau_pos(Formula a) {
  switch (a.kind()) {
    case Kind::Atom:
    case Kind::Identity:
    case Kind::Existence:
    case Kind::Falsum:
      return a;
    case Kind::Negation:
      return tau_neg(a.body());
    case Kind::Conjunction:
      return Formula::conj(tau_pos(a.lhs()), tau_pos(a.rhs()));
    case Kind::Disjunction:
      return Formula::disj(tau_pos(a.lhs()), tau_pos(a.rhs()));
    case Kind::Implication:
      return Formula::implies(tau_pos(a.lhs()), tau_pos(a.rhs()));
    case Kind::Forall:
      return Formula::forall(a.var(), tau_pos(a.body()));
    case Kind::Exists:
      return Formula::exists(a.var(), tau_pos(a.body()));
    case Kind::Description:
      return Formula::description(a.var(), tau_pos(a.lhs()), tau_pos(a.rhs()));
  }
  return a;
}

Formula tau_neg(Formula a) {
  switch (a.kind()) {
    case Kind::Atom:
      return Formula::atom(a.pred() + "'", a.args());
    case Kind::Identity:
      return Formula::atom("='", a.args());
    case Kind::Existence:
      return Formula::atom("E!'", a.args());
    case Kind::Falsum:
      throw TranslationError("negation cannot govern bot in the source language");
    case Kind::Negation:
      return tau_pos(a.body());
    case Kind::Conjunction:
      return Formula::disj(tau_neg(a.lhs()), tau_neg(a.rhs()));
    case Kind::Disjunction:
      return Formula::conj(tau_neg(a.lhs()), tau_neg(a.rhs()));
    case Kind::Implication:
      return Formula::conj(tau_pos(a.lhs()), tau_neg(a.rhs()));
    case Kind::Forall:
      return Formula::exists(a.var(), tau_neg(a.body()));
    case Kind::Exists:
      return Formula::forall(a.var(), tau_neg(a.body()));
    case Kind::Description:
      throw TranslationError(
          "no translation clause for a negated description quantifier");
  }
  throw TranslationError("unreachable");
}

}  // namespace

Formula tau(Formula a) { return tau_pos(a); }

KripkeModel pair_model(const KripkeModel& n) {
  assert(n.kind == semantics::StructureKind::Nelsonian);
  KripkeModel out = n;
  out.kind = semantics::StructureKind::Intuitionistic;
  const int W = static_cast<int>(n.worlds.size());

  std::map<std::string, semantics::PredicateExtension> preds;
  for (const auto& [name, ext] : n.predicates) {
    semantics::PredicateExtension pos;
    pos.arity = ext.arity;
    pos.pos = ext.pos;
    pos.neg.assign(W, {});
    preds[name] = std::move(pos);

    semantics::PredicateExtension primed;
    primed.arity = ext.arity;
    primed.pos = ext.neg;  // phi(P') at w is the negative extension of P
    primed.neg.assign(W, {});
    preds[name + "'"] = std::move(primed);
  }
  semantics::PredicateExtension ident;
  ident.arity = 2;
  ident.pos.assign(W, {});
  ident.neg.assign(W, {});
  for (int w = 0; w < W; ++w)
    for (const auto& [h1, h2] : n.neg_identity[w]) ident.pos[w].insert({h1, h2});
  preds["='"] = std::move(ident);

  out.predicates = std::move(preds);
  out.neg_identity.assign(W, {});
  return out;
}

KripkeModel unpair_model(const KripkeModel& i) {
  assert(i.kind == semantics::StructureKind::Intuitionistic);
  KripkeModel out = i;
  out.kind = semantics::StructureKind::Nelsonian;
  const int W = static_cast<int>(i.worlds.size());

  std::map<std::string, semantics::PredicateExtension> preds;
  for (const auto& [name, ext] : i.predicates) {
    if (!name.empty() && name.back() == '\'') continue;
    semantics::PredicateExtension e;
    e.arity = ext.arity;
    e.pos = ext.pos;
    auto primed = i.predicates.find(name + "'");
    if (primed != i.predicates.end())
      e.neg = primed->second.pos;
    else
      e.neg.assign(W, {});
    preds[name] = std::move(e);
  }
  out.predicates = std::move(preds);

  out.neg_identity.assign(W, {});
  auto ident = i.predicates.find("='");
  if (ident != i.predicates.end())
    for (int w = 0; w < W; ++w)
      for (const auto& tuple : ident->second.pos[w])
        out.neg_identity[w].insert({tuple[0], tuple[1]});
  return out;
}

}  // namespace n4dd::embedding
