#pragma once

#include "n4dd/semantics.hpp"
#include "n4dd/syntax.hpp"

// The negation-eliminating translation from the strong-negation language
// into the bot language over a signature extended with primed predicate
// copies, together with the model constructions that pair Nelsonian and
// intuitionistic structures across it.

namespace n4dd::embedding {

using semantics::KripkeModel;
using syntax::Formula;
using syntax::Signature;

struct TranslationError : std::runtime_error {
  explicit TranslationError(std::string msg) : std::runtime_error(std::move(msg)) {}
};

// Source signature plus the derived primed extension.
struct TranslationContext {
  Signature source;
  Signature target;  // adds P' for every P, plus =' (and E!' when free)

  explicit TranslationContext(const Signature& source);
};

// Structural translation:
//   atoms fixed;  ~P |-> P';  ~(t1=t2) |-> ='(t1,t2);  ~E!(t) |-> E!'(t);
//   homomorphic on & | -> forall exists and positive descriptions;
//   ~~A |-> tau(A);  ~(A->B) |-> tau(A) & tau(~B);
//   ~(A&B) |-> tau(~A) | tau(~B);  ~(A|B) |-> tau(~A) & tau(~B);
//   ~forall x A |-> exists x tau(~A);  ~exists x A |-> forall x tau(~A).
// A negated description is rejected (TranslationError): no clause exists
// for it.
Formula tau(Formula a);

// Same frame and domains; phi(P') at w set to the negative extension of P,
// =' to the negative identity; negative extensions are dropped. A validated
// Nelsonian model pairs to a validated intuitionistic model.
KripkeModel pair_model(const KripkeModel& nelsonian);

// The inverse construction over a primed-extension intuitionistic model.
KripkeModel unpair_model(const KripkeModel& intuitionistic);

}  // namespace n4dd::embedding
