#include "n4dd/semantics.hpp"

#include "doctest.h"
#include "n4dd/corpus.hpp"

using namespace n4dd;
using namespace n4dd::semantics;
using syntax::Formula;
using syntax::Lang;
using syntax::Signature;
using syntax::Term;

namespace {

KripkeModel model_from(const std::string& text) { return parse_model(text); }

Formula neg_formula(const KripkeModel& m, const std::string& text) {
  Signature sig = m.signature();
  return syntax::parse_formula(text, sig, Lang::Neg);
}

Formula bot_formula(const KripkeModel& m, const std::string& text) {
  Signature sig = m.signature();
  return syntax::parse_formula(text, sig, Lang::Bot);
}

const char* kPoint = R"(
kind: nelsonian
worlds: w0
objects: h0
intension d0 = w0:h0
domain w0: d0
exists w0: d0
const a = d0
pos P w0: (h0)
neg P w0: (h0)
pos Q w0:
)";

}  // namespace

TEST_CASE("model files round-trip") {
  KripkeModel m = model_from(corpus::file("two-world.km"));
  CHECK(m.kind == StructureKind::Intuitionistic);
  CHECK(m.worlds.size() == 2);
  CHECK(m.reach[0][1]);
  CHECK_FALSE(m.reach[1][0]);
  KripkeModel n = parse_model(print_model(m));
  CHECK(print_model(n) == print_model(m));
}

TEST_CASE("validate_model accepts the bundled models") {
  for (const char* name : {"two-world.km", "paraconsistent-point.km"}) {
    KripkeModel m = model_from(corpus::file(name));
    auto violations = validate_model(m);
    CAPTURE(name);
    CHECK(violations.empty());
  }
}

TEST_CASE("validate_model flags monotonicity") {
  // phi_w0(P) not contained in phi_w1(P) along w0 R w1
  KripkeModel m = model_from(R"(
kind: intuitionistic
worlds: w0 w1
rel: w0 w1
objects: h0
intension d0 = w0:h0 w1:h0
domain w0: d0
domain w1: d0
exists w0: d0
exists w1: d0
pos P w0: (h0)
)");
  auto violations = validate_model(m);
  REQUIRE(!violations.empty());
  bool found = false;
  for (const auto& v : violations) found |= v.clause == "monotonicity";
  CHECK(found);
}

TEST_CASE("validate_model flags strictness for negative extensions") {
  // h0 is no existent's value, yet sits in a negative extension
  KripkeModel m = model_from(R"(
kind: nelsonian
worlds: w0
objects: h0 h1
intension d0 = w0:h0
intension d1 = w0:h1
domain w0: d0 d1
exists w0: d1
neg P w0: (h0)
)");
  auto violations = validate_model(m);
  REQUIRE(!violations.empty());
  CHECK(violations[0].clause == "strictness");
}

TEST_CASE("validate_model flags intuitionistic models with negative parts") {
  KripkeModel m = model_from(kPoint);
  m.kind = StructureKind::Intuitionistic;
  auto violations = validate_model(m);
  bool found = false;
  for (const auto& v : violations) found |= v.clause == "kind";
  CHECK(found);
}

TEST_CASE("ordinary check") {
  KripkeModel m = model_from(R"(
kind: nelsonian
worlds: w0
objects: h0
intension d0 = w0:h0
domain w0: d0
exists w0:
)");
  CHECK(validate_model(m).empty());
  CHECK_FALSE(validate_model(m, true).empty());
  CHECK_FALSE(m.is_ordinary());
}

TEST_CASE("intuitionistic evaluation of the implication ladder") {
  KripkeModel m = model_from(R"(
kind: intuitionistic
worlds: w0
objects: h0
intension d0 = w0:h0
domain w0: d0
exists w0: d0
const a = d0
pos P w0: (h0)
)");
  REQUIRE(validate_model(m).empty());
  CHECK(eval_formula(m, 0, bot_formula(m, "P(a)")));
  // P(a) -> bot: the single reflexive world has P(a) true and bot false
  CHECK_FALSE(eval_formula(m, 0, bot_formula(m, "P(a) -> bot")));
  // (P(a) -> bot) -> bot: the antecedent is false at the only world
  CHECK(eval_formula(m, 0, bot_formula(m, "(P(a) -> bot) -> bot")));
  CHECK(eval_formula(m, 0, bot_formula(m, "E!(a)")));
  CHECK(eval_formula(m, 0, bot_formula(m, "a=a")));
}

TEST_CASE("excluded middle fails on the two-world model") {
  KripkeModel m = model_from(corpus::file("two-world.km"));
  REQUIRE(validate_model(m).empty());
  Formula em = bot_formula(m, "P(a) | (P(a) -> bot)");
  CHECK_FALSE(eval_formula(m, 0, em));
  CHECK(eval_formula(m, 1, em));
}

TEST_CASE("paradefinite evaluation: truth and falsity are independent") {
  KripkeModel m = model_from(kPoint);
  REQUIRE(validate_model(m).empty());
  CHECK(eval_formula(m, 0, neg_formula(m, "P(a)")));
  CHECK(eval_formula(m, 0, neg_formula(m, "~P(a)")));
  CHECK(eval_formula(m, 0, neg_formula(m, "~~P(a)")) ==
        eval_formula(m, 0, neg_formula(m, "P(a)")));
  CHECK_FALSE(eval_formula(m, 0, neg_formula(m, "Q(a)")));
  CHECK_FALSE(eval_formula(m, 0, neg_formula(m, "~Q(a)")));
  // de-Morgan falsity with only one conjunct false
  KripkeModel n = m;
  n.predicates["Q"].neg[0].insert({0});
  REQUIRE(validate_model(n).empty());
  CHECK(eval_formula(n, 0, neg_formula(n, "~(P(a) & Q(a))")));
  CHECK(eval_formula(n, 0, neg_formula(n, "~(Q(a) & P(a))")));
  CHECK_FALSE(eval_formula(n, 0, neg_formula(n, "~(P(a) | Q(a))")));
}

TEST_CASE("negated quantifiers read at the current world over existents") {
  KripkeModel m = model_from(R"(
kind: nelsonian
worlds: w0 w1
rel: w0 w1
objects: h0 h1
intension d0 = w0:h0 w1:h0
intension d1 = w0:h1 w1:h1
domain w0: d0
domain w1: d0 d1
exists w0: d0
exists w1: d0 d1
neg P w1: (h1)
pos P w0: (h0)
pos P w1: (h0)
)");
  REQUIRE(validate_model(m).empty());
  // ~exists x. P(x) needs ~P everywhere at every successor: fails (h0 not ~P)
  CHECK_FALSE(eval_formula(m, 0, neg_formula(m, "~exists x. P(x)")));
  // ~forall x. P(x): some current existent is ~P; only at w1
  CHECK_FALSE(eval_formula(m, 0, neg_formula(m, "~forall x. P(x)")));
  CHECK(eval_formula(m, 1, neg_formula(m, "~forall x. P(x)")));
  // forall persists: at w0 it ranges over w1's existents too
  CHECK(eval_formula(m, 1, neg_formula(m, "exists x. ~P(x)")));
}

namespace {

// Literal transcription of the description truth clause, restricted to unary
// atomic arguments: an independent oracle for the evaluator.
bool descr_oracle(const KripkeModel& m, int w, const std::string& fpred,
                  const std::string& gpred) {
  const auto& fext = m.predicates.at(fpred);
  const auto& gext = m.predicates.at(gpred);
  const int W = static_cast<int>(m.worlds.size());
  const int D = static_cast<int>(m.intensions.size());
  auto holds = [&](const PredicateExtension& e, int world, int d) {
    return e.pos[world].count({m.intensions[d].value[world]}) != 0;
  };
  for (int d = 0; d < D; ++d) {
    if (!m.existent[w][d]) continue;
    if (!holds(fext, w, d) || !holds(gext, w, d)) continue;
    bool unique = true;
    for (int w1 = 0; w1 < W && unique; ++w1) {
      if (!m.reach[w][w1]) continue;
      for (int e = 0; e < D && unique; ++e) {
        if (!m.existent[w1][e]) continue;
        for (int w2 = 0; w2 < W; ++w2) {
          if (!m.reach[w1][w2]) continue;
          if (!holds(fext, w2, e)) continue;
          std::vector<bool> j = m.value_set(w2);
          int hd = m.intensions[d].value[w2];
          int he = m.intensions[e].value[w2];
          if (hd != he || !j[hd]) {
            unique = false;
            break;
          }
        }
      }
    }
    if (unique) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("description clause with the uniqueness quantification") {
  KripkeModel one = model_from(R"(
kind: intuitionistic
worlds: w0
objects: h0
intension d0 = w0:h0
domain w0: d0
exists w0: d0
pos F w0: (h0)
pos G w0: (h0)
)");
  REQUIRE(validate_model(one).empty());
  Formula descr = bot_formula(one, "I x[F(x), G(x)]");
  CHECK(eval_formula(one, 0, descr));
  CHECK(descr_oracle(one, 0, "F", "G"));

  // a second existent witnessing F with a different value breaks uniqueness
  KripkeModel two = model_from(R"(
kind: intuitionistic
worlds: w0
objects: h0 h1
intension d0 = w0:h0
intension d1 = w0:h1
domain w0: d0 d1
exists w0: d0 d1
pos F w0: (h0) (h1)
pos G w0: (h0)
)");
  REQUIRE(validate_model(two).empty());
  CHECK_FALSE(eval_formula(two, 0, bot_formula(two, "I x[F(x), G(x)]")));
  CHECK_FALSE(descr_oracle(two, 0, "F", "G"));

  // two intensions sharing their value do not break uniqueness
  KripkeModel shared = model_from(R"(
kind: intuitionistic
worlds: w0
objects: h0
intension d0 = w0:h0
intension d1 = w0:h0
domain w0: d0 d1
exists w0: d0 d1
pos F w0: (h0)
pos G w0: (h0)
)");
  REQUIRE(validate_model(shared).empty());
  CHECK(eval_formula(shared, 0, bot_formula(shared, "I x[F(x), G(x)]")));
  CHECK(descr_oracle(shared, 0, "F", "G"));
}

TEST_CASE("negated description evaluates as its unfolding") {
  KripkeModel m = model_from(R"(
kind: nelsonian
worlds: w0
objects: h0 h1
intension d0 = w0:h0
intension d1 = w0:h1
domain w0: d0 d1
exists w0: d0 d1
pos F w0: (h0) (h1)
pos G w0:
neg F w0:
neg G w0:
neg= w0: (h0,h1) (h1,h0)
)");
  REQUIRE(validate_model(m).empty());
  // two distinct F-witnesses: the description is false in the strong sense
  CHECK(eval_formula(m, 0, neg_formula(m, "~I x[F(x), G(x)]")));
  Formula unfold = negated_description_unfolding(
      neg_formula(m, "I x[F(x), G(x)]"));
  CHECK(eval_formula(m, 0, unfold));

  // dropping the negative identity pair kills the middle disjunct
  KripkeModel n = m;
  n.neg_identity[0].clear();
  REQUIRE(validate_model(n).empty());
  CHECK_FALSE(eval_formula(n, 0, neg_formula(n, "~I x[F(x), G(x)]")));
}

TEST_CASE("holds_sequent") {
  KripkeModel m = model_from(kPoint);
  kernel::ProofScript identity =
      kernel::parse_proof_script("(proof N4 (assume 1 P(a)))");
  kernel::Sequent s = kernel::check_proof(identity.root, identity.logic);
  CHECK(holds_sequent(m, s));

  // explosion fails on the paraconsistent point
  kernel::Sequent explosion;
  explosion.logic = *kernel::parse_logic_id("N4");
  syntax::Signature sig = m.signature();
  explosion.assumptions.insert(syntax::parse_formula("P(a)", sig, Lang::Neg));
  explosion.assumptions.insert(syntax::parse_formula("~P(a)", sig, Lang::Neg));
  explosion.conclusion = syntax::parse_formula("Q(a)", sig, Lang::Neg);
  CHECK_FALSE(holds_sequent(m, explosion));

  // open sequents range over all assignments: x=x fails when nothing exists
  KripkeModel empty_world = model_from(R"(
kind: nelsonian
worlds: w0
objects: h0
intension d0 = w0:h0
domain w0: d0
exists w0:
)");
  kernel::Sequent open;
  open.logic = *kernel::parse_logic_id("N4F");
  syntax::Signature esig = empty_world.signature();
  open.conclusion = syntax::parse_formula("x=x", esig, Lang::Neg);
  CHECK_FALSE(holds_sequent(empty_world, open));
  open.assumptions.insert(syntax::parse_formula("E!(x)", esig, Lang::Neg));
  CHECK(holds_sequent(empty_world, open));
}

TEST_CASE("heredity on a monotone chain") {
  KripkeModel m = model_from(R"(
kind: nelsonian
worlds: w0 w1
rel: w0 w1
objects: h0
intension d0 = w0:h0 w1:h0
domain w0: d0
domain w1: d0
exists w0: d0
exists w1: d0
const a = d0
pos P w0: (h0)
pos P w1: (h0)
neg Q w1: (h0)
pos Q w1:
)");
  REQUIRE(validate_model(m).empty());
  for (const char* text : {"P(a)", "~Q(a) | P(a)", "P(a) & (P(a) | ~Q(a))",
                           "exists x. P(x)", "forall x. P(x)"}) {
    Formula f = neg_formula(m, text);
    CAPTURE(text);
    CHECK(!(eval_formula(m, 0, f) && !eval_formula(m, 1, f)));
  }
}
