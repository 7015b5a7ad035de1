#include "n4dd/corpus.hpp"

#include "doctest.h"

using namespace n4dd;
using kernel::CheckError;
using kernel::CheckErrorKind;
using kernel::Sequent;
using syntax::Formula;

namespace {

Sequent check_named(const std::string& name) {
  kernel::ProofScript script = corpus::load_proof(name);
  return kernel::check_proof(script.root, script.logic);
}

void expect_sequent(const std::string& name, const std::string& logic,
                    const std::vector<std::string>& assumptions,
                    const std::string& conclusion) {
  kernel::ProofScript script = corpus::load_proof(name);
  CAPTURE(name);
  CHECK(kernel::print_logic_id(script.logic) == logic);
  Sequent s = kernel::check_proof(script.root, script.logic);
  syntax::Signature sig = script.signature;
  std::set<Formula> expected;
  for (const auto& text : assumptions)
    expected.insert(syntax::parse_formula(text, sig, script.logic.lang()));
  CHECK(s.assumptions == expected);
  CHECK(s.conclusion ==
        syntax::parse_formula(conclusion, sig, script.logic.lang()));
}

CheckErrorKind mutant_error(const std::string& text) {
  kernel::ProofScript script = kernel::parse_proof_script(text);
  try {
    kernel::check_proof(script.root, script.logic);
  } catch (const CheckError& e) {
    return e.kind;
  }
  FAIL("mutant unexpectedly accepted");
  return CheckErrorKind::PatternMismatch;
}

std::string mutate(const std::string& corpus_name, const std::string& from,
                   const std::string& to) {
  std::string text = corpus::file(corpus_name);
  auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  text.replace(pos, from.size(), to);
  return text;
}

}  // namespace

TEST_CASE("every bundled proof script checks") {
  auto names = corpus::proof_names();
  CHECK(names.size() >= 14);
  for (const auto& name : names) {
    CAPTURE(name);
    CHECK_NOTHROW(check_named(name));
  }
  CHECK_THROWS_AS(corpus::load_proof("no-such-entry"), corpus::UnknownCorpusEntry);
}

TEST_CASE("the negated-description unfolding derivations") {
  const std::string unfold =
      "forall x. ~F(x) | (exists z. F(z) & ~z=x) | ~G(x)";
  const std::string descr = "~I x[F(x), G(x)]";
  expect_sequent("n4-negI-unfold-1", "N4I", {descr}, unfold);
  expect_sequent("n4-negI-unfold-2", "N4I", {unfold}, descr);
  expect_sequent("n4f-negI-unfold-1", "N4FI", {descr}, unfold);
  expect_sequent("n4f-negI-unfold-2", "N4FI", {"E!(y)", unfold}, descr);
}

TEST_CASE("the description expansion derivations") {
  const std::string expansion =
      "exists x. (F(x) & forall y. (F(y) -> y=x)) & G(x)";
  const std::string descr = "I x[F(x), G(x)]";
  expect_sequent("russell-expansion-fwd", "N4I", {descr}, expansion);
  expect_sequent("russell-expansion-bwd", "N4I", {expansion}, descr);
  expect_sequent("n4f-russell-expansion-fwd", "N4FI", {descr}, expansion);
  expect_sequent("n4f-russell-expansion-bwd", "N4FI", {expansion}, descr);
}

TEST_CASE("supporting scripts") {
  expect_sequent("int-weakening", "INT", {}, "P(a) -> (Q(a) -> P(a))");
  expect_sequent("int-ex-falso", "INT", {"P(a) -> bot", "P(a)"}, "Q(a)");
  expect_sequent("intf-identity", "INTF", {"E!(a)"}, "a=a");
  expect_sequent("n4-demorgan", "N4", {"~(P(a) | Q(a))"}, "~P(a) & ~Q(a)");
  expect_sequent("n4-eq-symmetry", "N4", {"a=b"}, "b=a");
  expect_sequent("int-conj-comm", "INT", {"P(a) & Q(a)"}, "Q(a) & P(a)");
}

TEST_CASE("bot-free intuitionistic proofs re-check in the N4 family verbatim") {
  for (const char* name : {"int-weakening", "int-conj-comm"}) {
    kernel::ProofScript script = corpus::load_proof(name);
    CAPTURE(name);
    Sequent in_int = kernel::check_proof(script.root, script.logic);
    Sequent in_n4 = kernel::check_proof(script.root, *kernel::parse_logic_id("N4"));
    CHECK(in_int.assumptions == in_n4.assumptions);
    CHECK(in_int.conclusion == in_n4.conclusion);
  }
}

// One mutant per side-condition class; each must be rejected with exactly
// the targeted error class.
TEST_CASE("mutation suite") {
  // eigenvariable freshness
  CHECK(mutant_error("(proof N4 (allI' forall x. P(x) :var y (assume 1 P(y))))") ==
        CheckErrorKind::ProvisoViolation);
  CHECK(mutant_error("(proof N4 (exE' Q(a) :var y :discharge (2)"
                     " (assume 1 exists x. P(x))"
                     " (impE Q(a) (assume 3 P(y) -> Q(a)) (assume 2 P(y)))))") ==
        CheckErrorKind::ProvisoViolation);
  CHECK(mutant_error("(proof N4I (IE1' P(z) :var z :discharge ()"
                     " (assume 1 I x[F(x), G(x)]) (assume 4 P(z))))") ==
        CheckErrorKind::ProvisoViolation);
  // the unfolding proof with the description variable used as the eigenvariable
  CHECK(mutant_error(mutate("n4-negI-unfold-1.nd", ":var y :term x", ":var x :term x")) ==
        CheckErrorKind::ProvisoViolation);
  // eigenvariable occurring in the witness term
  CHECK(mutant_error("(proof N4FI (nIE Q(a) :var z :term z :discharge ()"
                     " (assume 1 ~I x[F(x), G(x)])"
                     " (assume 9 Q(a)) (assume 9 Q(a)) (assume 9 Q(a))))") ==
        CheckErrorKind::ProvisoViolation);
  // the variable condition on the one-premise negated-description rules
  CHECK(mutant_error("(proof N4I (nII1 ~I x[F(x), G(y)] :var y (assume 1 ~F(y))))") ==
        CheckErrorKind::ProvisoViolation);

  // "free for" violations
  CHECK(mutant_error("(proof N4 (allE' forall y. R(y, y) :term y"
                     " (assume 1 forall x. forall y. R(x, y))))") ==
        CheckErrorKind::SubstitutionError);
  CHECK(mutant_error("(proof N4 (exI' exists x. forall y. R(x, y) :term y"
                     " (assume 1 forall y. R(y, y))))") ==
        CheckErrorKind::SubstitutionError);

  // discharge mismatches
  CHECK(mutant_error("(proof N4 (impI P(a) -> Q(a) :discharge (1) (assume 1 Q(a))))") ==
        CheckErrorKind::DischargeError);
  CHECK(mutant_error(mutate("n4-negI-unfold-1.nd", ":discharge (2 3 4 5)",
                            ":discharge (2 3 4 5 9)")) ==
        CheckErrorKind::DischargeError);

  // rule-not-in-logic
  CHECK(mutant_error(mutate("int-conj-comm.nd", "(andI Q(a) & P(a)",
                            "(nnI Q(a) & P(a)")) == CheckErrorKind::RuleNotInLogic);
  CHECK(mutant_error(mutate("intf-identity.nd", "(eqI a=a", "(eqI' a=a")) ==
        CheckErrorKind::RuleNotInLogic);
  CHECK(mutant_error("(proof N4F (allE' P(a) :term a (assume 1 forall x. P(x))))") ==
        CheckErrorKind::RuleNotInLogic);
  CHECK(mutant_error("(proof N4 (botE Q(a) (assume 1 P(a))))") ==
        CheckErrorKind::RuleNotInLogic);

  // replacement restricted to literals / atoms
  CHECK(mutant_error("(proof N4 (eqE Q(b) & Q(b) (assume 1 a=b)"
                     " (assume 2 Q(a) & Q(a))))") ==
        CheckErrorKind::ProvisoViolation);
  CHECK(mutant_error("(proof INT (eqE Q(b) & Q(b) (assume 1 a=b)"
                     " (assume 2 Q(a) & Q(a))))") ==
        CheckErrorKind::ProvisoViolation);

  // pattern mismatches on description rules
  CHECK(mutant_error(mutate("russell-expansion-fwd.nd", ":term u :term z",
                            ":term u :term u")) == CheckErrorKind::PatternMismatch);
  CHECK(mutant_error(mutate("russell-expansion-bwd.nd", ":var u :term z", ":term z")) ==
        CheckErrorKind::PatternMismatch);
}

TEST_CASE("checking is deterministic") {
  for (int i = 0; i < 2; ++i) {
    Sequent s = check_named("n4f-negI-unfold-2");
    CHECK(s.to_string() ==
          check_named("n4f-negI-unfold-2").to_string());
  }
}
