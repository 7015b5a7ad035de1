#include "n4dd/syntax.hpp"

#include <random>
#include <set>

#include "doctest.h"

using namespace n4dd::syntax;

namespace {

Signature test_sig(bool free_logic = false, bool primed = false) {
  Signature sig;
  sig.predicates = {{"P", 1}, {"Q", 1}, {"R", 2}, {"F", 1}, {"G", 1}};
  if (primed)
    for (auto& [name, arity] : std::map<std::string, int>(sig.predicates))
      sig.predicates.emplace(name + "'", arity);
  sig.constants = {"a", "b", "c"};
  sig.free_logic = free_logic;
  sig.primed = primed;
  return sig;
}

Formula parse_neg(const std::string& text, bool free_logic = false) {
  Signature sig = test_sig(free_logic);
  return parse_formula(text, sig, Lang::Neg);
}

}  // namespace

TEST_CASE("parsing basic shapes") {
  Signature sig = test_sig();

  Formula f = parse_formula("P(a) & ~P(a)", sig, Lang::Neg);
  CHECK(f.kind() == Kind::Conjunction);
  CHECK(f.lhs().kind() == Kind::Atom);
  CHECK(f.rhs().kind() == Kind::Negation);
  CHECK(f.rhs().body() == f.lhs());

  Formula d = parse_formula("I x [F(x), ~G(x)]", sig, Lang::Neg);
  CHECK(d.kind() == Kind::Description);
  CHECK(d.var() == Term::variable("x"));
  CHECK(d.lhs() == parse_formula("F(x)", sig, Lang::Neg));
  CHECK(d.rhs() == parse_formula("~G(x)", sig, Lang::Neg));

  CHECK_THROWS_AS(parse_formula("forall x. P(x", sig, Lang::Neg), ParseError);
}

TEST_CASE("precedence and associativity") {
  Signature sig = test_sig();
  auto p = [&](const std::string& s) { return parse_formula(s, sig, Lang::Neg); };

  CHECK(p("P(a) & Q(a) | P(b)") == Formula::disj(p("P(a) & Q(a)"), p("P(b)")));
  CHECK(p("P(a) -> Q(a) -> P(b)") ==
        Formula::implies(p("P(a)"), p("Q(a) -> P(b)")));
  CHECK(p("P(a) | Q(a) | P(b)") == p("(P(a) | Q(a)) | P(b)"));
  CHECK(p("~P(a) & Q(a)") == Formula::conj(p("~P(a)"), p("Q(a)")));
  // quantifier scope extends maximally right
  CHECK(p("forall x. P(x) & Q(x)") ==
        Formula::forall(Term::variable("x"), p("P(x) & Q(x)")));
  CHECK(p("P(a) & (forall x. P(x))").rhs().kind() == Kind::Forall);
}

TEST_CASE("language tags") {
  Signature sig = test_sig();
  CHECK_THROWS_AS(parse_formula("~P(a)", sig, Lang::Bot), ParseError);
  CHECK_THROWS_AS(parse_formula("bot", sig, Lang::Neg), ParseError);
  CHECK(parse_formula("P(a) -> bot", sig, Lang::Bot).rhs().kind() == Kind::Falsum);

  Formula f = parse_formula("~P(a)", sig, Lang::Neg);
  CHECK(language_violation(f, Lang::Neg).empty());
  CHECK(!language_violation(f, Lang::Bot).empty());
}

TEST_CASE("signature errors") {
  Signature sig = test_sig();
  CHECK_THROWS_AS(parse_formula("S(a)", sig, Lang::Neg), ParseError);
  CHECK_THROWS_AS(parse_formula("P(a, b)", sig, Lang::Neg), ParseError);
  CHECK_THROWS_AS(parse_formula("P(d)", sig, Lang::Neg), ParseError);
  CHECK_THROWS_AS(parse_formula("E!(a)", sig, Lang::Neg), ParseError);
  CHECK_THROWS_AS(parse_formula("P'(a)", sig, Lang::Neg), ParseError);

  Signature free_sig = test_sig(true);
  CHECK(parse_formula("E!(a)", free_sig, Lang::Neg).kind() == Kind::Existence);

  Signature primed_sig = test_sig(false, true);
  CHECK(parse_formula("P'(a)", primed_sig, Lang::Bot).pred() == "P'");
  CHECK(parse_formula("='(a, b)", primed_sig, Lang::Bot).pred() == "='");

  // injected constants are reserved and always available
  CHECK(parse_formula("P(k0)", sig, Lang::Neg).args()[0] == Term::injected(0));
}

TEST_CASE("free variables") {
  CHECK(parse_neg("forall x. R(x, y)").free_vars() ==
        std::vector<Term>{Term::variable("y")});
  CHECK(parse_neg("I x[F(x), G(y)]").free_vars() ==
        std::vector<Term>{Term::variable("y")});
  CHECK(parse_neg("P(a)").free_vars().empty());
  CHECK(parse_neg("I x[F(x), G(x)]").is_closed());
}

TEST_CASE("is_free_for") {
  Term x = Term::variable("x");
  Term y = Term::variable("y");
  Term a = Term::constant("a");
  Formula all_y = parse_neg("forall y. R(x, y)");
  CHECK_FALSE(is_free_for(y, x, all_y));
  CHECK(is_free_for(a, x, all_y));
  CHECK(is_free_for(y, x, parse_neg("forall x. P(x)")));
}

TEST_CASE("substitute") {
  Term x = Term::variable("x");
  Term y = Term::variable("y");
  Term a = Term::constant("a");

  CHECK(substitute(parse_neg("P(x)"), x, a) == parse_neg("P(a)"));
  CHECK(substitute(parse_neg("forall x. P(x)"), x, a) == parse_neg("forall x. P(x)"));
  CHECK_THROWS_AS(substitute(parse_neg("forall y. R(x, y)"), x, y), CaptureError);

  // description binds in both arguments
  CHECK(substitute(parse_neg("I x[F(x), G(y)]"), y, a) == parse_neg("I x[F(x), G(a)]"));
  CHECK(substitute(parse_neg("I x[F(x), G(x)]"), x, a) == parse_neg("I x[F(x), G(x)]"));
}

TEST_CASE("substitute_constant") {
  Term k0 = Term::injected(0);
  Term k1 = Term::injected(1);
  Formula f = parse_neg("F(k0) & forall x. R(x, k0)");
  CHECK(substitute_constant(f, k0, k1) == parse_neg("F(k1) & forall x. R(x, k1)"));
}

namespace {

// Random well-formed formulas, depth <= 5.
struct Gen {
  std::mt19937 rng{20240817};
  Signature sig = test_sig(true);
  std::vector<Term> terms{Term::variable("x"), Term::variable("y"),
                          Term::constant("a"), Term::constant("b")};

  Term term() { return terms[rng() % terms.size()]; }
  Term var() { return rng() % 2 ? Term::variable("x") : Term::variable("y"); }

  Formula atom() {
    switch (rng() % 4) {
      case 0: return Formula::atom("P", {term()});
      case 1: return Formula::atom("R", {term(), term()});
      case 2: return Formula::identity(term(), term());
      default: return Formula::existence(term());
    }
  }

  Formula gen(int depth) {
    if (depth == 0) return atom();
    switch (rng() % 8) {
      case 0: return atom();
      case 1: return Formula::negation(gen(depth - 1));
      case 2: return Formula::conj(gen(depth - 1), gen(depth - 1));
      case 3: return Formula::disj(gen(depth - 1), gen(depth - 1));
      case 4: return Formula::implies(gen(depth - 1), gen(depth - 1));
      case 5: return Formula::forall(var(), gen(depth - 1));
      case 6: return Formula::exists(var(), gen(depth - 1));
      default: return Formula::description(var(), gen(depth - 1), gen(depth - 1));
    }
  }
};

}  // namespace

TEST_CASE("print/parse round-trip over a generated corpus") {
  Gen gen;
  for (int i = 0; i < 500; ++i) {
    Formula f = gen.gen(5);
    std::string s = print(f);
    CAPTURE(s);
    Formula g = parse_formula(s, gen.sig, Lang::Neg);
    CHECK(g == f);
    CHECK(print(g) == s);
  }
}

TEST_CASE("substitution properties over a generated corpus") {
  Gen gen;
  Term x = Term::variable("x");
  for (int i = 0; i < 500; ++i) {
    Formula f = gen.gen(4);
    Term t = gen.term();
    if (!f.has_free(x)) {
      CHECK(substitute(f, x, t) == f);
      continue;
    }
    if (!is_free_for(t, x, f)) {
      CHECK_THROWS_AS(substitute(f, x, t), CaptureError);
      continue;
    }
    Formula g = substitute(f, x, t);
    // free_vars(g) == (free_vars(f) \ {x}) u free_vars(t)
    std::set<Term> expect(f.free_vars().begin(), f.free_vars().end());
    expect.erase(x);
    if (t.is_variable()) expect.insert(t);
    std::set<Term> got(g.free_vars().begin(), g.free_vars().end());
    CHECK(got == expect);
  }
}
