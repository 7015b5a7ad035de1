#include "n4dd/search.hpp"

#include <set>
#include <sstream>

#include "doctest.h"
#include "n4dd/corpus.hpp"
#include "n4dd/formula_gen.hpp"

using namespace n4dd;
using namespace n4dd::search;
using semantics::KripkeModel;
using semantics::StructureKind;
using syntax::Formula;
using syntax::Lang;
using syntax::Signature;

namespace {

Bounds point_bounds(StructureKind kind, bool free_models) {
  Bounds b;
  b.kind = kind;
  b.free_models = free_models;
  b.predicates["P"] = {1, true, kind == StructureKind::Nelsonian};
  return b;
}

kernel::Sequent sequent_from(const std::string& corpus_name) {
  return kernel::parse_sequent_file(corpus::file(corpus_name));
}

}  // namespace

TEST_CASE("enumeration counts at point bounds") {
  // One world, one object, one intension. The ordinary Nelsonian space over
  // a unary P splits into P-extension x negative-P-extension x negative
  // identity, each independently empty or full: 2*2*2.
  Bounds ordinary = point_bounds(StructureKind::Nelsonian, false);
  CHECK(count_models(ordinary) == 8);

  // The free space adds the empty-existents configuration, where strictness
  // forces every extension empty: 8 + 1.
  Bounds free_b = point_bounds(StructureKind::Nelsonian, true);
  CHECK(count_models(free_b) == 9);

  // No predicates, intuitionistic, ordinary: a single structure.
  Bounds empty;
  empty.kind = StructureKind::Intuitionistic;
  CHECK(count_models(empty) == 1);
}

TEST_CASE("enumeration counts against a generate-and-filter oracle") {
  // Independent oracle at (1,1,1): build every data configuration directly
  // and keep those validate_model accepts.
  KripkeModel base = semantics::parse_model(R"(
kind: nelsonian
worlds: w0
objects: h0
intension d0 = w0:h0
domain w0: d0
pos P w0:
)");
  int valid = 0;
  for (int existent = 0; existent < 2; ++existent)
    for (int pos = 0; pos < 2; ++pos)
      for (int neg = 0; neg < 2; ++neg)
        for (int nid = 0; nid < 2; ++nid) {
          KripkeModel m = base;
          m.existent[0][0] = existent;
          if (pos) m.predicates["P"].pos[0].insert({0});
          if (neg) m.predicates["P"].neg[0].insert({0});
          if (nid) m.neg_identity[0].insert({0, 0});
          if (semantics::validate_model(m).empty()) ++valid;
        }
  CHECK(valid == 9);  // matches the free count above
  CHECK(count_models(point_bounds(StructureKind::Nelsonian, true)) == valid);
}

TEST_CASE("enumeration is deterministic, validated and duplicate-free") {
  Bounds b = point_bounds(StructureKind::Nelsonian, true);
  b.max_worlds = 2;
  b.constants = {"a"};
  auto models = all_models(b);
  CHECK(models.size() == count_models(b));
  std::set<std::string> prints;
  for (const auto& m : models) {
    CHECK(semantics::validate_model(m).empty());
    CHECK(prints.insert(semantics::print_model(m)).second);
  }
  auto again = all_models(b);
  REQUIRE(again.size() == models.size());
  for (std::size_t i = 0; i < models.size(); ++i)
    CHECK(semantics::print_model(again[i]) == semantics::print_model(models[i]));
}

TEST_CASE("ordinary enumeration keeps existents equal to domains") {
  Bounds b = point_bounds(StructureKind::Nelsonian, false);
  b.max_worlds = 2;
  b.max_objects = 2;
  b.max_intensions = 2;
  std::uint64_t seen = 0;
  enumerate_models(b, [&](const KripkeModel& m, std::uint64_t) {
    ++seen;
    CHECK(m.is_ordinary());
    return seen < 2000;  // spot-check a prefix
  });
  CHECK(seen > 100);
}

TEST_CASE("explosion has a paraconsistent countermodel at (1,1)") {
  kernel::Sequent s = sequent_from("explosion.seq");
  std::vector<Formula> fs(s.assumptions.begin(), s.assumptions.end());
  fs.push_back(s.conclusion);
  Bounds b = bounds_for(fs, StructureKind::Nelsonian, false, 1, 1, 1);
  Verdict v = find_countermodel(s, b);
  REQUIRE(v.found);
  CHECK(semantics::validate_model(v.model).empty());
  CHECK_FALSE(semantics::holds_sequent(v.model, s));
  // the countermodel emits in the model file format
  KripkeModel reparsed = semantics::parse_model(semantics::print_model(v.model));
  CHECK(semantics::print_model(reparsed) == semantics::print_model(v.model));
}

TEST_CASE("identity sequents admit no countermodel") {
  kernel::ProofScript p = kernel::parse_proof_script("(proof N4 (assume 1 P(a)))");
  kernel::Sequent s = kernel::check_proof(p.root, p.logic);
  Bounds b = bounds_for({s.conclusion}, StructureKind::Nelsonian, false, 2, 2, 2);
  Verdict v = find_countermodel(s, b);
  CHECK_FALSE(v.found);
  CHECK(v.models_examined == count_models(b));
}

TEST_CASE("intuitionistic explosion has no countermodel") {
  kernel::Sequent s = sequent_from("int-explosion.seq");
  std::vector<Formula> fs(s.assumptions.begin(), s.assumptions.end());
  fs.push_back(s.conclusion);
  for (int worlds = 1; worlds <= 2; ++worlds) {
    Bounds b = bounds_for(fs, StructureKind::Intuitionistic, false, worlds, 2, 2);
    CHECK_FALSE(find_countermodel(s, b).found);
  }
}

TEST_CASE("excluded middle fails at two worlds") {
  kernel::Sequent s = sequent_from("excluded-middle.seq");
  Bounds one = bounds_for({s.conclusion}, StructureKind::Intuitionistic, false, 1, 1, 1);
  CHECK_FALSE(find_countermodel(s, one).found);
  Bounds two = bounds_for({s.conclusion}, StructureKind::Intuitionistic, false, 2, 1, 1);
  Verdict v = find_countermodel(s, two);
  REQUIRE(v.found);
  CHECK_FALSE(semantics::holds_sequent(v.model, s));
}

TEST_CASE("double negation elimination holds in the Nelsonian semantics") {
  kernel::Sequent s = sequent_from("double-negation.seq");
  Bounds b = bounds_for({s.conclusion}, StructureKind::Nelsonian, false, 2, 2, 2);
  CHECK_FALSE(find_countermodel(s, b).found);
}

TEST_CASE("formula generator is deterministic, closed and capped") {
  formula_gen::Options opt;
  opt.depth = 2;
  opt.cap = 200;
  auto fs = formula_gen::closed_formulas(opt);
  CHECK(fs.size() == 200);
  std::set<std::string> prints;
  for (Formula f : fs) {
    CHECK(f.is_closed());
    CHECK(prints.insert(syntax::print(f)).second);
  }
  auto again = formula_gen::closed_formulas(opt);
  REQUIRE(again.size() == fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) CHECK(again[i] == fs[i]);

  formula_gen::Options bot = opt;
  bot.lang = Lang::Bot;
  for (Formula f : formula_gen::closed_formulas(bot))
    CHECK(syntax::language_violation(f, Lang::Bot).empty());
}
