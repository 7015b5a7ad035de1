#include "n4dd/kernel.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>

namespace n4dd::kernel {

using syntax::Kind;

// ---------------------------------------------------------------------------
// Logic ids

std::optional<LogicId> parse_logic_id(std::string_view text) {
  LogicId id;
  std::string_view rest;
  if (text.substr(0, 3) == "INT") {
    id.base = Base::Int;
    rest = text.substr(3);
  } else if (text.substr(0, 2) == "N4") {
    id.base = Base::N4;
    rest = text.substr(2);
  } else {
    return std::nullopt;
  }
  if (!rest.empty() && rest[0] == 'F') {
    id.free = true;
    rest = rest.substr(1);
  }
  if (!rest.empty() && rest[0] == 'I') {
    id.with_descr = true;
    rest = rest.substr(1);
  }
  if (!rest.empty()) return std::nullopt;
  return id;
}

std::string print_logic_id(const LogicId& logic) {
  std::string s = logic.base == Base::N4 ? "N4" : "INT";
  if (logic.free) s += 'F';
  if (logic.with_descr) s += 'I';
  return s;
}

std::vector<LogicId> all_logics() {
  std::vector<LogicId> out;
  for (Base b : {Base::N4, Base::Int})
    for (bool f : {false, true})
      for (bool d : {false, true}) out.push_back(LogicId{b, f, d});
  return out;
}

// ---------------------------------------------------------------------------
// Rule names

namespace {

struct RuleInfo {
  RuleId rule;
  const char* name;
};

const RuleInfo kRuleTable[] = {
    {RuleId::OrI1, "orI1"},       {RuleId::OrI2, "orI2"},
    {RuleId::OrE, "orE"},         {RuleId::ImpI, "impI"},
    {RuleId::ImpE, "impE"},       {RuleId::AndI, "andI"},
    {RuleId::AndE1, "andE1"},     {RuleId::AndE2, "andE2"},
    {RuleId::NegNegI, "nnI"},     {RuleId::NegNegE, "nnE"},
    {RuleId::NegImpI, "nimpI"},   {RuleId::NegImpE1, "nimpE1"},
    {RuleId::NegImpE2, "nimpE2"}, {RuleId::NegOrI, "norI"},
    {RuleId::NegOrE1, "norE1"},   {RuleId::NegOrE2, "norE2"},
    {RuleId::NegAndI1, "nandI1"}, {RuleId::NegAndI2, "nandI2"},
    {RuleId::NegAndE, "nandE"},   {RuleId::AllI, "allI"},
    {RuleId::AllE, "allE"},       {RuleId::NegAllI, "nallI"},
    {RuleId::NegAllE, "nallE"},   {RuleId::AllIp, "allI'"},
    {RuleId::AllEp, "allE'"},     {RuleId::NegAllIp, "nallI'"},
    {RuleId::NegAllEp, "nallE'"}, {RuleId::ExI, "exI"},
    {RuleId::ExE, "exE"},         {RuleId::NegExI, "nexI"},
    {RuleId::NegExE, "nexE"},     {RuleId::ExIp, "exI'"},
    {RuleId::ExEp, "exE'"},       {RuleId::NegExIp, "nexI'"},
    {RuleId::NegExEp, "nexE'"},   {RuleId::EqI, "eqI"},
    {RuleId::EqIp, "eqI'"},       {RuleId::EqE, "eqE"},
    {RuleId::PD, "PD"},           {RuleId::NegPD, "nPD"},
    {RuleId::DescrI, "II"},       {RuleId::DescrE1, "IE1"},
    {RuleId::DescrE2, "IE2"},     {RuleId::NegDescrE, "nIE"},
    {RuleId::NegDescrI1, "nII1"}, {RuleId::NegDescrI2, "nII2"},
    {RuleId::NegDescrI3, "nII3"}, {RuleId::DescrIp, "II'"},
    {RuleId::DescrE1p, "IE1'"},   {RuleId::DescrE2p, "IE2'"},
    {RuleId::NegDescrEp, "nIE'"}, {RuleId::NegDescrI3p, "nII3'"},
    {RuleId::BotE, "botE"},
};

}  // namespace

std::string rule_name(RuleId rule) {
  for (const auto& info : kRuleTable)
    if (info.rule == rule) return info.name;
  return "?";
}

std::optional<RuleId> parse_rule_name(std::string_view text) {
  for (const auto& info : kRuleTable)
    if (text == info.name) return info.rule;
  return std::nullopt;
}

const std::vector<RuleId>& all_rules() {
  static const std::vector<RuleId> rules = [] {
    std::vector<RuleId> out;
    for (const auto& info : kRuleTable) out.push_back(info.rule);
    return out;
  }();
  return rules;
}

std::set<RuleId> available_rules(const LogicId& logic) {
  std::set<RuleId> out = {RuleId::OrI1, RuleId::OrI2, RuleId::OrE,
                          RuleId::ImpI, RuleId::ImpE, RuleId::AndI,
                          RuleId::AndE1, RuleId::AndE2, RuleId::EqE};
  bool n4 = logic.is_n4();
  if (n4) {
    out.insert({RuleId::NegNegI, RuleId::NegNegE, RuleId::NegImpI,
                RuleId::NegImpE1, RuleId::NegImpE2, RuleId::NegOrI,
                RuleId::NegOrE1, RuleId::NegOrE2, RuleId::NegAndI1,
                RuleId::NegAndI2, RuleId::NegAndE});
  } else {
    out.insert(RuleId::BotE);
  }
  if (logic.free) {
    out.insert({RuleId::AllI, RuleId::AllE, RuleId::ExI, RuleId::ExE,
                RuleId::EqI, RuleId::PD});
    if (n4)
      out.insert({RuleId::NegAllI, RuleId::NegAllE, RuleId::NegExI,
                  RuleId::NegExE, RuleId::NegPD});
  } else {
    out.insert({RuleId::AllIp, RuleId::AllEp, RuleId::ExIp, RuleId::ExEp,
                RuleId::EqIp});
    if (n4)
      out.insert({RuleId::NegAllIp, RuleId::NegAllEp, RuleId::NegExIp,
                  RuleId::NegExEp});
  }
  if (logic.with_descr) {
    if (logic.free) {
      out.insert({RuleId::DescrI, RuleId::DescrE1, RuleId::DescrE2});
      if (n4)
        out.insert({RuleId::NegDescrE, RuleId::NegDescrI1, RuleId::NegDescrI2,
                    RuleId::NegDescrI3});
    } else {
      out.insert({RuleId::DescrIp, RuleId::DescrE1p, RuleId::DescrE2p});
      if (n4)
        out.insert({RuleId::NegDescrEp, RuleId::NegDescrI1, RuleId::NegDescrI2,
                    RuleId::NegDescrI3p});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Proof nodes

ProofNodePtr ProofNode::assume(int label, Formula f) {
  auto n = std::make_shared<ProofNode>();
  n->label = label;
  n->conclusion = f;
  return n;
}

ProofNodePtr ProofNode::infer(RuleId rule, Formula conclusion,
                              std::vector<int> discharges,
                              std::optional<Term> eigenvar,
                              std::vector<Term> witnesses,
                              std::vector<ProofNodePtr> premises) {
  auto n = std::make_shared<ProofNode>();
  n->rule = rule;
  n->conclusion = conclusion;
  n->discharges = std::move(discharges);
  n->eigenvar = eigenvar;
  n->witnesses = std::move(witnesses);
  n->premises = std::move(premises);
  return n;
}

std::string Sequent::to_string() const {
  std::vector<std::string> prems;
  for (Formula f : assumptions) prems.push_back(syntax::print(f));
  std::sort(prems.begin(), prems.end());
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < prems.size(); ++i) {
    if (i) out << ", ";
    out << prems[i];
  }
  out << "} |- " << syntax::print(conclusion);
  return out.str();
}

const char* check_error_kind_name(CheckErrorKind kind) {
  switch (kind) {
    case CheckErrorKind::RuleNotInLogic: return "RuleNotInLogic";
    case CheckErrorKind::PatternMismatch: return "PatternMismatch";
    case CheckErrorKind::ProvisoViolation: return "ProvisoViolation";
    case CheckErrorKind::DischargeError: return "DischargeError";
    case CheckErrorKind::SubstitutionError: return "SubstitutionError";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Checker

namespace {

bool contains_description(Formula f) {
  switch (f.kind()) {
    case Kind::Description:
      return true;
    case Kind::Atom:
    case Kind::Identity:
    case Kind::Existence:
    case Kind::Falsum:
      return false;
    case Kind::Negation:
    case Kind::Forall:
    case Kind::Exists:
      return contains_description(f.body());
    default:
      return contains_description(f.lhs()) || contains_description(f.rhs());
  }
}

class Checker {
 public:
  explicit Checker(const LogicId& logic)
      : logic_(logic), rules_(available_rules(logic)) {}

  Sequent run(const ProofNodePtr& root) {
    Checked c = check(root, "root");
    Sequent s;
    s.logic = logic_;
    s.conclusion = c.concl;
    for (const auto& [label, f] : c.open) s.assumptions.insert(f);
    return s;
  }

 private:
  struct Checked {
    Formula concl;
    std::map<int, Formula> open;  // label -> assumption formula
  };

  [[noreturn]] void fail(CheckErrorKind kind, const std::string& msg,
                         const std::string& path) {
    throw CheckError(kind, msg, path);
  }

  Formula subst(Formula a, Term x, Term t, const std::string& path) {
    try {
      return syntax::substitute(a, x, t);
    } catch (const syntax::CaptureError& e) {
      fail(CheckErrorKind::SubstitutionError,
           std::string("term not free for variable: ") + e.what(), path);
    }
  }

  void require(bool cond, CheckErrorKind kind, const std::string& msg,
               const std::string& path) {
    if (!cond) fail(kind, msg, path);
  }

  // Pattern helpers -----------------------------------------------------

  Formula want(Formula f, Kind k, const char* what, const std::string& path) {
    require(f.kind() == k, CheckErrorKind::PatternMismatch,
            std::string("expected ") + what + ", got " + syntax::print(f), path);
    return f;
  }

  Formula neg_body(Formula f, const char* what, const std::string& path) {
    want(f, Kind::Negation, what, path);
    return f.body();
  }

  bool is_atomic(Formula f) const {
    return f.kind() == Kind::Atom || f.kind() == Kind::Identity ||
           f.kind() == Kind::Existence;
  }

  bool is_literal(Formula f) const {
    if (is_atomic(f)) return true;
    return logic_.is_n4() && f.kind() == Kind::Negation && is_atomic(f.body());
  }

  // Discharge / proviso helpers -----------------------------------------

  // Removes this node's discharged labels from an open map.
  static std::map<int, Formula> minus_discharges(const std::map<int, Formula>& open,
                                                 const std::vector<int>& discharges) {
    std::map<int, Formula> out = open;
    for (int label : discharges) out.erase(label);
    return out;
  }

  // Each discharged label must be open in one of the designated premises and
  // carry one of the shapes allowed there.
  struct DischargeSlot {
    int premise;  // index into node->premises
    std::vector<Formula> shapes;
  };

  void check_discharges(const ProofNode& node,
                        const std::vector<Checked>& premises,
                        const std::vector<DischargeSlot>& slots,
                        const std::string& path) {
    for (int label : node.discharges) {
      bool matched = false;
      bool found = false;
      for (const auto& slot : slots) {
        auto it = premises[slot.premise].open.find(label);
        if (it == premises[slot.premise].open.end()) continue;
        found = true;
        for (Formula shape : slot.shapes) {
          if (it->second == shape) {
            matched = true;
            break;
          }
        }
        if (matched) break;
      }
      if (!found)
        fail(CheckErrorKind::DischargeError,
             "discharged label " + std::to_string(label) +
                 " is not an open assumption of the designated subproof",
             path);
      if (!matched)
        fail(CheckErrorKind::DischargeError,
             "assumption " + std::to_string(label) +
                 " does not match a dischargeable formula of this rule",
             path);
    }
  }

  // Eigenvariable freshness over a subproof: after discharging, no open
  // assumption may contain `y` free, except assumptions equal to a formula
  // in `exceptions`.
  void check_freshness(Term y, const Checked& premise,
                       const std::vector<int>& discharges,
                       const std::vector<Formula>& exceptions,
                       const std::string& path) {
    auto open = minus_discharges(premise.open, discharges);
    for (const auto& [label, f] : open) {
      bool excepted = false;
      for (Formula e : exceptions)
        if (f == e) { excepted = true; break; }
      if (!excepted && f.has_free(y))
        fail(CheckErrorKind::ProvisoViolation,
             "eigenvariable " + y.name() + " occurs free in undischarged assumption " +
                 syntax::print(f) + " (label " + std::to_string(label) + ")",
             path);
    }
  }

  void check_same_or_not_free(Term y, Term x, Formula a, const std::string& path) {
    if (y == x) return;
    if (a.has_free(y))
      fail(CheckErrorKind::ProvisoViolation,
           "eigenvariable " + y.name() + " must equal " + x.name() +
               " or not occur free in " + syntax::print(a),
           path);
  }

  void check_not_free_in_conclusion(Term y, Formula c, const std::string& path) {
    if (c.has_free(y))
      fail(CheckErrorKind::ProvisoViolation,
           "eigenvariable " + y.name() + " occurs free in the conclusion " +
               syntax::print(c),
           path);
  }

  Term eigenvar(const ProofNode& node, const std::string& path) {
    if (!node.eigenvar)
      fail(CheckErrorKind::PatternMismatch,
           rule_name(*node.rule) + " requires :var", path);
    return *node.eigenvar;
  }

  Term witness(const ProofNode& node, std::size_t i, std::size_t total,
               const std::string& path) {
    if (node.witnesses.size() != total)
      fail(CheckErrorKind::PatternMismatch,
           rule_name(*node.rule) + " requires " + std::to_string(total) +
               " :term parameter(s)",
           path);
    return node.witnesses[i];
  }

  void forbid_params(const ProofNode& node, bool var_ok, std::size_t nterms,
                     const std::string& path) {
    if (!var_ok && node.eigenvar)
      fail(CheckErrorKind::PatternMismatch,
           rule_name(*node.rule) + " takes no :var", path);
    if (node.witnesses.size() != nterms)
      fail(CheckErrorKind::PatternMismatch,
           rule_name(*node.rule) + " takes " + std::to_string(nterms) +
               " :term parameter(s)",
           path);
  }

  // ----------------------------------------------------------------------

  Checked check(const ProofNodePtr& node, const std::string& path);

  LogicId logic_;
  std::set<RuleId> rules_;
};

Checker::Checked Checker::check(const ProofNodePtr& nodep, const std::string& path) {
  const ProofNode& node = *nodep;

  if (!logic_.with_descr && contains_description(node.conclusion))
    fail(CheckErrorKind::PatternMismatch,
         "description quantifier used outside an I-logic", path);

  if (node.is_assumption()) {
    require(node.label >= 0, CheckErrorKind::DischargeError,
            "assumption without a label", path);
    return Checked{node.conclusion, {{node.label, node.conclusion}}};
  }

  RuleId rule = *node.rule;
  if (!rules_.count(rule))
    fail(CheckErrorKind::RuleNotInLogic,
         "rule " + rule_name(rule) + " is not part of " + print_logic_id(logic_),
         path);

  // Check premises, merge their open assumption maps.
  std::vector<Checked> prem;
  prem.reserve(node.premises.size());
  for (std::size_t i = 0; i < node.premises.size(); ++i)
    prem.push_back(check(node.premises[i], path + "." + std::to_string(i + 1)));

  std::map<int, Formula> open;
  for (const auto& p : prem) {
    for (const auto& [label, f] : p.open) {
      auto [it, inserted] = open.emplace(label, f);
      if (!inserted && it->second != f)
        fail(CheckErrorKind::DischargeError,
             "label " + std::to_string(label) + " names two different assumptions",
             path);
    }
  }

  auto expect_premises = [&](std::size_t n) {
    require(node.premises.size() == n, CheckErrorKind::PatternMismatch,
            rule_name(rule) + " expects " + std::to_string(n) + " premises",
            path);
  };
  auto no_discharge = [&]() {
    require(node.discharges.empty(), CheckErrorKind::DischargeError,
            rule_name(rule) + " discharges nothing", path);
  };

  Formula c = node.conclusion;
  std::vector<DischargeSlot> slots;

  switch (rule) {
    // --- non-negated propositional --------------------------------------
    case RuleId::OrI1:
      expect_premises(1);
      forbid_params(node, false, 0, path);
      no_discharge();
      want(c, Kind::Disjunction, "a disjunction", path);
      require(c.lhs() == prem[0].concl, CheckErrorKind::PatternMismatch,
              "left disjunct must equal the premise", path);
      break;
    case RuleId::OrI2:
      expect_premises(1);
      forbid_params(node, false, 0, path);
      no_discharge();
      want(c, Kind::Disjunction, "a disjunction", path);
      require(c.rhs() == prem[0].concl, CheckErrorKind::PatternMismatch,
              "right disjunct must equal the premise", path);
      break;
    case RuleId::OrE: {
      expect_premises(3);
      forbid_params(node, false, 0, path);
      Formula major = want(prem[0].concl, Kind::Disjunction, "a disjunction", path);
      require(prem[1].concl == c && prem[2].concl == c,
              CheckErrorKind::PatternMismatch,
              "both case subproofs must conclude the conclusion", path);
      slots = {{1, {major.lhs()}}, {2, {major.rhs()}}};
      check_discharges(node, prem, slots, path);
      break;
    }
    case RuleId::ImpI: {
      expect_premises(1);
      forbid_params(node, false, 0, path);
      want(c, Kind::Implication, "an implication", path);
      require(c.rhs() == prem[0].concl, CheckErrorKind::PatternMismatch,
              "consequent must equal the premise", path);
      slots = {{0, {c.lhs()}}};
      check_discharges(node, prem, slots, path);
      break;
    }
    case RuleId::ImpE: {
      expect_premises(2);
      forbid_params(node, false, 0, path);
      no_discharge();
      Formula major = want(prem[0].concl, Kind::Implication, "an implication", path);
      require(prem[1].concl == major.lhs(), CheckErrorKind::PatternMismatch,
              "minor premise must equal the antecedent", path);
      require(c == major.rhs(), CheckErrorKind::PatternMismatch,
              "conclusion must equal the consequent", path);
      break;
    }
    case RuleId::AndI:
      expect_premises(2);
      forbid_params(node, false, 0, path);
      no_discharge();
      want(c, Kind::Conjunction, "a conjunction", path);
      require(c.lhs() == prem[0].concl && c.rhs() == prem[1].concl,
              CheckErrorKind::PatternMismatch,
              "conjuncts must equal the premises", path);
      break;
    case RuleId::AndE1:
      expect_premises(1);
      forbid_params(node, false, 0, path);
      no_discharge();
      want(prem[0].concl, Kind::Conjunction, "a conjunction", path);
      require(c == prem[0].concl.lhs(), CheckErrorKind::PatternMismatch,
              "conclusion must be the left conjunct", path);
      break;
    case RuleId::AndE2:
      expect_premises(1);
      forbid_params(node, false, 0, path);
      no_discharge();
      want(prem[0].concl, Kind::Conjunction, "a conjunction", path);
      require(c == prem[0].concl.rhs(), CheckErrorKind::PatternMismatch,
              "conclusion must be the right conjunct", path);
      break;

    // --- negated propositional -------------------------------------------
    case RuleId::NegNegI:
      expect_premises(1);
      forbid_params(node, false, 0, path);
      no_discharge();
      require(c == Formula::negation(Formula::negation(prem[0].concl)),
              CheckErrorKind::PatternMismatch,
              "conclusion must be the double negation of the premise", path);
      break;
    case RuleId::NegNegE:
      expect_premises(1);
      forbid_params(node, false, 0, path);
      no_discharge();
      require(prem[0].concl == Formula::negation(Formula::negation(c)),
              CheckErrorKind::PatternMismatch,
              "premise must be the double negation of the conclusion", path);
      break;
    case RuleId::NegImpI: {
      expect_premises(2);
      forbid_params(node, false, 0, path);
      no_discharge();
      Formula imp = want(neg_body(c, "a negated implication", path),
                         Kind::Implication, "a negated implication", path);
      require(prem[0].concl == imp.lhs() &&
                  prem[1].concl == Formula::negation(imp.rhs()),
              CheckErrorKind::PatternMismatch,
              "premises must be the antecedent and the negated consequent", path);
      break;
    }
    case RuleId::NegImpE1: {
      expect_premises(1);
      forbid_params(node, false, 0, path);
      no_discharge();
      Formula imp = want(neg_body(prem[0].concl, "a negated implication", path),
                         Kind::Implication, "a negated implication", path);
      require(c == imp.lhs(), CheckErrorKind::PatternMismatch,
              "conclusion must be the antecedent", path);
      break;
    }
    case RuleId::NegImpE2: {
      expect_premises(1);
      forbid_params(node, false, 0, path);
      no_discharge();
      Formula imp = want(neg_body(prem[0].concl, "a negated implication", path),
                         Kind::Implication, "a negated implication", path);
      require(c == Formula::negation(imp.rhs()), CheckErrorKind::PatternMismatch,
              "conclusion must be the negated consequent", path);
      break;
    }
    case RuleId::NegOrI: {
      expect_premises(2);
      forbid_params(node, false, 0, path);
      no_discharge();
      Formula d = want(neg_body(c, "a negated disjunction", path),
                       Kind::Disjunction, "a negated disjunction", path);
      require(prem[0].concl == Formula::negation(d.lhs()) &&
                  prem[1].concl == Formula::negation(d.rhs()),
              CheckErrorKind::PatternMismatch,
              "premises must be the negated disjuncts", path);
      break;
    }
    case RuleId::NegOrE1: {
      expect_premises(1);
      forbid_params(node, false, 0, path);
      no_discharge();
      Formula d = want(neg_body(prem[0].concl, "a negated disjunction", path),
                       Kind::Disjunction, "a negated disjunction", path);
      require(c == Formula::negation(d.lhs()), CheckErrorKind::PatternMismatch,
              "conclusion must be the negated left disjunct", path);
      break;
    }
    case RuleId::NegOrE2: {
      expect_premises(1);
      forbid_params(node, false, 0, path);
      no_discharge();
      Formula d = want(neg_body(prem[0].concl, "a negated disjunction", path),
                       Kind::Disjunction, "a negated disjunction", path);
      require(c == Formula::negation(d.rhs()), CheckErrorKind::PatternMismatch,
              "conclusion must be the negated right disjunct", path);
      break;
    }
    case RuleId::NegAndI1: {
      expect_premises(1);
      forbid_params(node, false, 0, path);
      no_discharge();
      Formula a = want(neg_body(c, "a negated conjunction", path),
                       Kind::Conjunction, "a negated conjunction", path);
      require(prem[0].concl == Formula::negation(a.lhs()),
              CheckErrorKind::PatternMismatch,
              "premise must be the negated left conjunct", path);
      break;
    }
    case RuleId::NegAndI2: {
      expect_premises(1);
      forbid_params(node, false, 0, path);
      no_discharge();
      Formula a = want(neg_body(c, "a negated conjunction", path),
                       Kind::Conjunction, "a negated conjunction", path);
      require(prem[0].concl == Formula::negation(a.rhs()),
              CheckErrorKind::PatternMismatch,
              "premise must be the negated right conjunct", path);
      break;
    }
    case RuleId::NegAndE: {
      expect_premises(3);
      forbid_params(node, false, 0, path);
      Formula a = want(neg_body(prem[0].concl, "a negated conjunction", path),
                       Kind::Conjunction, "a negated conjunction", path);
      require(prem[1].concl == c && prem[2].concl == c,
              CheckErrorKind::PatternMismatch,
              "both case subproofs must conclude the conclusion", path);
      slots = {{1, {Formula::negation(a.lhs())}}, {2, {Formula::negation(a.rhs())}}};
      check_discharges(node, prem, slots, path);
      break;
    }

    // --- universal quantifier ---------------------------------------------
    case RuleId::AllI:
    case RuleId::AllIp: {
      expect_premises(1);
      Term y = eigenvar(node, path);
      forbid_params(node, true, 0, path);
      want(c, Kind::Forall, "a universal", path);
      Term x = c.var();
      Formula a = c.body();
      require(prem[0].concl == subst(a, x, y, path), CheckErrorKind::PatternMismatch,
              "premise must be the body instantiated at the eigenvariable", path);
      std::vector<Formula> exceptions;
      if (rule == RuleId::AllI) {
        slots = {{0, {Formula::existence(y)}}};
        check_discharges(node, prem, slots, path);
        exceptions.push_back(Formula::existence(y));
      } else {
        no_discharge();
      }
      check_freshness(y, prem[0], node.discharges, exceptions, path);
      check_same_or_not_free(y, x, a, path);
      break;
    }
    case RuleId::AllE:
    case RuleId::AllEp: {
      expect_premises(rule == RuleId::AllE ? 2 : 1);
      Term t = witness(node, 0, 1, path);
      no_discharge();
      Formula all = want(prem[0].concl, Kind::Forall, "a universal", path);
      if (rule == RuleId::AllE)
        require(prem[1].concl == Formula::existence(t),
                CheckErrorKind::PatternMismatch,
                "second premise must be E! of the witness term", path);
      require(c == subst(all.body(), all.var(), t, path),
              CheckErrorKind::PatternMismatch,
              "conclusion must be the body instantiated at the witness term", path);
      break;
    }
    case RuleId::NegAllI:
    case RuleId::NegAllIp: {
      expect_premises(rule == RuleId::NegAllI ? 2 : 1);
      Term t = witness(node, 0, 1, path);
      no_discharge();
      Formula all = want(neg_body(c, "a negated universal", path), Kind::Forall,
                         "a negated universal", path);
      if (rule == RuleId::NegAllI)
        require(prem[1].concl == Formula::existence(t),
                CheckErrorKind::PatternMismatch,
                "second premise must be E! of the witness term", path);
      require(prem[0].concl ==
                  Formula::negation(subst(all.body(), all.var(), t, path)),
              CheckErrorKind::PatternMismatch,
              "premise must be the negated instance at the witness term", path);
      break;
    }
    case RuleId::NegAllE:
    case RuleId::NegAllEp: {
      expect_premises(2);
      Term y = eigenvar(node, path);
      forbid_params(node, true, 0, path);
      Formula all = want(neg_body(prem[0].concl, "a negated universal", path),
                         Kind::Forall, "a negated universal", path);
      require(prem[1].concl == c, CheckErrorKind::PatternMismatch,
              "subproof must conclude the conclusion", path);
      Formula inst = Formula::negation(subst(all.body(), all.var(), y, path));
      std::vector<Formula> exceptions = {inst};
      slots = {{1, {inst}}};
      if (rule == RuleId::NegAllE) {
        slots[0].shapes.push_back(Formula::existence(y));
        exceptions.push_back(Formula::existence(y));
      }
      check_discharges(node, prem, slots, path);
      check_not_free_in_conclusion(y, c, path);
      check_freshness(y, prem[1], node.discharges, exceptions, path);
      check_same_or_not_free(y, all.var(), all.body(), path);
      break;
    }

    // --- existential quantifier --------------------------------------------
    case RuleId::ExI:
    case RuleId::ExIp: {
      expect_premises(rule == RuleId::ExI ? 2 : 1);
      Term t = witness(node, 0, 1, path);
      no_discharge();
      Formula ex = want(c, Kind::Exists, "an existential", path);
      if (rule == RuleId::ExI)
        require(prem[1].concl == Formula::existence(t),
                CheckErrorKind::PatternMismatch,
                "second premise must be E! of the witness term", path);
      require(prem[0].concl == subst(ex.body(), ex.var(), t, path),
              CheckErrorKind::PatternMismatch,
              "premise must be the body instantiated at the witness term", path);
      break;
    }
    case RuleId::ExE:
    case RuleId::ExEp: {
      expect_premises(2);
      Term y = eigenvar(node, path);
      forbid_params(node, true, 0, path);
      Formula ex = want(prem[0].concl, Kind::Exists, "an existential", path);
      require(prem[1].concl == c, CheckErrorKind::PatternMismatch,
              "subproof must conclude the conclusion", path);
      Formula inst = subst(ex.body(), ex.var(), y, path);
      std::vector<Formula> exceptions = {inst};
      slots = {{1, {inst}}};
      if (rule == RuleId::ExE) {
        slots[0].shapes.push_back(Formula::existence(y));
        exceptions.push_back(Formula::existence(y));
      }
      check_discharges(node, prem, slots, path);
      check_not_free_in_conclusion(y, c, path);
      check_freshness(y, prem[1], node.discharges, exceptions, path);
      check_same_or_not_free(y, ex.var(), ex.body(), path);
      break;
    }
    case RuleId::NegExI:
    case RuleId::NegExIp: {
      expect_premises(1);
      Term y = eigenvar(node, path);
      forbid_params(node, true, 0, path);
      Formula ex = want(neg_body(c, "a negated existential", path), Kind::Exists,
                        "a negated existential", path);
      require(prem[0].concl ==
                  Formula::negation(subst(ex.body(), ex.var(), y, path)),
              CheckErrorKind::PatternMismatch,
              "premise must be the negated instance at the eigenvariable", path);
      std::vector<Formula> exceptions;
      if (rule == RuleId::NegExI) {
        slots = {{0, {Formula::existence(y)}}};
        check_discharges(node, prem, slots, path);
        exceptions.push_back(Formula::existence(y));
      } else {
        no_discharge();
      }
      check_freshness(y, prem[0], node.discharges, exceptions, path);
      check_same_or_not_free(y, ex.var(), ex.body(), path);
      break;
    }
    case RuleId::NegExE:
    case RuleId::NegExEp: {
      expect_premises(rule == RuleId::NegExE ? 2 : 1);
      Term t = witness(node, 0, 1, path);
      no_discharge();
      Formula ex = want(neg_body(prem[0].concl, "a negated existential", path),
                        Kind::Exists, "a negated existential", path);
      if (rule == RuleId::NegExE)
        require(prem[1].concl == Formula::existence(t),
                CheckErrorKind::PatternMismatch,
                "second premise must be E! of the witness term", path);
      require(c == Formula::negation(subst(ex.body(), ex.var(), t, path)),
              CheckErrorKind::PatternMismatch,
              "conclusion must be the negated instance at the witness term", path);
      break;
    }

    // --- identity -----------------------------------------------------------
    case RuleId::EqI: {
      expect_premises(1);
      forbid_params(node, false, 0, path);
      no_discharge();
      want(c, Kind::Identity, "an identity", path);
      require(c.args()[0] == c.args()[1], CheckErrorKind::PatternMismatch,
              "conclusion must be of the form t=t", path);
      require(prem[0].concl == Formula::existence(c.args()[0]),
              CheckErrorKind::PatternMismatch, "premise must be E! of the term",
              path);
      break;
    }
    case RuleId::EqIp:
      expect_premises(0);
      forbid_params(node, false, 0, path);
      no_discharge();
      want(c, Kind::Identity, "an identity", path);
      require(c.args()[0] == c.args()[1], CheckErrorKind::PatternMismatch,
              "conclusion must be of the form t=t", path);
      break;
    case RuleId::EqE: {
      expect_premises(2);
      forbid_params(node, false, 0, path);
      no_discharge();
      Formula eq = want(prem[0].concl, Kind::Identity, "an identity", path);
      Term t1 = eq.args()[0], t2 = eq.args()[1];
      Formula from = prem[1].concl;
      if (!is_literal(from) || !is_literal(c))
        fail(CheckErrorKind::ProvisoViolation,
             logic_.is_n4()
                 ? "eqE applies to atomic formulas or their negations"
                 : "eqE applies to atomic formulas only",
             path);
      Formula from_core = from.kind() == Kind::Negation ? from.body() : from;
      Formula c_core = c.kind() == Kind::Negation ? c.body() : c;
      bool polarity_ok = (from.kind() == Kind::Negation) == (c.kind() == Kind::Negation);
      bool shape_ok = polarity_ok && from_core.kind() == c_core.kind() &&
                      (from_core.kind() != Kind::Atom ||
                       from_core.pred() == c_core.pred()) &&
                      from_core.args().size() == c_core.args().size();
      if (shape_ok) {
        for (std::size_t i = 0; i < from_core.args().size(); ++i) {
          Term a = from_core.args()[i], b = c_core.args()[i];
          if (a == b) continue;
          if (a == t1 && b == t2) continue;
          shape_ok = false;
          break;
        }
      }
      require(shape_ok, CheckErrorKind::PatternMismatch,
              "conclusion must replace occurrences of " + t1.name() + " by " +
                  t2.name() + " in the second premise",
              path);
      break;
    }

    // --- free-logic predicate rules ------------------------------------------
    case RuleId::PD:
    case RuleId::NegPD: {
      expect_premises(1);
      forbid_params(node, false, 0, path);
      no_discharge();
      Formula p = prem[0].concl;
      if (rule == RuleId::NegPD) p = neg_body(p, "a negated atom", path);
      require(p.kind() == Kind::Atom || p.kind() == Kind::Identity,
              CheckErrorKind::PatternMismatch,
              "premise must be a predicate atom or an identity", path);
      want(c, Kind::Existence, "E! of an argument term", path);
      bool found = false;
      for (Term t : p.args())
        if (t == c.args()[0]) { found = true; break; }
      require(found, CheckErrorKind::PatternMismatch,
              "E! conclusion must name an argument of the premise", path);
      break;
    }

    // --- descriptions ----------------------------------------------------------
    case RuleId::DescrI:
    case RuleId::DescrIp: {
      bool free_rule = rule == RuleId::DescrI;
      expect_premises(free_rule ? 4 : 3);
      Term y = eigenvar(node, path);
      Term t = witness(node, 0, 1, path);
      Formula d = want(c, Kind::Description, "a description", path);
      Term x = d.var();
      Formula f = d.lhs(), g = d.rhs();
      require(prem[0].concl == subst(f, x, t, path), CheckErrorKind::PatternMismatch,
              "first premise must be the first argument at the witness term", path);
      require(prem[1].concl == subst(g, x, t, path), CheckErrorKind::PatternMismatch,
              "second premise must be the second argument at the witness term", path);
      std::size_t minor = free_rule ? 3 : 2;
      if (free_rule)
        require(prem[2].concl == Formula::existence(t),
                CheckErrorKind::PatternMismatch,
                "third premise must be E! of the witness term", path);
      require(prem[minor].concl == Formula::identity(y, t),
              CheckErrorKind::PatternMismatch,
              "subproof must conclude eigenvariable = witness term", path);
      if (y == x)
        fail(CheckErrorKind::ProvisoViolation,
             "eigenvariable must differ from the description variable", path);
      if (y == t)
        fail(CheckErrorKind::ProvisoViolation,
             "eigenvariable must not occur in the witness term", path);
      Formula f_inst = subst(f, x, y, path);
      std::vector<Formula> exceptions = {f_inst};
      slots = {{static_cast<int>(minor), {f_inst}}};
      if (free_rule) {
        slots[0].shapes.push_back(Formula::existence(y));
        exceptions.push_back(Formula::existence(y));
      }
      check_discharges(node, prem, slots, path);
      check_freshness(y, prem[minor], node.discharges, exceptions, path);
      break;
    }
    case RuleId::DescrE1:
    case RuleId::DescrE1p: {
      bool free_rule = rule == RuleId::DescrE1;
      expect_premises(2);
      Term y = eigenvar(node, path);
      forbid_params(node, true, 0, path);
      Formula d = want(prem[0].concl, Kind::Description, "a description", path);
      Term x = d.var();
      require(prem[1].concl == c, CheckErrorKind::PatternMismatch,
              "subproof must conclude the conclusion", path);
      Formula f_inst = subst(d.lhs(), x, y, path);
      Formula g_inst = subst(d.rhs(), x, y, path);
      std::vector<Formula> exceptions = {f_inst, g_inst};
      slots = {{1, {f_inst, g_inst}}};
      if (free_rule) {
        slots[0].shapes.push_back(Formula::existence(y));
        exceptions.push_back(Formula::existence(y));
      }
      check_discharges(node, prem, slots, path);
      check_not_free_in_conclusion(y, c, path);
      check_freshness(y, prem[1], node.discharges, exceptions, path);
      if (y != x && (d.lhs().has_free(y) || d.rhs().has_free(y)))
        fail(CheckErrorKind::ProvisoViolation,
             "eigenvariable " + y.name() +
                 " must equal the description variable or not occur free in its arguments",
             path);
      break;
    }
    case RuleId::DescrE2:
    case RuleId::DescrE2p: {
      bool free_rule = rule == RuleId::DescrE2;
      expect_premises(free_rule ? 5 : 3);
      Term t1 = witness(node, 0, 2, path);
      Term t2 = witness(node, 1, 2, path);
      no_discharge();
      Formula d = want(prem[0].concl, Kind::Description, "a description", path);
      require(c == Formula::identity(t1, t2), CheckErrorKind::PatternMismatch,
              "conclusion must be t1=t2 over the witness terms", path);
      std::size_t base = 1;
      if (free_rule) {
        require(prem[1].concl == Formula::existence(t1) &&
                    prem[2].concl == Formula::existence(t2),
                CheckErrorKind::PatternMismatch,
                "premises must include E! of both witness terms", path);
        base = 3;
      }
      require(prem[base].concl == subst(d.lhs(), d.var(), t1, path) &&
                  prem[base + 1].concl == subst(d.lhs(), d.var(), t2, path),
              CheckErrorKind::PatternMismatch,
              "premises must instantiate the first argument at both witness terms",
              path);
      break;
    }
    case RuleId::NegDescrE:
    case RuleId::NegDescrEp: {
      bool free_rule = rule == RuleId::NegDescrE;
      expect_premises(4);
      Term y = eigenvar(node, path);
      Term t = witness(node, 0, 1, path);
      Formula d = want(neg_body(prem[0].concl, "a negated description", path),
                       Kind::Description, "a negated description", path);
      Term x = d.var();
      Formula f = d.lhs(), g = d.rhs();
      require(prem[1].concl == c && prem[2].concl == c && prem[3].concl == c,
              CheckErrorKind::PatternMismatch,
              "all case subproofs must conclude the conclusion", path);
      if (y == x)
        fail(CheckErrorKind::ProvisoViolation,
             "eigenvariable must differ from the description variable", path);
      if (y == t)
        fail(CheckErrorKind::ProvisoViolation,
             "eigenvariable must not occur in the witness term", path);
      Formula f_inst = subst(f, x, y, path);
      Formula not_f_t = Formula::negation(subst(f, x, t, path));
      Formula not_g_t = Formula::negation(subst(g, x, t, path));
      Formula neg_eq = Formula::negation(Formula::identity(y, t));
      std::vector<Formula> group = {f_inst, neg_eq};
      std::vector<Formula> exceptions = {f_inst};
      if (free_rule) {
        group.push_back(Formula::existence(y));
        exceptions.push_back(Formula::existence(y));
      }
      slots = {{1, {not_f_t}}, {2, {not_g_t}}, {3, group}};
      check_discharges(node, prem, slots, path);
      check_freshness(y, prem[3], node.discharges, exceptions, path);
      break;
    }
    case RuleId::NegDescrI1:
    case RuleId::NegDescrI2: {
      expect_premises(1);
      Term y = eigenvar(node, path);
      forbid_params(node, true, 0, path);
      no_discharge();
      Formula d = want(neg_body(c, "a negated description", path),
                       Kind::Description, "a negated description", path);
      Term x = d.var();
      Formula arg = rule == RuleId::NegDescrI1 ? d.lhs() : d.rhs();
      require(prem[0].concl == Formula::negation(subst(arg, x, y, path)),
              CheckErrorKind::PatternMismatch,
              "premise must be the negated argument instance at :var", path);
      if (y != x && (d.lhs().has_free(y) || d.rhs().has_free(y)))
        fail(CheckErrorKind::ProvisoViolation,
             "variable " + y.name() +
                 " must equal the description variable or not occur free in its arguments",
             path);
      break;
    }
    case RuleId::NegDescrI3:
    case RuleId::NegDescrI3p: {
      bool free_rule = rule == RuleId::NegDescrI3;
      expect_premises(free_rule ? 5 : 3);
      Term t1 = witness(node, 0, 2, path);
      Term t2 = witness(node, 1, 2, path);
      no_discharge();
      Formula d = want(neg_body(c, "a negated description", path),
                       Kind::Description, "a negated description", path);
      require(prem[0].concl == Formula::negation(Formula::identity(t1, t2)),
              CheckErrorKind::PatternMismatch,
              "first premise must be the negated identity of the witness terms",
              path);
      std::size_t base = 1;
      if (free_rule) {
        require(prem[1].concl == Formula::existence(t1) &&
                    prem[2].concl == Formula::existence(t2),
                CheckErrorKind::PatternMismatch,
                "premises must include E! of both witness terms", path);
        base = 3;
      }
      require(prem[base].concl == subst(d.lhs(), d.var(), t1, path) &&
                  prem[base + 1].concl == subst(d.lhs(), d.var(), t2, path),
              CheckErrorKind::PatternMismatch,
              "premises must instantiate the first argument at both witness terms",
              path);
      break;
    }

    // --- intuitionistic family ---------------------------------------------
    case RuleId::BotE:
      expect_premises(1);
      forbid_params(node, false, 0, path);
      no_discharge();
      require(prem[0].concl == Formula::falsum(), CheckErrorKind::PatternMismatch,
              "premise must be bot", path);
      break;
  }

  return Checked{c, minus_discharges(open, node.discharges)};
}

}  // namespace

Sequent check_proof(const ProofNodePtr& p, const LogicId& logic) {
  return Checker(logic).run(p);
}

// ---------------------------------------------------------------------------
// Proof scripts

namespace {

struct ScriptParser {
  std::string_view src;
  std::size_t i = 0;
  syntax::Signature sig;
  syntax::Lang lang = syntax::Lang::Neg;

  [[noreturn]] void fail(const std::string& msg) {
    throw syntax::ParseError(msg, i);
  }

  void skip_ws() {
    while (i < src.size()) {
      if (src[i] == '#') {
        while (i < src.size() && src[i] != '\n') ++i;
      } else if (std::isspace(static_cast<unsigned char>(src[i]))) {
        ++i;
      } else {
        break;
      }
    }
  }

  void expect_char(char c) {
    skip_ws();
    if (i >= src.size() || src[i] != c)
      fail(std::string("expected '") + c + "'");
    ++i;
  }

  std::string word() {
    skip_ws();
    std::size_t start = i;
    while (i < src.size() && !std::isspace(static_cast<unsigned char>(src[i])) &&
           src[i] != '(' && src[i] != ')')
      ++i;
    if (start == i) fail("expected a word");
    return std::string(src.substr(start, i - start));
  }

  // '(' begins a child node iff the word after it is "assume" or a rule
  // name; rule names are reserved and may not be used as predicate names.
  bool starts_child(std::size_t pos) const {
    std::size_t j = pos + 1;
    while (j < src.size() && std::isspace(static_cast<unsigned char>(src[j]))) ++j;
    std::size_t start = j;
    while (j < src.size() && !std::isspace(static_cast<unsigned char>(src[j])) &&
           src[j] != '(' && src[j] != ')')
      ++j;
    std::string_view w = src.substr(start, j - start);
    return w == "assume" || parse_rule_name(w).has_value();
  }

  // Formula text runs to the first top-level ':' keyword, '(' that begins a
  // child node, or the node's closing ')'.
  std::string formula_text() {
    skip_ws();
    std::size_t start = i;
    int depth = 0;
    while (i < src.size()) {
      char c = src[i];
      if (c == '#') {
        while (i < src.size() && src[i] != '\n') ++i;
        continue;
      }
      if (depth == 0 && (c == ':' || c == ')')) break;
      if (depth == 0 && c == '(' && starts_child(i)) break;
      if (c == '(' || c == '[') ++depth;
      if (c == ')' || c == ']') --depth;
      ++i;
    }
    if (i == start) fail("expected a formula");
    return std::string(src.substr(start, i - start));
  }

  Formula parse_formula(const std::string& text) {
    try {
      return syntax::parse_formula_infer(text, sig, lang);
    } catch (const syntax::ParseError& e) {
      throw syntax::ParseError(std::string("in proof script formula: ") + e.what(),
                               i);
    }
  }

  ProofNodePtr node() {
    expect_char('(');
    std::string head = word();
    if (head == "assume") {
      std::string label_text = word();
      int label = 0;
      try {
        label = std::stoi(label_text);
      } catch (...) {
        fail("assume requires an integer label");
      }
      Formula f = parse_formula(formula_text());
      expect_char(')');
      return ProofNode::assume(label, f);
    }
    auto rule = parse_rule_name(head);
    if (!rule) fail("unknown rule " + head);
    Formula conclusion = parse_formula(formula_text());
    std::vector<int> discharges;
    std::optional<Term> var;
    std::vector<Term> terms;
    std::vector<ProofNodePtr> premises;
    while (true) {
      skip_ws();
      if (i >= src.size()) fail("unterminated node");
      if (src[i] == ')') {
        ++i;
        break;
      }
      if (src[i] == ':') {
        ++i;
        std::string key = word();
        if (key == "discharge") {
          expect_char('(');
          while (true) {
            skip_ws();
            if (i < src.size() && src[i] == ')') {
              ++i;
              break;
            }
            try {
              discharges.push_back(std::stoi(word()));
            } catch (...) {
              fail(":discharge takes integer labels");
            }
          }
        } else if (key == "var") {
          std::string name = word();
          if (!syntax::is_variable_name(name)) fail(":var requires a variable");
          var = Term::variable(name);
        } else if (key == "term") {
          std::string name = word();
          if (std::isupper(static_cast<unsigned char>(name[0])))
            fail(":term requires a term");
          terms.push_back(syntax::is_variable_name(name) ? Term::variable(name)
                                                         : Term::constant(name));
          if (terms.back().is_constant() &&
              !syntax::is_reserved_constant_name(name))
            sig.constants.insert(name);
        } else {
          fail("unknown keyword :" + key);
        }
        continue;
      }
      if (src[i] == '(') {
        premises.push_back(node());
        continue;
      }
      fail("unexpected input in node");
    }
    return ProofNode::infer(*rule, conclusion, std::move(discharges), var,
                            std::move(terms), std::move(premises));
  }
};

}  // namespace

ProofScript parse_proof_script(std::string_view text) {
  ScriptParser p{text};
  p.expect_char('(');
  std::string head = p.word();
  if (head != "proof") p.fail("a proof script starts with (proof ...)");
  std::string logic_text = p.word();
  auto logic = parse_logic_id(logic_text);
  if (!logic) p.fail("unknown logic id " + logic_text);
  p.lang = logic->lang();
  p.sig.free_logic = logic->free;
  ProofNodePtr root = p.node();
  p.expect_char(')');
  p.skip_ws();
  if (p.i != text.size()) p.fail("trailing input after proof");
  if (p.sig.free_logic && !logic->free)
    p.fail("E! used in the non-free logic " + logic_text);

  ProofScript script;
  script.logic = *logic;
  script.root = root;
  script.signature = p.sig;
  return script;
}

Sequent parse_sequent_file(std::string_view text,
                           std::optional<LogicId> logic_override) {
  Sequent s;
  std::optional<LogicId> logic = logic_override;
  syntax::Signature sig;
  bool concluded = false;

  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    std::string rest;
    std::getline(ls, rest);
    if (head == "logic") {
      std::string id = rest;
      id.erase(0, id.find_first_not_of(" \t"));
      id.erase(id.find_last_not_of(" \t") + 1);
      auto parsed = parse_logic_id(id);
      if (!parsed)
        throw syntax::ParseError("sequent file line " + std::to_string(lineno) +
                                     ": unknown logic " + id,
                                 0);
      if (!logic_override) logic = parsed;
    } else if (head == "premise" || head == "conclude") {
      if (!logic)
        throw syntax::ParseError("sequent file: logic must precede formulas", 0);
      sig.free_logic = logic->free;
      Formula f = syntax::parse_formula_infer(rest, sig, logic->lang());
      if (head == "premise") {
        s.assumptions.insert(f);
      } else {
        if (concluded)
          throw syntax::ParseError("sequent file: two conclude lines", 0);
        s.conclusion = f;
        concluded = true;
      }
    } else {
      throw syntax::ParseError("sequent file line " + std::to_string(lineno) +
                                   ": unknown directive " + head,
                               0);
    }
  }
  if (!logic) throw syntax::ParseError("sequent file: missing logic", 0);
  if (!concluded) throw syntax::ParseError("sequent file: missing conclude", 0);
  s.logic = *logic;
  return s;
}

}  // namespace n4dd::kernel
