#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "n4dd/syntax.hpp"

// Natural-deduction proof trees and the trusted checker. A proof is checked
// against the rule catalog of one of eight logics; every side condition is
// enforced at the point of application and the checker never infers rule
// parameters or renames bound variables.

namespace n4dd::kernel {

using syntax::Formula;
using syntax::Term;

// ---------------------------------------------------------------------------
// Logics

enum class Base : std::uint8_t { N4, Int };

struct LogicId {
  Base base = Base::N4;
  bool free = false;        // negative free variant (E!, unprimed rules)
  bool with_descr = false;  // admits the binary description quantifier

  bool is_n4() const { return base == Base::N4; }
  syntax::Lang lang() const {
    return base == Base::N4 ? syntax::Lang::Neg : syntax::Lang::Bot;
  }

  friend bool operator==(const LogicId& a, const LogicId& b) {
    return a.base == b.base && a.free == b.free && a.with_descr == b.with_descr;
  }
};

// N4, N4F, N4I, N4FI, INT, INTF, INTI, INTFI
std::optional<LogicId> parse_logic_id(std::string_view text);
std::string print_logic_id(const LogicId& logic);
std::vector<LogicId> all_logics();

// ---------------------------------------------------------------------------
// Rules

enum class RuleId : std::uint8_t {
  // non-negated propositional
  OrI1, OrI2, OrE, ImpI, ImpE, AndI, AndE1, AndE2,
  // negated propositional (N4 family)
  NegNegI, NegNegE, NegImpI, NegImpE1, NegImpE2,
  NegOrI, NegOrE1, NegOrE2, NegAndI1, NegAndI2, NegAndE,
  // quantifiers, free versions
  AllI, AllE, NegAllI, NegAllE, ExI, ExE, NegExI, NegExE,
  // quantifiers, ordinary (primed) versions
  AllIp, AllEp, NegAllIp, NegAllEp, ExIp, ExEp, NegExIp, NegExEp,
  // identity
  EqI, EqIp, EqE,
  // free-logic predicate rules
  PD, NegPD,
  // descriptions, free versions
  DescrI, DescrE1, DescrE2, NegDescrE, NegDescrI1, NegDescrI2, NegDescrI3,
  // descriptions, ordinary (primed) versions
  DescrIp, DescrE1p, DescrE2p, NegDescrEp, NegDescrI3p,
  // intuitionistic family
  BotE,
};

// Script spelling (orI1, impE, allI', nIE, IE2', PD, botE, ...).
std::string rule_name(RuleId rule);
std::optional<RuleId> parse_rule_name(std::string_view text);
const std::vector<RuleId>& all_rules();

std::set<RuleId> available_rules(const LogicId& logic);

// ---------------------------------------------------------------------------
// Proof trees

struct ProofNode;
using ProofNodePtr = std::shared_ptr<const ProofNode>;

struct ProofNode {
  // Assumption iff rule is empty.
  std::optional<RuleId> rule;
  int label = -1;                  // assumptions only
  Formula conclusion;              // assumption formula / inference conclusion
  std::vector<int> discharges;     // labels closed by this inference
  std::optional<Term> eigenvar;    // :var
  std::vector<Term> witnesses;     // :term (one or two, rule-dependent)
  std::vector<ProofNodePtr> premises;

  bool is_assumption() const { return !rule.has_value(); }

  static ProofNodePtr assume(int label, Formula f);
  static ProofNodePtr infer(RuleId rule, Formula conclusion,
                            std::vector<int> discharges,
                            std::optional<Term> eigenvar,
                            std::vector<Term> witnesses,
                            std::vector<ProofNodePtr> premises);
};

struct Sequent {
  std::set<Formula> assumptions;  // contraction implicit
  Formula conclusion;
  LogicId logic;

  std::string to_string() const;
};

// ---------------------------------------------------------------------------
// Checking

enum class CheckErrorKind {
  RuleNotInLogic,
  PatternMismatch,
  ProvisoViolation,
  DischargeError,
  SubstitutionError,
};

struct CheckError : std::runtime_error {
  CheckErrorKind kind;
  std::string node_path;  // e.g. "root.2.1" (premise indices from the root)
  CheckError(CheckErrorKind k, std::string msg, std::string path)
      : std::runtime_error(std::move(msg)), kind(k), node_path(std::move(path)) {}
};

const char* check_error_kind_name(CheckErrorKind kind);

// Re-derives every node of p under `logic`; returns the root sequent whose
// assumptions are the undischarged leaves. Throws CheckError.
Sequent check_proof(const ProofNodePtr& p, const LogicId& logic);

// ---------------------------------------------------------------------------
// Proof scripts
//
//   (proof <logic-id> <node>)
//   <node> ::= (assume <label:int> <formula>)
//            | (<rule> <conclusion> [:discharge (<labels>)] [:var <v>]
//               [:term <t>]* <node>...)
//
// Formulas use the formula grammar; a formula in a script must not begin
// with an outer parenthesis. Rule names are reserved words.

struct ProofScript {
  LogicId logic;
  ProofNodePtr root;
  syntax::Signature signature;  // inferred from the script's formulas
};

ProofScript parse_proof_script(std::string_view text);

// Sequent files: `logic <id>` (optional when an override is supplied),
// `premise <formula>` lines, one `conclude <formula>` line; '#' comments.
Sequent parse_sequent_file(std::string_view text,
                           std::optional<LogicId> logic_override = {});

}  // namespace n4dd::kernel
