#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Object languages: terms, formulas, signatures, parsing, printing,
// binding analysis and capture-avoiding substitution.
//
// Terms and formulas are interned in a process-wide arena; values are
// cheap ids, structural equality is id equality, and all nodes are
// immutable after construction (safe to share across threads).

namespace n4dd::syntax {

using TermId = std::uint32_t;
using FormulaId = std::uint32_t;

inline constexpr TermId kNoTerm = static_cast<TermId>(-1);
inline constexpr FormulaId kNoFormula = static_cast<FormulaId>(-1);

enum class TermKind : std::uint8_t { Variable, Constant };

enum class Kind : std::uint8_t {
  Atom,         // P(t1,...,tn)
  Identity,     // t1=t2
  Existence,    // E!(t)        (free signatures only)
  Falsum,       // bot          (L_bot only)
  Negation,     // ~A           (L_neg only)
  Conjunction,  // A & B
  Disjunction,  // A | B
  Implication,  // A -> B
  Forall,       // forall x. A
  Exists,       // exists x. A
  Description,  // I x[F, G]
};

// Which falsity primitive a formula may use.
enum class Lang : std::uint8_t { Neg, Bot };

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(std::string msg, std::size_t pos)
      : std::runtime_error(std::move(msg)), position(pos) {}
};

struct CaptureError : std::runtime_error {
  std::string binder;  // the variable of the capturing binder
  CaptureError(std::string msg, std::string b)
      : std::runtime_error(std::move(msg)), binder(std::move(b)) {}
};

// ---------------------------------------------------------------------------
// Terms

class Term {
 public:
  Term() : id_(kNoTerm) {}
  explicit Term(TermId id) : id_(id) {}

  static Term variable(std::string_view name);
  static Term constant(std::string_view name);
  // k{index}: the reserved constant naming quantification-domain element
  // `index` of a model.
  static Term injected(int index);

  TermId id() const { return id_; }
  TermKind kind() const;
  const std::string& name() const;
  bool is_variable() const { return kind() == TermKind::Variable; }
  bool is_constant() const { return kind() == TermKind::Constant; }

  friend bool operator==(Term a, Term b) { return a.id_ == b.id_; }
  friend bool operator!=(Term a, Term b) { return a.id_ != b.id_; }
  friend bool operator<(Term a, Term b) { return a.id_ < b.id_; }

 private:
  TermId id_;
};

// Token classification: identifiers starting with u..z are variables,
// other lower-case identifiers are constants.
bool is_variable_name(std::string_view name);
// k followed by digits is reserved for injected constants.
bool is_reserved_constant_name(std::string_view name);

// ---------------------------------------------------------------------------
// Formulas

class Formula {
 public:
  Formula() : id_(kNoFormula) {}
  explicit Formula(FormulaId id) : id_(id) {}

  static Formula atom(std::string_view pred, const std::vector<Term>& args);
  static Formula identity(Term lhs, Term rhs);
  static Formula existence(Term t);
  static Formula falsum();
  static Formula negation(Formula a);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula forall(Term var, Formula body);
  static Formula exists(Term var, Formula body);
  static Formula description(Term var, Formula fst, Formula snd);

  FormulaId id() const { return id_; }
  bool valid() const { return id_ != kNoFormula; }
  Kind kind() const;

  const std::string& pred() const;        // Atom
  const std::vector<Term>& args() const;  // Atom / Identity / Existence
  Formula lhs() const;                    // binary connectives; Description fst
  Formula rhs() const;                    // binary connectives; Description snd
  Formula body() const;                   // Negation / Forall / Exists
  Term var() const;                       // Forall / Exists / Description

  // Free variables, sorted by term id; computed once at interning time.
  const std::vector<Term>& free_vars() const;
  bool is_closed() const { return free_vars().empty(); }
  bool has_free(Term var) const;

  std::string to_string() const;

  friend bool operator==(Formula a, Formula b) { return a.id_ == b.id_; }
  friend bool operator!=(Formula a, Formula b) { return a.id_ != b.id_; }
  friend bool operator<(Formula a, Formula b) { return a.id_ < b.id_; }

 private:
  FormulaId id_;
};

// ---------------------------------------------------------------------------
// Signatures

struct Signature {
  std::map<std::string, int> predicates;  // name -> arity
  std::set<std::string> constants;
  bool free_logic = false;  // admits E!
  bool primed = false;      // admits primed copies P', =', E!'

  bool has_predicate(const std::string& name, int arity) const {
    auto it = predicates.find(name);
    return it != predicates.end() && it->second == arity;
  }
};

// ---------------------------------------------------------------------------
// Operations

// Parses `text` against `sig`; the unique parse under the grammar:
//   F ::= "bot" | T "=" T | "E!" "(" T ")" | Pred "(" T {"," T} ")"
//       | "~" F | F "&" F | F "|" F | F "->" F
//       | "forall" Var "." F | "exists" Var "." F | "I" Var "[" F "," F "]"
// Precedence ~ > & > | > ->, -> right-associative, & and | left-associative,
// quantifier scope extends maximally right. `#` starts a line comment.
Formula parse_formula(std::string_view text, const Signature& sig, Lang lang);

// Same grammar, but predicates/constants are collected into `sig` instead of
// checked against it (arities must still be used consistently).
Formula parse_formula_infer(std::string_view text, Signature& sig, Lang lang);

// Canonical printing; parse_formula(print(f)) == f.
std::string print(Formula f);
std::string print(Term t);

// True iff substituting t for free x in a captures nothing.
bool is_free_for(Term t, Term x, Formula a);

// A with t substituted for every free occurrence of x. Strict: raises
// CaptureError when t is not free for x in a (callers never rename).
Formula substitute(Formula a, Term x, Term t);

// Replaces every occurrence of constant c by term t (used for the
// uniqueness premise of descriptions over injected constants).
Formula substitute_constant(Formula a, Term c, Term t);

// Empty if f lies inside the given language; otherwise a description of the
// first offending node (e.g. "~ used in the bot language").
std::string language_violation(Formula f, Lang lang);

// Checks atoms/constants of f against sig (arity, declaredness, E! flag,
// primed flag). Returns a description of the first violation or empty.
std::string signature_violation(Formula f, const Signature& sig);

}  // namespace n4dd::syntax
