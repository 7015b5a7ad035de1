#include "n4dd/syntax.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

namespace n4dd::syntax {

namespace {

// ---------------------------------------------------------------------------
// Arena
//
// Nodes live in deques so references stay valid while new nodes are interned.

struct TermNode {
  TermKind kind;
  std::string name;
};

struct FormulaNode {
  Kind kind;
  std::string pred;            // Atom
  std::vector<Term> args;      // Atom / Identity / Existence
  FormulaId lhs = kNoFormula;  // binary / Description fst / Negation+quantifier body
  FormulaId rhs = kNoFormula;  // binary / Description snd
  TermId var = kNoTerm;        // binders
  std::vector<Term> free_vars; // sorted by id
};

struct TermKey {
  TermKind kind;
  std::string name;
  bool operator==(const TermKey& o) const { return kind == o.kind && name == o.name; }
};
struct TermKeyHash {
  std::size_t operator()(const TermKey& k) const {
    return std::hash<std::string>()(k.name) * 3 + static_cast<std::size_t>(k.kind);
  }
};

struct FormulaKey {
  Kind kind;
  std::string pred;
  std::vector<Term> args;
  FormulaId lhs, rhs;
  TermId var;
  bool operator==(const FormulaKey& o) const {
    return kind == o.kind && pred == o.pred && args == o.args && lhs == o.lhs &&
           rhs == o.rhs && var == o.var;
  }
};
struct FormulaKeyHash {
  std::size_t operator()(const FormulaKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.kind);
    h = h * 1000003 + std::hash<std::string>()(k.pred);
    for (Term a : k.args) h = h * 1000003 + a.id();
    h = h * 1000003 + k.lhs;
    h = h * 1000003 + k.rhs;
    h = h * 1000003 + k.var;
    return h;
  }
};

class Arena {
 public:
  TermId intern_term(TermKind kind, std::string_view name) {
    TermKey key{kind, std::string(name)};
    {
      std::shared_lock lock(mutex_);
      auto it = term_index_.find(key);
      if (it != term_index_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    auto it = term_index_.find(key);
    if (it != term_index_.end()) return it->second;
    TermId id = static_cast<TermId>(terms_.size());
    terms_.push_back(TermNode{kind, key.name});
    term_index_.emplace(std::move(key), id);
    return id;
  }

  FormulaId intern_formula(FormulaNode node) {
    FormulaKey key{node.kind, node.pred, node.args, node.lhs, node.rhs, node.var};
    {
      std::shared_lock lock(mutex_);
      auto it = formula_index_.find(key);
      if (it != formula_index_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    auto it = formula_index_.find(key);
    if (it != formula_index_.end()) return it->second;
    node.free_vars = compute_free_vars_locked(node);
    FormulaId id = static_cast<FormulaId>(formulas_.size());
    formulas_.push_back(std::move(node));
    formula_index_.emplace(std::move(key), id);
    return id;
  }

  const TermNode& term(TermId id) const {
    std::shared_lock lock(mutex_);
    return terms_[id];
  }
  const FormulaNode& formula(FormulaId id) const {
    std::shared_lock lock(mutex_);
    return formulas_[id];
  }

  static Arena& instance() {
    static Arena arena;
    return arena;
  }

 private:
  std::vector<Term> compute_free_vars_locked(const FormulaNode& node) {
    std::vector<Term> out;
    auto add_term = [&](Term t) {
      if (terms_[t.id()].kind == TermKind::Variable) out.push_back(t);
    };
    auto add_formula = [&](FormulaId f) {
      if (f == kNoFormula) return;
      const auto& fv = formulas_[f].free_vars;
      out.insert(out.end(), fv.begin(), fv.end());
    };
    for (Term t : node.args) add_term(t);
    add_formula(node.lhs);
    add_formula(node.rhs);
    if (node.var != kNoTerm) {
      out.erase(std::remove(out.begin(), out.end(), Term(node.var)), out.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  mutable std::shared_mutex mutex_;
  std::deque<TermNode> terms_;
  std::deque<FormulaNode> formulas_;
  std::unordered_map<TermKey, TermId, TermKeyHash> term_index_;
  std::unordered_map<FormulaKey, FormulaId, FormulaKeyHash> formula_index_;
};

Arena& arena() { return Arena::instance(); }

}  // namespace

// ---------------------------------------------------------------------------
// Term

bool is_variable_name(std::string_view name) {
  if (name.empty()) return false;
  char c = name[0];
  return c == 'u' || c == 'v' || c == 'w' || c == 'x' || c == 'y' || c == 'z';
}

bool is_reserved_constant_name(std::string_view name) {
  if (name.size() < 2 || name[0] != 'k') return false;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  return true;
}

Term Term::variable(std::string_view name) {
  assert(is_variable_name(name));
  return Term(arena().intern_term(TermKind::Variable, name));
}

Term Term::constant(std::string_view name) {
  assert(!name.empty() && !is_variable_name(name));
  return Term(arena().intern_term(TermKind::Constant, name));
}

Term Term::injected(int index) {
  return constant("k" + std::to_string(index));
}

TermKind Term::kind() const { return arena().term(id_).kind; }
const std::string& Term::name() const { return arena().term(id_).name; }

// ---------------------------------------------------------------------------
// Formula factories

Formula Formula::atom(std::string_view pred, const std::vector<Term>& args) {
  FormulaNode n;
  n.kind = Kind::Atom;
  n.pred = std::string(pred);
  n.args = args;
  return Formula(arena().intern_formula(std::move(n)));
}

Formula Formula::identity(Term lhs, Term rhs) {
  FormulaNode n;
  n.kind = Kind::Identity;
  n.args = {lhs, rhs};
  return Formula(arena().intern_formula(std::move(n)));
}

Formula Formula::existence(Term t) {
  FormulaNode n;
  n.kind = Kind::Existence;
  n.args = {t};
  return Formula(arena().intern_formula(std::move(n)));
}

Formula Formula::falsum() {
  FormulaNode n;
  n.kind = Kind::Falsum;
  return Formula(arena().intern_formula(std::move(n)));
}

Formula Formula::negation(Formula a) {
  FormulaNode n;
  n.kind = Kind::Negation;
  n.lhs = a.id();
  return Formula(arena().intern_formula(std::move(n)));
}

static Formula binary(Kind k, Formula a, Formula b) {
  FormulaNode n;
  n.kind = k;
  n.lhs = a.id();
  n.rhs = b.id();
  return Formula(arena().intern_formula(std::move(n)));
}

Formula Formula::conj(Formula a, Formula b) { return binary(Kind::Conjunction, a, b); }
Formula Formula::disj(Formula a, Formula b) { return binary(Kind::Disjunction, a, b); }
Formula Formula::implies(Formula a, Formula b) { return binary(Kind::Implication, a, b); }

static Formula binder(Kind k, Term var, Formula body) {
  assert(var.is_variable());
  FormulaNode n;
  n.kind = k;
  n.lhs = body.id();
  n.var = var.id();
  return Formula(arena().intern_formula(std::move(n)));
}

Formula Formula::forall(Term var, Formula body) { return binder(Kind::Forall, var, body); }
Formula Formula::exists(Term var, Formula body) { return binder(Kind::Exists, var, body); }

Formula Formula::description(Term var, Formula fst, Formula snd) {
  assert(var.is_variable());
  FormulaNode n;
  n.kind = Kind::Description;
  n.lhs = fst.id();
  n.rhs = snd.id();
  n.var = var.id();
  return Formula(arena().intern_formula(std::move(n)));
}

// ---------------------------------------------------------------------------
// Formula accessors

Kind Formula::kind() const { return arena().formula(id_).kind; }
const std::string& Formula::pred() const { return arena().formula(id_).pred; }
const std::vector<Term>& Formula::args() const { return arena().formula(id_).args; }

Formula Formula::lhs() const { return Formula(arena().formula(id_).lhs); }
Formula Formula::rhs() const { return Formula(arena().formula(id_).rhs); }
Formula Formula::body() const { return Formula(arena().formula(id_).lhs); }
Term Formula::var() const { return Term(arena().formula(id_).var); }

const std::vector<Term>& Formula::free_vars() const {
  return arena().formula(id_).free_vars;
}

bool Formula::has_free(Term v) const {
  const auto& fv = free_vars();
  return std::binary_search(fv.begin(), fv.end(), v);
}

std::string Formula::to_string() const { return print(*this); }

// ---------------------------------------------------------------------------
// Printing

namespace {

// Precedence levels: quantifiers 0 (maximal scope), -> 1, | 2, & 3, ~ 4,
// atoms and descriptions 5.
int precedence(Kind k) {
  switch (k) {
    case Kind::Forall:
    case Kind::Exists: return 0;
    case Kind::Implication: return 1;
    case Kind::Disjunction: return 2;
    case Kind::Conjunction: return 3;
    case Kind::Negation: return 4;
    default: return 5;
  }
}

void print_rec(std::ostringstream& out, Formula f, int min_prec) {
  int prec = precedence(f.kind());
  bool parens = prec < min_prec;
  if (parens) out << '(';
  switch (f.kind()) {
    case Kind::Atom: {
      out << f.pred() << '(';
      const auto args = f.args();
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out << ", ";
        out << args[i].name();
      }
      out << ')';
      break;
    }
    case Kind::Identity:
      out << f.args()[0].name() << '=' << f.args()[1].name();
      break;
    case Kind::Existence:
      out << "E!(" << f.args()[0].name() << ')';
      break;
    case Kind::Falsum:
      out << "bot";
      break;
    case Kind::Negation:
      out << '~';
      print_rec(out, f.body(), 4);
      break;
    case Kind::Conjunction:
      print_rec(out, f.lhs(), 3);
      out << " & ";
      print_rec(out, f.rhs(), 4);  // & left-associative
      break;
    case Kind::Disjunction:
      print_rec(out, f.lhs(), 2);
      out << " | ";
      print_rec(out, f.rhs(), 3);  // | left-associative
      break;
    case Kind::Implication:
      print_rec(out, f.lhs(), 2);  // -> right-associative
      out << " -> ";
      print_rec(out, f.rhs(), 1);
      break;
    case Kind::Forall:
    case Kind::Exists:
      out << (f.kind() == Kind::Forall ? "forall " : "exists ") << f.var().name()
          << ". ";
      print_rec(out, f.body(), 0);
      break;
    case Kind::Description:
      out << "I " << f.var().name() << '[';
      print_rec(out, f.lhs(), 0);
      out << ", ";
      print_rec(out, f.rhs(), 0);
      out << ']';
      break;
  }
  if (parens) out << ')';
}

}  // namespace

std::string print(Formula f) {
  std::ostringstream out;
  print_rec(out, f, 0);
  return out.str();
}

std::string print(Term t) { return t.name(); }

// ---------------------------------------------------------------------------
// Substitution

bool is_free_for(Term t, Term x, Formula a) {
  if (!a.has_free(x)) return true;
  if (t.is_constant()) return true;
  switch (a.kind()) {
    case Kind::Atom:
    case Kind::Identity:
    case Kind::Existence:
    case Kind::Falsum:
      return true;
    case Kind::Negation:
      return is_free_for(t, x, a.body());
    case Kind::Conjunction:
    case Kind::Disjunction:
    case Kind::Implication:
      return is_free_for(t, x, a.lhs()) && is_free_for(t, x, a.rhs());
    case Kind::Forall:
    case Kind::Exists:
      if (a.var() == t) return false;  // x is free below, t would be caught
      return is_free_for(t, x, a.body());
    case Kind::Description:
      if (a.var() == t) return false;
      return is_free_for(t, x, a.lhs()) && is_free_for(t, x, a.rhs());
  }
  return true;
}

static Term subst_term(Term u, Term x, Term t) { return u == x ? t : u; }

Formula substitute(Formula a, Term x, Term t) {
  if (!a.has_free(x)) return a;
  switch (a.kind()) {
    case Kind::Atom: {
      std::vector<Term> args = a.args();
      for (Term& u : args) u = subst_term(u, x, t);
      return Formula::atom(a.pred(), args);
    }
    case Kind::Identity: {
      auto args = a.args();
      return Formula::identity(subst_term(args[0], x, t), subst_term(args[1], x, t));
    }
    case Kind::Existence:
      return Formula::existence(subst_term(a.args()[0], x, t));
    case Kind::Falsum:
      return a;
    case Kind::Negation:
      return Formula::negation(substitute(a.body(), x, t));
    case Kind::Conjunction:
      return Formula::conj(substitute(a.lhs(), x, t), substitute(a.rhs(), x, t));
    case Kind::Disjunction:
      return Formula::disj(substitute(a.lhs(), x, t), substitute(a.rhs(), x, t));
    case Kind::Implication:
      return Formula::implies(substitute(a.lhs(), x, t), substitute(a.rhs(), x, t));
    case Kind::Forall:
    case Kind::Exists: {
      if (a.var() == x) return a;  // unreachable: x not free then
      if (a.var() == t)
        throw CaptureError("substituting " + t.name() + " for " + x.name() +
                               " is captured by binder " + a.var().name(),
                           a.var().name());
      Formula body = substitute(a.body(), x, t);
      return a.kind() == Kind::Forall ? Formula::forall(a.var(), body)
                                      : Formula::exists(a.var(), body);
    }
    case Kind::Description: {
      if (a.var() == x) return a;
      if (a.var() == t)
        throw CaptureError("substituting " + t.name() + " for " + x.name() +
                               " is captured by binder " + a.var().name(),
                           a.var().name());
      return Formula::description(a.var(), substitute(a.lhs(), x, t),
                                  substitute(a.rhs(), x, t));
    }
  }
  return a;
}

Formula substitute_constant(Formula a, Term c, Term t) {
  assert(c.is_constant());
  switch (a.kind()) {
    case Kind::Atom: {
      std::vector<Term> args = a.args();
      bool hit = false;
      for (Term& u : args)
        if (u == c) { u = t; hit = true; }
      return hit ? Formula::atom(a.pred(), args) : a;
    }
    case Kind::Identity: {
      auto args = a.args();
      return Formula::identity(subst_term(args[0], c, t), subst_term(args[1], c, t));
    }
    case Kind::Existence:
      return Formula::existence(subst_term(a.args()[0], c, t));
    case Kind::Falsum:
      return a;
    case Kind::Negation:
      return Formula::negation(substitute_constant(a.body(), c, t));
    case Kind::Conjunction:
      return Formula::conj(substitute_constant(a.lhs(), c, t),
                           substitute_constant(a.rhs(), c, t));
    case Kind::Disjunction:
      return Formula::disj(substitute_constant(a.lhs(), c, t),
                           substitute_constant(a.rhs(), c, t));
    case Kind::Implication:
      return Formula::implies(substitute_constant(a.lhs(), c, t),
                              substitute_constant(a.rhs(), c, t));
    case Kind::Forall:
    case Kind::Exists: {
      Formula body = substitute_constant(a.body(), c, t);
      return a.kind() == Kind::Forall ? Formula::forall(a.var(), body)
                                      : Formula::exists(a.var(), body);
    }
    case Kind::Description:
      return Formula::description(a.var(), substitute_constant(a.lhs(), c, t),
                                  substitute_constant(a.rhs(), c, t));
  }
  return a;
}

// ---------------------------------------------------------------------------
// Language / signature validation

std::string language_violation(Formula f, Lang lang) {
  switch (f.kind()) {
    case Kind::Falsum:
      if (lang == Lang::Neg) return "bot used in the strong-negation language";
      return "";
    case Kind::Negation:
      if (lang == Lang::Bot) return "~ used in the bot language";
      return language_violation(f.body(), lang);
    case Kind::Atom:
    case Kind::Identity:
    case Kind::Existence:
      return "";
    case Kind::Conjunction:
    case Kind::Disjunction:
    case Kind::Implication:
    case Kind::Description: {
      std::string v = language_violation(f.lhs(), lang);
      if (!v.empty()) return v;
      return language_violation(f.rhs(), lang);
    }
    case Kind::Forall:
    case Kind::Exists:
      return language_violation(f.body(), lang);
  }
  return "";
}

std::string signature_violation(Formula f, const Signature& sig) {
  switch (f.kind()) {
    case Kind::Atom: {
      const std::string& p = f.pred();
      bool is_primed = !p.empty() && p.back() == '\'';
      if (is_primed && !sig.primed)
        return "primed predicate " + p + " outside a primed-extension signature";
      auto it = sig.predicates.find(p);
      if (it == sig.predicates.end()) return "unknown predicate " + p;
      if (it->second != static_cast<int>(f.args().size()))
        return "arity mismatch for " + p;
      break;
    }
    case Kind::Existence:
      if (!sig.free_logic) return "E! outside a free-logic signature";
      break;
    default:
      break;
  }
  // constants
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Identity:
    case Kind::Existence:
      for (Term t : f.args()) {
        if (t.is_constant() && !is_reserved_constant_name(t.name()) &&
            !sig.constants.count(t.name()))
          return "unknown constant " + t.name();
      }
      return "";
    case Kind::Falsum:
      return "";
    case Kind::Negation:
      return signature_violation(f.body(), sig);
    case Kind::Conjunction:
    case Kind::Disjunction:
    case Kind::Implication:
    case Kind::Description: {
      std::string v = signature_violation(f.lhs(), sig);
      if (!v.empty()) return v;
      return signature_violation(f.rhs(), sig);
    }
    case Kind::Forall:
    case Kind::Exists:
      return signature_violation(f.body(), sig);
  }
  return "";
}

// ---------------------------------------------------------------------------
// Lexer / parser

namespace {

enum class Tok {
  End, LParen, RParen, LBracket, RBracket, Comma, Dot, Eq,
  And, Or, Arrow, Tilde, Bot, Forall, Exists, DescrI, ExistPred, Ident,
};

struct Token {
  Tok tok;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token next() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_ws();
    std::size_t pos = i_;
    if (i_ >= src_.size()) {
      current_ = {Tok::End, "", pos};
      return;
    }
    char c = src_[i_];
    auto simple = [&](Tok t, std::size_t n) {
      current_ = {t, std::string(src_.substr(i_, n)), pos};
      i_ += n;
    };
    switch (c) {
      case '(': simple(Tok::LParen, 1); return;
      case ')': simple(Tok::RParen, 1); return;
      case '[': simple(Tok::LBracket, 1); return;
      case ']': simple(Tok::RBracket, 1); return;
      case ',': simple(Tok::Comma, 1); return;
      case '.': simple(Tok::Dot, 1); return;
      case '~': simple(Tok::Tilde, 1); return;
      case '&': simple(Tok::And, 1); return;
      case '|': simple(Tok::Or, 1); return;
      case '=':
        if (i_ + 1 < src_.size() && src_[i_ + 1] == '\'') { simple(Tok::Ident, 2); return; }
        simple(Tok::Eq, 1);
        return;
      case '-':
        if (i_ + 1 < src_.size() && src_[i_ + 1] == '>') { simple(Tok::Arrow, 2); return; }
        throw ParseError("stray '-'", pos);
      default: break;
    }
    if (c == 'E' && i_ + 1 < src_.size() && src_[i_ + 1] == '!') {
      std::size_t n = (i_ + 2 < src_.size() && src_[i_ + 2] == '\'') ? 3 : 2;
      current_ = {Tok::ExistPred, std::string(src_.substr(i_, n)), pos};
      i_ += n;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i_ + 1;
      while (j < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
        ++j;
      if (j < src_.size() && src_[j] == '\'') ++j;  // primed predicate
      std::string word(src_.substr(i_, j - i_));
      i_ = j;
      if (word == "bot") { current_ = {Tok::Bot, word, pos}; return; }
      if (word == "forall") { current_ = {Tok::Forall, word, pos}; return; }
      if (word == "exists") { current_ = {Tok::Exists, word, pos}; return; }
      current_ = {Tok::Ident, word, pos};
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos);
  }

  void skip_ws() {
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (c == '#') {
        while (i_ < src_.size() && src_[i_] != '\n') ++i_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++i_;
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t i_ = 0;
  Token current_;
};

class Parser {
 public:
  Parser(std::string_view text, const Signature* check_sig, Signature* infer_sig,
         Lang lang)
      : lex_(text), check_(check_sig), infer_(infer_sig), lang_(lang) {}

  Formula parse() {
    Formula f = parse_implication();
    if (lex_.peek().tok != Tok::End)
      throw ParseError("trailing input after formula", lex_.peek().pos);
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t pos) {
    throw ParseError(msg, pos);
  }

  Token expect(Tok t, const char* what) {
    if (lex_.peek().tok != t) fail(std::string("expected ") + what, lex_.peek().pos);
    return lex_.next();
  }

  Formula parse_implication() {
    Formula lhs = parse_disjunction();
    if (lex_.peek().tok == Tok::Arrow) {
      lex_.next();
      return Formula::implies(lhs, parse_implication());  // right-assoc
    }
    return lhs;
  }

  Formula parse_disjunction() {
    Formula f = parse_conjunction();
    while (lex_.peek().tok == Tok::Or) {
      lex_.next();
      f = Formula::disj(f, parse_conjunction());
    }
    return f;
  }

  Formula parse_conjunction() {
    Formula f = parse_unary();
    while (lex_.peek().tok == Tok::And) {
      lex_.next();
      f = Formula::conj(f, parse_unary());
    }
    return f;
  }

  Formula parse_unary() {
    const Token& t = lex_.peek();
    switch (t.tok) {
      case Tok::Tilde: {
        std::size_t pos = t.pos;
        lex_.next();
        if (lang_ == Lang::Bot) fail("~ used in the bot language", pos);
        return Formula::negation(parse_unary());
      }
      case Tok::Forall:
      case Tok::Exists: {
        bool is_forall = t.tok == Tok::Forall;
        lex_.next();
        Term v = parse_variable();
        expect(Tok::Dot, "'.' after quantified variable");
        Formula body = parse_implication();  // maximal scope
        return is_forall ? Formula::forall(v, body) : Formula::exists(v, body);
      }
      default:
        return parse_atomic();
    }
  }

  Formula parse_atomic() {
    Token t = lex_.peek();
    switch (t.tok) {
      case Tok::Bot:
        lex_.next();
        if (lang_ == Lang::Neg) fail("bot used in the strong-negation language", t.pos);
        return Formula::falsum();
      case Tok::LParen: {
        lex_.next();
        Formula f = parse_implication();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::ExistPred: {
        lex_.next();
        if (t.text == "E!") {
          if (check_ && !check_->free_logic)
            fail("E! outside a free-logic signature", t.pos);
          if (infer_) infer_->free_logic = true;
          expect(Tok::LParen, "'(' after E!");
          Term arg = parse_term();
          expect(Tok::RParen, "')'");
          return Formula::existence(arg);
        }
        // E!' : primed existence, an ordinary unary atom on the bot side
        return parse_atom_args("E!'", t.pos);
      }
      case Tok::Ident: {
        lex_.next();
        char c0 = t.text[0];
        if (std::isupper(static_cast<unsigned char>(c0)) || t.text == "='") {
          // Description: I <var> [ F , G ]
          if (t.text == "I" && lex_.peek().tok == Tok::Ident &&
              is_variable_name(lex_.peek().text)) {
            Term v = parse_variable();
            expect(Tok::LBracket, "'[' after description variable");
            Formula fst = parse_implication();
            expect(Tok::Comma, "',' between description arguments");
            Formula snd = parse_implication();
            expect(Tok::RBracket, "']'");
            return Formula::description(v, fst, snd);
          }
          return parse_atom_args(t.text, t.pos);
        }
        // lower-case identifier: a term; must start an identity
        Term lhs = classify_term(t.text, t.pos);
        expect(Tok::Eq, "'=' after term");
        Term rhs = parse_term();
        return Formula::identity(lhs, rhs);
      }
      default:
        fail("expected a formula", t.pos);
    }
  }

  Formula parse_atom_args(const std::string& pred, std::size_t pos) {
    bool is_primed = pred.size() >= 2 && pred.back() == '\'';
    if (is_primed) {
      if (check_ && !check_->primed)
        fail("primed predicate " + pred + " outside a primed-extension signature", pos);
      if (infer_) infer_->primed = true;
    }
    expect(Tok::LParen, "'(' after predicate");
    std::vector<Term> args;
    args.push_back(parse_term());
    while (lex_.peek().tok == Tok::Comma) {
      lex_.next();
      args.push_back(parse_term());
    }
    expect(Tok::RParen, "')'");
    if (pred == "='") {
      if (args.size() != 2) fail("=' takes two arguments", pos);
    } else if (pred == "E!'") {
      if (args.size() != 1) fail("E!' takes one argument", pos);
    } else if (check_) {
      auto it = check_->predicates.find(pred);
      if (it == check_->predicates.end()) fail("unknown predicate " + pred, pos);
      if (it->second != static_cast<int>(args.size()))
        fail("arity mismatch for " + pred, pos);
    } else if (infer_) {
      auto [it, inserted] = infer_->predicates.emplace(pred, args.size());
      if (!inserted && it->second != static_cast<int>(args.size()))
        fail("arity mismatch for " + pred, pos);
    }
    return Formula::atom(pred, args);
  }

  Term parse_variable() {
    Token t = expect(Tok::Ident, "a variable");
    if (!is_variable_name(t.text)) fail("expected a variable, got " + t.text, t.pos);
    return Term::variable(t.text);
  }

  Term parse_term() {
    Token t = expect(Tok::Ident, "a term");
    return classify_term(t.text, t.pos);
  }

  Term classify_term(const std::string& name, std::size_t pos) {
    if (std::isupper(static_cast<unsigned char>(name[0])))
      fail("expected a term, got predicate " + name, pos);
    if (is_variable_name(name)) return Term::variable(name);
    if (is_reserved_constant_name(name)) return Term::constant(name);
    if (check_ && !check_->constants.count(name)) fail("unknown constant " + name, pos);
    if (infer_) infer_->constants.insert(name);
    return Term::constant(name);
  }

  Lexer lex_;
  const Signature* check_;
  Signature* infer_;
  Lang lang_;
};

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig, Lang lang) {
  Parser p(text, &sig, nullptr, lang);
  return p.parse();
}

Formula parse_formula_infer(std::string_view text, Signature& sig, Lang lang) {
  Parser p(text, nullptr, &sig, lang);
  return p.parse();
}

}  // namespace n4dd::syntax
