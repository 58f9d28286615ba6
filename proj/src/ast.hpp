#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "alphabet.hpp"

namespace godelstr {

// One atom of a term: a variable reference or a string literal.  `text`
// holds the variable name or the *decoded* literal value.
struct TermAtom {
  bool is_var;
  std::string text;
};

inline TermAtom var_atom(std::string name) { return TermAtom{true, std::move(name)}; }
inline TermAtom lit_atom(std::string value) { return TermAtom{false, std::move(value)}; }

// A term is a non-empty sequence of variables and/or string literals,
// denoting the concatenation of their values.
struct Term {
  std::vector<TermAtom> atoms;

  Term() = default;
  explicit Term(std::vector<TermAtom> a) : atoms(std::move(a)) {}

  void collect_vars(std::set<std::string>& out) const {
    for (const auto& a : atoms) {
      if (a.is_var) out.insert(a.text);
    }
  }
};

Term term_var(const std::string& name);
Term term_lit(const std::string& value);
Term term_concat(std::initializer_list<Term> parts);

bool operator==(const TermAtom& a, const TermAtom& b);
bool operator==(const Term& a, const Term& b);

enum class Conn : std::uint8_t { Atom, Not, And, Or, Implies, Forall, Exists };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable formula node.  Atoms carry two terms and a polarity (t=u or
// t!u); connectives carry children; quantifiers carry the bound variable
// name.  `ex_count` caches the number of Exists nodes in the subtree so
// that pre-order Exists addresses can be computed during traversal.
class Formula {
 public:
  Conn kind;
  bool neq = false;  // for Atom: true means the inequality form t!u
  Term lhs, rhs;     // for Atom
  FormulaPtr a, b;   // a: unary child / left; b: right
  std::string var;   // for quantifiers
  std::uint32_t ex_count = 0;

  static FormulaPtr atom(bool neq, Term lhs, Term rhs);
  static FormulaPtr eq(Term lhs, Term rhs) { return atom(false, std::move(lhs), std::move(rhs)); }
  static FormulaPtr neq_atom(Term lhs, Term rhs) {
    return atom(true, std::move(lhs), std::move(rhs));
  }
  static FormulaPtr lnot(FormulaPtr a);
  static FormulaPtr land(FormulaPtr a, FormulaPtr b);
  static FormulaPtr lor(FormulaPtr a, FormulaPtr b);
  static FormulaPtr implies(FormulaPtr a, FormulaPtr b);
  static FormulaPtr forall(std::string var, FormulaPtr body);
  static FormulaPtr exists(std::string var, FormulaPtr body);

  // Left-associated chain; parts must be non-empty.
  static FormulaPtr chain(Conn op, const std::vector<FormulaPtr>& parts);
};

// Structural equality (exact, not alpha).
bool equal(const FormulaPtr& a, const FormulaPtr& b);

// Alpha-equivalence: equality up to consistent renaming of bound variables.
bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b);

std::set<std::string> free_vars(const FormulaPtr& f);
bool is_sentence(const FormulaPtr& f);

// Every variable name occurring anywhere (free, bound, binder).
std::set<std::string> all_vars(const FormulaPtr& f);

// Deterministic source of fresh variable names: "z1", "z2", ... skipping
// anything in the avoid set.  Emitted names are added to the avoid set.
class FreshNamer {
 public:
  explicit FreshNamer(std::set<std::string> avoid = {}) : avoid_(std::move(avoid)) {}
  void avoid(const std::string& name) { avoid_.insert(name); }
  void avoid_all(const std::set<std::string>& names) { avoid_.insert(names.begin(), names.end()); }
  std::string fresh();

 private:
  std::set<std::string> avoid_;
  std::uint64_t counter_ = 0;
};

// Capture-avoiding substitution of `replacement` for every free occurrence
// of variable `name`.  Binders that would capture a variable of the
// replacement are renamed with `namer`.
FormulaPtr substitute_free(const FormulaPtr& f, const std::string& name, const Term& replacement,
                           FreshNamer& namer);

}  // namespace godelstr
