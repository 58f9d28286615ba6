#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ast.hpp"

namespace godelstr {

// Template formula: the formula grammar extended with named abbreviation
// applications.  Macro bodies are templates; expansion removes every Call.
struct TemplateNode;
using TemplatePtr = std::shared_ptr<const TemplateNode>;

struct TemplateNode {
  Conn kind = Conn::Atom;
  bool is_call = false;
  // call
  std::string callee;
  std::vector<Term> call_args;
  // atom
  bool neq = false;
  Term lhs, rhs;
  // connectives / quantifiers
  TemplatePtr a, b;
  std::string var;
};

TemplatePtr t_atom(bool neq, Term lhs, Term rhs);
inline TemplatePtr t_eq(Term l, Term r) { return t_atom(false, std::move(l), std::move(r)); }
inline TemplatePtr t_neq(Term l, Term r) { return t_atom(true, std::move(l), std::move(r)); }
TemplatePtr t_not(TemplatePtr a);
TemplatePtr t_binary(Conn op, TemplatePtr a, TemplatePtr b);
TemplatePtr t_quant(Conn q, std::string var, TemplatePtr body);
TemplatePtr t_call(std::string name, std::vector<Term> args);
// Left-associated chain.
TemplatePtr t_chain(Conn op, const std::vector<TemplatePtr>& parts);
// Wraps a plain formula as a template (no calls).
TemplatePtr t_lift(const FormulaPtr& f);

struct MacroDef {
  std::string name;
  std::vector<std::string> params;
  TemplatePtr body;
};

using MacroRegistry = std::map<std::string, MacroDef>;

// The nine abbreviations: Char, Sb, RepOne, RepAll, Punct, Q, EChar,
// Write, Move.
const MacroRegistry& builtin_macros();

// Expands an abbreviation application to a raw formula.  Every bound
// variable of every (transitively) expanded body is renamed to a fresh
// name from `namer`, so no free variable of any argument can be captured.
// Nested calls are resolved against `registry`.
// Throws Error(ArityMismatch) and Error(CycleDetected).
FormulaPtr expand_with(const MacroDef& def, const std::vector<Term>& args,
                       const MacroRegistry& registry, FreshNamer& namer);

// Convenience: registry = builtins, namer seeded with the argument
// variables.  Expansion is fully recursive and deterministic.
FormulaPtr expand(const MacroDef& def, const std::vector<Term>& args);
FormulaPtr expand(const std::string& name, const std::vector<Term>& args);

inline FormulaPtr expand_fully(const MacroDef& def, const std::vector<Term>& args) {
  return expand(def, args);
}

}  // namespace godelstr
