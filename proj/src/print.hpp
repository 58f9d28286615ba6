#pragma once

#include <string>

#include "ast.hpp"

namespace godelstr {

enum class PrintStyle { Minimal, FullParens };

// Prints a term; literals are emitted with encoded content.
std::string print_term(const Term& t);

// Prints a formula so that parse_formula(print_formula(f)) == f.  Minimal
// style emits parentheses only where precedence or quantifier scope
// requires them; FullParens wraps every proper subformula.
std::string print_formula(const FormulaPtr& f, PrintStyle style = PrintStyle::Minimal);

// "..." form of a raw string value.
std::string print_literal(const std::string& value);

}  // namespace godelstr
