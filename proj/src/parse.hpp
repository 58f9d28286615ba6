#pragma once

#include <string>

#include "ast.hpp"

namespace godelstr {

// Parses a formula in the concrete syntax.  Precedence, tightest first:
// concatenation, = / !, ~, &, |, ->, quantifier ':'.  Binary operators
// associate to the left; a quantifier's scope extends as far right as the
// enclosing group allows.  Whitespace between tokens is skipped.
// Throws Error(Syntax) / Error(MalformedEscape) with a byte offset.
FormulaPtr parse_formula(const std::string& text);

// Parses a single term (sequence of variables and literals).
Term parse_term(const std::string& text);

// Parses a standalone string literal ("..." with encoded content) and
// returns the decoded value.
std::string parse_literal(const std::string& text);

}  // namespace godelstr
