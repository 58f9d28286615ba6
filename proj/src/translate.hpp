#pragma once

#include "arith.hpp"
#include "ast.hpp"

namespace godelstr {

// The syntactic transformation from the string language to the arithmetic
// language: string literals become their numbers, and each atomic
// proposition t1...tm = u1...un becomes an equation between two fresh
// variables pinned by right-to-left Cat chains.  Connectives and
// quantifiers map one-to-one, so the bijection between strings and numbers
// transports truth values.
AFormulaPtr translate(const FormulaPtr& f);

}  // namespace godelstr
