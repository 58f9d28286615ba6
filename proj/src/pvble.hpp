#pragma once

#include "eval.hpp"
#include "macros.hpp"
#include "tm.hpp"

namespace godelstr {

// Value encoding of a tape symbol ('\' -> \0, '"' -> \1, blank -> \2,
// anything else itself) and its literal-content form ('\' -> \00, ...).
// decode_chars(ddot(s)) == dot(s) for every symbol.
std::string symbol_dot(const Symbol& s);
std::string symbol_ddot(const Symbol& s);

// The rule formula for one table entry, as an abbreviation over
// (l1, r1, q1, l2, r2, q2); shape depends on the move direction.
MacroDef gen_rule(const Rule& rule);

struct PvbleTemplate {
  FormulaPtr formula;  // raw formula, free variable set {x}
  std::size_t rule_count = 0;

  // Exists addresses used to witness a halting evaluation.
  std::size_t addr_c = 0;
  std::size_t addr_prefix_t = 0;
  std::size_t addr_prefix_y = 0;
  std::size_t q_base = 0;       // first Exists index of the embedded Q(x,y)
  FormulaPtr q_subformula;      // that embedded expansion
  std::size_t addr_suffix_t = 0;
};

// Compiles the machine into its halting formula: a prefix pinning the
// initial configuration, a suffix pinning the final state, and a guarded
// six-variable universal requiring every adjacent configuration pair in
// the trace string to satisfy one of the 54*r rule formulas.
PvbleTemplate gen_pvble(const Machine& m);

// Closed sentence: the template with a ground literal substituted for x.
FormulaPtr pvble_sentence(const PvbleTemplate& tmpl, const std::string& input);

// Runs m on the input; when it halts, evaluates the halting formula with
// the encoded trace (and the Q-stage values) supplied as witnesses.
Verdict check_halting_witness(const Machine& m, const std::string& input, std::uint64_t fuel);
Verdict check_halting_witness(const PvbleTemplate& tmpl, const Machine& m,
                              const std::string& input, std::uint64_t fuel);

// Evaluates the halting formula against a supplied trace string (possibly
// corrupted); witnesses are cut from that string where its shape allows.
Verdict eval_pvble_with_trace(const PvbleTemplate& tmpl, const std::string& input,
                              const std::string& trace_c);

}  // namespace godelstr
