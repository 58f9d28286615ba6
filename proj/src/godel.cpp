#include "godel.hpp"

#include "parse.hpp"
#include "print.hpp"

namespace godelstr {

GodelSentence gen_godel(const Machine& m) {
  FormulaPtr q_exp = expand("Q", {term_var("x"), term_var("y")});

  PvbleTemplate tmpl = gen_pvble(m);
  Term self{{var_atom("x"), lit_atom("\""), var_atom("y"), lit_atom("\"")}};
  FreshNamer namer(all_vars(tmpl.formula));
  namer.avoid("x");
  namer.avoid("y");
  FormulaPtr pvble_applied = substitute_free(tmpl.formula, "x", self, namer);

  auto with_beta = [&](const std::string& beta_decoded) {
    FormulaPtr tail = Formula::eq(term_var("x"), term_lit(beta_decoded));
    FormulaPtr body =
        Formula::land(Formula::land(q_exp, Formula::lnot(pvble_applied)), tail);
    return Formula::exists("x", Formula::exists("y", body));
  };

  std::string printed = print_formula(with_beta(""), PrintStyle::Minimal);
  const std::string placeholder = "&x=\"\"";
  if (printed.size() < placeholder.size() ||
      printed.compare(printed.size() - placeholder.size(), placeholder.size(), placeholder) !=
          0) {
    throw Error(ErrorCode::BadInput, "sentence printing did not end with &x=\"\"");
  }
  GodelSentence g;
  g.alpha = printed.substr(0, printed.size() - 2);
  g.beta = encode_chars(g.alpha);
  g.full = g.alpha + "\"" + g.beta + "\"";
  return g;
}

bool check_fixed_point(const std::string& s) {
  if (s.size() < 2 || s.back() != '"') return false;
  std::size_t open = s.rfind('"', s.size() - 2);
  if (open == std::string::npos) return false;
  std::string beta = s.substr(open + 1, s.size() - open - 2);
  std::string alpha = s.substr(0, open);
  std::string decoded;
  try {
    decoded = decode_chars(beta);
  } catch (const Error&) {
    return false;
  }
  if (decoded != alpha) return false;
  try {
    FormulaPtr f = parse_formula(s);
    return free_vars(f).empty();
  } catch (const Error&) {
    return false;
  }
}

FalseBranchReport demo_false_branch(const Machine& m, std::uint64_t fuel) {
  GodelSentence g = gen_godel(m);
  RunOutcome outcome = run(m, g.full, fuel);
  if (!outcome.halted) {
    throw Error(ErrorCode::NotHaltedWithinFuel,
                "machine did not halt on its sentence within the fuel budget");
  }
  FalseBranchReport report;
  report.sentence_length = g.full.size();
  report.halt_steps = outcome.trace.size() - 1;
  report.pvble_verdict = check_halting_witness(m, g.full, fuel);
  return report;
}

}  // namespace godelstr
