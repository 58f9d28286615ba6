#include "pvble.hpp"

#include "oracles.hpp"

namespace godelstr {

std::string symbol_dot(const Symbol& s) {
  if (s.blank) return "\\2";
  if (s.ch == '\\') return "\\0";
  if (s.ch == '"') return "\\1";
  return std::string(1, s.ch);
}

std::string symbol_ddot(const Symbol& s) { return encode_chars(symbol_dot(s)); }

namespace {

Term tv(const char* n) { return term_var(n); }

TemplatePtr rule_trigger(const Rule& rule) {
  // ( r1="" & "c"="\2" | Ex: r1="c"x ), with c the read symbol's value.
  Term c_lit = term_lit(symbol_dot(rule.read));
  auto empty_case = t_binary(Conn::And, t_eq(tv("r1"), term_lit("")),
                             t_eq(c_lit, term_lit("\\2")));
  auto nonempty_case = t_quant(Conn::Exists, "x",
                               t_eq(tv("r1"), term_concat({c_lit, term_var("x")})));
  return t_binary(Conn::Or, empty_case, nonempty_case);
}

}  // namespace

MacroDef gen_rule(const Rule& rule) {
  Term write_lit = term_lit(symbol_dot(rule.action.write));
  std::vector<TemplatePtr> parts;
  parts.push_back(t_eq(tv("q1"), term_lit(std::to_string(rule.state))));
  parts.push_back(rule_trigger(rule));
  parts.push_back(t_eq(tv("q2"), term_lit(std::to_string(rule.action.next_state))));
  switch (rule.action.dir) {
    case Dir::N:
      parts.push_back(t_call("Write", {tv("r1"), write_lit, tv("r2")}));
      parts.push_back(t_eq(tv("l2"), tv("l1")));
      break;
    case Dir::R:
      parts.push_back(t_quant(
          Conn::Exists, "r",
          t_binary(Conn::And, t_call("Write", {tv("r1"), write_lit, tv("r")}),
                   t_call("Move", {tv("r"), tv("l1"), tv("r2"), tv("l2")}))));
      break;
    case Dir::L:
      parts.push_back(t_quant(
          Conn::Exists, "r",
          t_binary(Conn::And, t_call("Write", {tv("r1"), write_lit, tv("r")}),
                   t_call("Move", {tv("l1"), tv("r"), tv("l2"), tv("r2")}))));
      break;
  }
  return MacroDef{"Rule", {"l1", "r1", "q1", "l2", "r2", "q2"}, t_chain(Conn::And, parts)};
}

PvbleTemplate gen_pvble(const Machine& m) {
  MacroRegistry registry = builtin_macros();

  std::vector<std::string> rule_names;
  for (int q = 1; q <= m.r; ++q) {
    for (int idx = 1; idx <= 54; ++idx) {
      Rule rule{symbol_at_index(idx), q, m.rules.at({q, idx})};
      MacroDef def = gen_rule(rule);
      def.name = "Rule" + std::to_string(rule_names.size() + 1);
      rule_names.push_back(def.name);
      registry.emplace(def.name, std::move(def));
    }
  }

  std::vector<Term> six = {tv("l1"), tv("r1"), tv("q1"), tv("l2"), tv("r2"), tv("q2")};
  std::vector<TemplatePtr> rule_calls;
  rule_calls.reserve(rule_names.size());
  for (const auto& name : rule_names) rule_calls.push_back(t_call(name, six));

  auto prefix = t_quant(
      Conn::Exists, "t",
      t_quant(Conn::Exists, "y",
              t_binary(Conn::And, t_call("Q", {tv("x"), tv("y")}),
                       t_eq(tv("c"), term_concat({term_lit("\"\""), tv("y"),
                                                  term_lit("\\31\""), tv("t")})))));
  auto suffix = t_quant(Conn::Exists, "t",
                        t_eq(tv("c"), term_concat({tv("t"), term_lit("\\30\"")})));

  Term anchor = term_concat({term_lit("\""), tv("l1"), term_lit("\""), tv("r1"),
                             term_lit("\\3"), tv("q1"), term_lit("\""), tv("l2"),
                             term_lit("\""), tv("r2"), term_lit("\\3"), tv("q2"),
                             term_lit("\"")});
  auto antecedent = t_chain(
      Conn::And,
      {t_not(t_call("Sb", {term_lit("\""), tv("l1")})),
       t_not(t_call("Sb", {term_lit("\""), tv("r1")})),
       t_not(t_call("Sb", {term_lit("\""), tv("l2")})),
       t_not(t_call("Sb", {term_lit("\""), tv("r2")})),
       t_call("Sb", {anchor, tv("c")})});
  auto universal = t_binary(Conn::Implies, antecedent, t_chain(Conn::Or, rule_calls));
  for (const char* v : {"q2", "r2", "l2", "q1", "r1", "l1"}) {
    universal = t_quant(Conn::Forall, v, universal);
  }

  auto body = t_chain(Conn::And, {prefix, suffix, universal});
  MacroDef pvble_def{"Pvble", {"x"}, t_quant(Conn::Exists, "c", body)};

  FreshNamer namer({"x"});
  PvbleTemplate tmpl;
  tmpl.formula = expand_with(pvble_def, {tv("x")}, registry, namer);
  tmpl.rule_count = rule_names.size();

  // Locate the witnessed existentials in the expansion:
  // Ec: And(And(prefix', suffix'), universal')
  const FormulaPtr& root = tmpl.formula;
  if (root->kind != Conn::Exists) throw Error(ErrorCode::BadInput, "unexpected Pvble shape");
  tmpl.addr_c = 0;
  FormulaPtr top_and = root->a;
  if (top_and->kind != Conn::And || top_and->a->kind != Conn::And) {
    throw Error(ErrorCode::BadInput, "unexpected Pvble shape");
  }
  FormulaPtr prefix_f = top_and->a->a;
  FormulaPtr suffix_f = top_and->a->b;
  if (prefix_f->kind != Conn::Exists || prefix_f->a->kind != Conn::Exists ||
      prefix_f->a->a->kind != Conn::And) {
    throw Error(ErrorCode::BadInput, "unexpected Pvble prefix shape");
  }
  tmpl.addr_prefix_t = 1;
  tmpl.addr_prefix_y = 2;
  tmpl.q_base = 3;
  tmpl.q_subformula = prefix_f->a->a->a;
  if (suffix_f->kind != Conn::Exists) {
    throw Error(ErrorCode::BadInput, "unexpected Pvble suffix shape");
  }
  tmpl.addr_suffix_t = 1 + prefix_f->ex_count;
  return tmpl;
}

FormulaPtr pvble_sentence(const PvbleTemplate& tmpl, const std::string& input) {
  FreshNamer namer(all_vars(tmpl.formula));
  return substitute_free(tmpl.formula, "x", term_lit(input), namer);
}

namespace {

Verdict eval_with_witnesses(const PvbleTemplate& tmpl, const std::string& input,
                            const std::string& c) {
  WitnessMap w;
  w.set(tmpl.addr_c, Val::of(c));
  std::string y = encode_chars(input);
  w.set(tmpl.addr_prefix_y, Val::of(y));
  std::string expected_prefix = "\"\"" + y + "\\31\"";
  if (c.size() >= expected_prefix.size() &&
      c.compare(0, expected_prefix.size(), expected_prefix) == 0) {
    w.set(tmpl.addr_prefix_t, Val::of(c.substr(expected_prefix.size())));
  } else {
    w.set(tmpl.addr_prefix_t, Val::of(std::string()));
  }
  const std::string suffix_lit = "\\30\"";
  if (c.size() >= suffix_lit.size() &&
      c.compare(c.size() - suffix_lit.size(), suffix_lit.size(), suffix_lit) == 0) {
    w.set(tmpl.addr_suffix_t, Val::of(c.substr(0, c.size() - suffix_lit.size())));
  } else {
    w.set(tmpl.addr_suffix_t, Val::of(std::string()));
  }
  w.merge_offset(q_witnesses(input, tmpl.q_subformula, 0), tmpl.q_base);

  Env env;
  env["x"] = Val::of(input);
  return eval(tmpl.formula, env, Bounds::defaults(), w);
}

}  // namespace

Verdict check_halting_witness(const PvbleTemplate& tmpl, const Machine& m,
                              const std::string& input, std::uint64_t fuel) {
  RunOutcome outcome = run(m, input, fuel);
  if (!outcome.halted) {
    Verdict v;
    v.value = Truth::Unknown;
    v.diagnostics.push_back(Diag{tmpl.addr_c, "no-halting-trace-within-fuel"});
    return v;
  }
  return eval_with_witnesses(tmpl, input, encode_trace(outcome.trace));
}

Verdict check_halting_witness(const Machine& m, const std::string& input, std::uint64_t fuel) {
  PvbleTemplate tmpl = gen_pvble(m);
  return check_halting_witness(tmpl, m, input, fuel);
}

Verdict eval_pvble_with_trace(const PvbleTemplate& tmpl, const std::string& input,
                              const std::string& trace_c) {
  return eval_with_witnesses(tmpl, input, trace_c);
}

}  // namespace godelstr
