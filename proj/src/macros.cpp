#include "macros.hpp"

#include <set>

namespace godelstr {

TemplatePtr t_atom(bool neq, Term lhs, Term rhs) {
  auto n = std::make_shared<TemplateNode>();
  n->kind = Conn::Atom;
  n->neq = neq;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

TemplatePtr t_not(TemplatePtr a) {
  auto n = std::make_shared<TemplateNode>();
  n->kind = Conn::Not;
  n->a = std::move(a);
  return n;
}

TemplatePtr t_binary(Conn op, TemplatePtr a, TemplatePtr b) {
  auto n = std::make_shared<TemplateNode>();
  n->kind = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

TemplatePtr t_quant(Conn q, std::string var, TemplatePtr body) {
  auto n = std::make_shared<TemplateNode>();
  n->kind = q;
  n->var = std::move(var);
  n->a = std::move(body);
  return n;
}

TemplatePtr t_call(std::string name, std::vector<Term> args) {
  auto n = std::make_shared<TemplateNode>();
  n->is_call = true;
  n->callee = std::move(name);
  n->call_args = std::move(args);
  return n;
}

TemplatePtr t_chain(Conn op, const std::vector<TemplatePtr>& parts) {
  TemplatePtr out = parts.at(0);
  for (std::size_t i = 1; i < parts.size(); ++i) out = t_binary(op, out, parts[i]);
  return out;
}

TemplatePtr t_lift(const FormulaPtr& f) {
  switch (f->kind) {
    case Conn::Atom:
      return t_atom(f->neq, f->lhs, f->rhs);
    case Conn::Not:
      return t_not(t_lift(f->a));
    case Conn::And:
    case Conn::Or:
    case Conn::Implies:
      return t_binary(f->kind, t_lift(f->a), t_lift(f->b));
    case Conn::Forall:
    case Conn::Exists:
      return t_quant(f->kind, f->var, t_lift(f->a));
  }
  return nullptr;
}

namespace {

Term tv(const char* name) { return term_var(name); }
Term tl(const char* value) { return term_lit(value); }

Term cat(std::initializer_list<Term> parts) { return term_concat(parts); }

MacroDef def_char() {
  // Char(a): a holds a string of length exactly one.
  std::vector<TemplatePtr> disjuncts;
  for (char c : alphabet()) {
    disjuncts.push_back(t_eq(tv("a"), term_lit(std::string(1, c))));
  }
  return {"Char", {"a"}, t_chain(Conn::Or, disjuncts)};
}

MacroDef def_sb() {
  // Sb(x,y): x is a substring of y.
  return {"Sb",
          {"x", "y"},
          t_quant(Conn::Exists, "u",
                  t_quant(Conn::Exists, "v", t_eq(tv("y"), cat({tv("u"), tv("x"), tv("v")}))))};
}

MacroDef def_repone() {
  // RepOne(x,u,v,y): y is x with one instance of u replaced by v.
  return {"RepOne",
          {"x", "u", "v", "y"},
          t_quant(Conn::Exists, "e",
                  t_quant(Conn::Exists, "f",
                          t_binary(Conn::And, t_eq(tv("x"), cat({tv("e"), tv("u"), tv("f")})),
                                   t_eq(tv("y"), cat({tv("e"), tv("v"), tv("f")})))))};
}

MacroDef def_repall() {
  // RepAll(x,u,v,y,p): y is x with every instance of u replaced by v,
  // the chain of single replacements being recorded as p x1 p ... p xn p.
  auto prefix = t_quant(Conn::Exists, "t", t_eq(tv("s"), cat({tv("p"), tv("x"), tv("p"), tv("t")})));
  auto suffix = t_quant(Conn::Exists, "t", t_eq(tv("s"), cat({tv("t"), tv("p"), tv("y"), tv("p")})));
  auto no_u_left = t_not(t_call("Sb", {tv("u"), tv("y")}));
  auto antecedent = t_chain(
      Conn::And, {t_call("Sb", {cat({tv("p"), tv("h"), tv("p"), tv("k"), tv("p")}), tv("s")}),
                  t_not(t_call("Sb", {tv("p"), tv("h")})),
                  t_not(t_call("Sb", {tv("p"), tv("k")}))});
  auto step = t_quant(
      Conn::Forall, "h",
      t_quant(Conn::Forall, "k",
              t_binary(Conn::Implies, antecedent,
                       t_call("RepOne", {tv("h"), tv("u"), tv("v"), tv("k")}))));
  auto body =
      t_quant(Conn::Exists, "s", t_chain(Conn::And, {prefix, suffix, no_u_left, step}));
  return {"RepAll", {"x", "u", "v", "y", "p"}, body};
}

MacroDef def_punct() {
  // Punct(x,q): q is a non-empty run of ':' characters not occurring in x.
  auto only_colons = t_quant(
      Conn::Forall, "a",
      t_binary(Conn::Implies,
               t_binary(Conn::And, t_call("Sb", {tv("a"), tv("q")}), t_call("Char", {tv("a")})),
               t_eq(tv("a"), tl(":"))));
  return {"Punct",
          {"x", "q"},
          t_binary(Conn::And, only_colons, t_not(t_call("Sb", {tv("q"), tv("x")})))};
}

MacroDef def_q() {
  // Q(x,y): y is the character-encoded form of x, via four RepAll stages
  // with marker *q and punctuation +q.
  Term star_q = cat({tl("*"), tv("q")});
  Term plus_q = cat({tl("+"), tv("q")});
  auto stage4 = t_call("RepAll", {tv("x3"), star_q, tl("\\1"), tv("y"), plus_q});
  auto stage3 = t_call("RepAll", {tv("x2"), tl("\""), star_q, tv("x3"), plus_q});
  auto stage2 = t_call("RepAll", {tv("x1"), star_q, tl("\\0"), tv("x2"), plus_q});
  auto stage1 = t_call("RepAll", {tv("x"), tl("\\"), star_q, tv("x1"), plus_q});
  auto inner3 = t_quant(Conn::Exists, "x3", t_binary(Conn::And, stage3, stage4));
  auto inner2 = t_quant(Conn::Exists, "x2", t_binary(Conn::And, stage2, inner3));
  auto inner1 = t_quant(Conn::Exists, "x1", t_binary(Conn::And, stage1, inner2));
  auto body = t_quant(Conn::Exists, "q",
                      t_binary(Conn::And, t_call("Punct", {tv("x"), tv("q")}), inner1));
  return {"Q", {"x", "y"}, body};
}

MacroDef def_echar() {
  // EChar(e): e is an encoded symbol: \0, \1, \2, or any character other
  // than backslash and quote.
  auto other = t_chain(Conn::And, {t_call("Char", {tv("e")}), t_neq(tv("e"), tl("\\")),
                                   t_neq(tv("e"), tl("\""))});
  auto body = t_chain(Conn::Or, {t_eq(tv("e"), tl("\\0")), t_eq(tv("e"), tl("\\1")),
                                 t_eq(tv("e"), tl("\\2")), other});
  return {"EChar", {"e"}, body};
}

MacroDef def_write() {
  // Write(x,e,y): y is x with its first encoded symbol replaced by e;
  // an x of at most one symbol is overwritten as a whole, and writing the
  // encoded blank there yields the empty string.
  auto short_x = t_binary(Conn::Or, t_eq(tv("x"), tl("")), t_call("EChar", {tv("x")}));
  auto written = t_binary(
      Conn::Or, t_binary(Conn::And, t_eq(tv("e"), tl("\\2")), t_eq(tv("y"), tl(""))),
      t_binary(Conn::And, t_neq(tv("e"), tl("\\2")), t_eq(tv("y"), tv("e"))));
  auto long_x = t_quant(
      Conn::Exists, "f",
      t_quant(Conn::Exists, "z",
              t_chain(Conn::And,
                      {t_eq(tv("x"), cat({tv("f"), tv("z")})), t_call("EChar", {tv("f")}),
                       t_neq(tv("z"), tl("")), t_eq(tv("y"), cat({tv("e"), tv("z")}))})));
  return {"Write", {"x", "e", "y"},
          t_binary(Conn::Or, t_binary(Conn::And, short_x, written), long_x)};
}

MacroDef def_move() {
  // Move(f1,t1,f2,t2): the first encoded symbol of f1 moves to the front
  // of t1; an empty f1 behaves as holding one encoded blank, and the
  // encoded blank is never prepended to an empty destination.
  auto c1 = t_chain(Conn::And, {t_eq(tv("f1"), tl("")), t_eq(tv("t1"), tl("")),
                                t_eq(tv("f2"), tl("")), t_eq(tv("t2"), tl(""))});
  auto c2 = t_chain(Conn::And, {t_eq(tv("f1"), tl("")), t_neq(tv("t1"), tl("")),
                                t_eq(tv("f2"), tl("")),
                                t_eq(tv("t2"), cat({tl("\\2"), tv("t1")}))});
  auto c3 = t_chain(Conn::And, {t_eq(tv("f1"), cat({tl("\\2"), tv("f2")})),
                                t_eq(tv("t1"), tl("")), t_eq(tv("t2"), tl(""))});
  auto c4 = t_quant(
      Conn::Exists, "e",
      t_chain(Conn::And,
              {t_call("EChar", {tv("e")}), t_eq(tv("f1"), cat({tv("e"), tv("f2")})),
               t_binary(Conn::Or, t_neq(tv("e"), tl("\\2")), t_neq(tv("t1"), tl(""))),
               t_eq(tv("t2"), cat({tv("e"), tv("t1")}))}));
  return {"Move", {"f1", "t1", "f2", "t2"}, t_chain(Conn::Or, {c1, c2, c3, c4})};
}

MacroRegistry make_builtins() {
  MacroRegistry reg;
  for (auto def : {def_char(), def_sb(), def_repone(), def_repall(), def_punct(), def_q(),
                   def_echar(), def_write(), def_move()}) {
    reg.emplace(def.name, std::move(def));
  }
  return reg;
}

struct Expander {
  const MacroRegistry& registry;
  FreshNamer& namer;
  std::vector<std::string> stack;

  // `subst` maps template variable names (parameters and renamed binders)
  // to concrete terms.
  Term apply_term(const Term& t, const std::map<std::string, Term>& subst) {
    Term out;
    out.atoms.reserve(t.atoms.size());
    for (const auto& atom : t.atoms) {
      if (!atom.is_var) {
        out.atoms.push_back(atom);
        continue;
      }
      auto it = subst.find(atom.text);
      if (it == subst.end()) {
        throw Error(ErrorCode::BadInput,
                    "macro body references undeclared variable '" + atom.text + "'");
      }
      out.atoms.insert(out.atoms.end(), it->second.atoms.begin(), it->second.atoms.end());
    }
    return out;
  }

  FormulaPtr walk(const TemplatePtr& n, std::map<std::string, Term>& subst) {
    if (n->is_call) {
      std::vector<Term> args;
      args.reserve(n->call_args.size());
      for (const auto& a : n->call_args) args.push_back(apply_term(a, subst));
      return expand_call(n->callee, args);
    }
    switch (n->kind) {
      case Conn::Atom:
        return Formula::atom(n->neq, apply_term(n->lhs, subst), apply_term(n->rhs, subst));
      case Conn::Not:
        return Formula::lnot(walk(n->a, subst));
      case Conn::And:
      case Conn::Or:
      case Conn::Implies: {
        auto l = walk(n->a, subst);
        auto r = walk(n->b, subst);
        if (n->kind == Conn::And) return Formula::land(l, r);
        if (n->kind == Conn::Or) return Formula::lor(l, r);
        return Formula::implies(l, r);
      }
      case Conn::Forall:
      case Conn::Exists: {
        std::string fresh = namer.fresh();
        auto saved = subst.find(n->var);
        Term old;
        bool had = saved != subst.end();
        if (had) old = saved->second;
        subst[n->var] = term_var(fresh);
        auto body = walk(n->a, subst);
        if (had) {
          subst[n->var] = old;
        } else {
          subst.erase(n->var);
        }
        return n->kind == Conn::Forall ? Formula::forall(fresh, body)
                                       : Formula::exists(fresh, body);
      }
    }
    return nullptr;
  }

  FormulaPtr expand_call(const std::string& name, const std::vector<Term>& args) {
    auto it = registry.find(name);
    if (it == registry.end()) {
      throw Error(ErrorCode::BadInput, "unknown abbreviation '" + name + "'");
    }
    return expand_def(it->second, args);
  }

  FormulaPtr expand_def(const MacroDef& def, const std::vector<Term>& args) {
    if (args.size() != def.params.size()) {
      throw Error(ErrorCode::ArityMismatch,
                  def.name + " expects " + std::to_string(def.params.size()) + " arguments, got " +
                      std::to_string(args.size()));
    }
    for (const auto& frame : stack) {
      if (frame == def.name) {
        throw Error(ErrorCode::CycleDetected, "recursive abbreviation '" + def.name + "'");
      }
    }
    stack.push_back(def.name);
    std::map<std::string, Term> subst;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i].atoms.empty()) {
        throw Error(ErrorCode::BadInput, "empty term argument to " + def.name);
      }
      subst[def.params[i]] = args[i];
    }
    FormulaPtr out = walk(def.body, subst);
    stack.pop_back();
    return out;
  }
};

}  // namespace

const MacroRegistry& builtin_macros() {
  static const MacroRegistry reg = make_builtins();
  return reg;
}

FormulaPtr expand_with(const MacroDef& def, const std::vector<Term>& args,
                       const MacroRegistry& registry, FreshNamer& namer) {
  Expander ex{registry, namer, {}};
  return ex.expand_def(def, args);
}

FormulaPtr expand(const MacroDef& def, const std::vector<Term>& args) {
  std::set<std::string> avoid;
  for (const auto& a : args) a.collect_vars(avoid);
  FreshNamer namer(std::move(avoid));
  return expand_with(def, args, builtin_macros(), namer);
}

FormulaPtr expand(const std::string& name, const std::vector<Term>& args) {
  auto it = builtin_macros().find(name);
  if (it == builtin_macros().end()) {
    throw Error(ErrorCode::BadInput, "unknown abbreviation '" + name + "'");
  }
  return expand(it->second, args);
}

}  // namespace godelstr
