#include "ast.hpp"

#include <map>

namespace godelstr {

Term term_var(const std::string& name) {
  if (!is_variable_name(name)) {
    throw Error(ErrorCode::BadInput, "bad variable name '" + name + "'");
  }
  return Term({var_atom(name)});
}

Term term_lit(const std::string& value) {
  require_valid_str(value, "string literal value");
  return Term({lit_atom(value)});
}

Term term_concat(std::initializer_list<Term> parts) {
  Term out;
  for (const auto& p : parts) {
    out.atoms.insert(out.atoms.end(), p.atoms.begin(), p.atoms.end());
  }
  return out;
}

bool operator==(const TermAtom& a, const TermAtom& b) {
  return a.is_var == b.is_var && a.text == b.text;
}

bool operator==(const Term& a, const Term& b) { return a.atoms == b.atoms; }

namespace {

FormulaPtr make(Conn kind) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  return f;
}

}  // namespace

FormulaPtr Formula::atom(bool neq, Term lhs, Term rhs) {
  if (lhs.atoms.empty() || rhs.atoms.empty()) {
    throw Error(ErrorCode::BadInput, "empty term in atomic proposition");
  }
  auto f = std::make_shared<Formula>();
  f->kind = Conn::Atom;
  f->neq = neq;
  f->lhs = std::move(lhs);
  f->rhs = std::move(rhs);
  return f;
}

FormulaPtr Formula::lnot(FormulaPtr a) {
  auto f = std::make_shared<Formula>();
  f->kind = Conn::Not;
  f->ex_count = a->ex_count;
  f->a = std::move(a);
  return f;
}

namespace {
FormulaPtr binary(Conn kind, FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->ex_count = a->ex_count + b->ex_count;
  f->a = std::move(a);
  f->b = std::move(b);
  return f;
}
}  // namespace

FormulaPtr Formula::land(FormulaPtr a, FormulaPtr b) {
  return binary(Conn::And, std::move(a), std::move(b));
}
FormulaPtr Formula::lor(FormulaPtr a, FormulaPtr b) {
  return binary(Conn::Or, std::move(a), std::move(b));
}
FormulaPtr Formula::implies(FormulaPtr a, FormulaPtr b) {
  return binary(Conn::Implies, std::move(a), std::move(b));
}

FormulaPtr Formula::forall(std::string var, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = Conn::Forall;
  f->var = std::move(var);
  f->ex_count = body->ex_count;
  f->a = std::move(body);
  return f;
}

FormulaPtr Formula::exists(std::string var, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = Conn::Exists;
  f->var = std::move(var);
  f->ex_count = body->ex_count + 1;
  f->a = std::move(body);
  return f;
}

FormulaPtr Formula::chain(Conn op, const std::vector<FormulaPtr>& parts) {
  FormulaPtr out = parts.at(0);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    out = binary(op, out, parts[i]);
  }
  return out;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Conn::Atom:
      return a->neq == b->neq && a->lhs == b->lhs && a->rhs == b->rhs;
    case Conn::Not:
      return equal(a->a, b->a);
    case Conn::And:
    case Conn::Or:
    case Conn::Implies:
      return equal(a->a, b->a) && equal(a->b, b->b);
    case Conn::Forall:
    case Conn::Exists:
      return a->var == b->var && equal(a->a, b->a);
  }
  return false;
}

namespace {

// Maps each side's binder names to a shared de-Bruijn-style level.
struct AlphaCtx {
  std::map<std::string, int> left, right;
  int depth = 0;
};

bool alpha_term(const Term& a, const Term& b, const AlphaCtx& ctx) {
  if (a.atoms.size() != b.atoms.size()) return false;
  for (std::size_t i = 0; i < a.atoms.size(); ++i) {
    const auto& x = a.atoms[i];
    const auto& y = b.atoms[i];
    if (x.is_var != y.is_var) return false;
    if (!x.is_var) {
      if (x.text != y.text) return false;
      continue;
    }
    auto lx = ctx.left.find(x.text);
    auto ly = ctx.right.find(y.text);
    if (lx == ctx.left.end() && ly == ctx.right.end()) {
      if (x.text != y.text) return false;  // both free
    } else if (lx != ctx.left.end() && ly != ctx.right.end()) {
      if (lx->second != ly->second) return false;
    } else {
      return false;  // bound on one side only
    }
  }
  return true;
}

bool alpha_rec(const FormulaPtr& a, const FormulaPtr& b, AlphaCtx& ctx) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Conn::Atom:
      return a->neq == b->neq && alpha_term(a->lhs, b->lhs, ctx) && alpha_term(a->rhs, b->rhs, ctx);
    case Conn::Not:
      return alpha_rec(a->a, b->a, ctx);
    case Conn::And:
    case Conn::Or:
    case Conn::Implies:
      return alpha_rec(a->a, b->a, ctx) && alpha_rec(a->b, b->b, ctx);
    case Conn::Forall:
    case Conn::Exists: {
      AlphaCtx inner = ctx;
      inner.left[a->var] = inner.depth;
      inner.right[b->var] = inner.depth;
      inner.depth++;
      return alpha_rec(a->a, b->a, inner);
    }
  }
  return false;
}

void free_vars_rec(const FormulaPtr& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f->kind) {
    case Conn::Atom:
      for (const Term* t : {&f->lhs, &f->rhs}) {
        for (const auto& atom : t->atoms) {
          if (atom.is_var && !bound.count(atom.text)) out.insert(atom.text);
        }
      }
      break;
    case Conn::Not:
      free_vars_rec(f->a, bound, out);
      break;
    case Conn::And:
    case Conn::Or:
    case Conn::Implies:
      free_vars_rec(f->a, bound, out);
      free_vars_rec(f->b, bound, out);
      break;
    case Conn::Forall:
    case Conn::Exists: {
      bool inserted = bound.insert(f->var).second;
      free_vars_rec(f->a, bound, out);
      if (inserted) bound.erase(f->var);
      break;
    }
  }
}

void all_vars_rec(const FormulaPtr& f, std::set<std::string>& out) {
  switch (f->kind) {
    case Conn::Atom:
      f->lhs.collect_vars(out);
      f->rhs.collect_vars(out);
      break;
    case Conn::Not:
      all_vars_rec(f->a, out);
      break;
    case Conn::And:
    case Conn::Or:
    case Conn::Implies:
      all_vars_rec(f->a, out);
      all_vars_rec(f->b, out);
      break;
    case Conn::Forall:
    case Conn::Exists:
      out.insert(f->var);
      all_vars_rec(f->a, out);
      break;
  }
}

}  // namespace

bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b) {
  AlphaCtx ctx;
  return alpha_rec(a, b, ctx);
}

std::set<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> bound, out;
  free_vars_rec(f, bound, out);
  return out;
}

bool is_sentence(const FormulaPtr& f) { return free_vars(f).empty(); }

std::set<std::string> all_vars(const FormulaPtr& f) {
  std::set<std::string> out;
  all_vars_rec(f, out);
  return out;
}

std::string FreshNamer::fresh() {
  for (;;) {
    std::string name = "z" + std::to_string(++counter_);
    if (!avoid_.count(name)) {
      avoid_.insert(name);
      return name;
    }
  }
}

namespace {

Term subst_term(const Term& t, const std::string& name, bool shadowed, const Term& replacement,
                const std::map<std::string, std::string>& renames) {
  Term out;
  out.atoms.reserve(t.atoms.size());
  for (const auto& atom : t.atoms) {
    if (!atom.is_var) {
      out.atoms.push_back(atom);
    } else if (!shadowed && atom.text == name) {
      out.atoms.insert(out.atoms.end(), replacement.atoms.begin(), replacement.atoms.end());
    } else {
      auto it = renames.find(atom.text);
      out.atoms.push_back(var_atom(it == renames.end() ? atom.text : it->second));
    }
  }
  return out;
}

FormulaPtr subst_rec(const FormulaPtr& f, const std::string& name, bool shadowed,
                     const Term& replacement, const std::set<std::string>& repl_vars,
                     FreshNamer& namer, std::map<std::string, std::string>& renames) {
  switch (f->kind) {
    case Conn::Atom:
      return Formula::atom(f->neq, subst_term(f->lhs, name, shadowed, replacement, renames),
                           subst_term(f->rhs, name, shadowed, replacement, renames));
    case Conn::Not:
      return Formula::lnot(subst_rec(f->a, name, shadowed, replacement, repl_vars, namer, renames));
    case Conn::And:
    case Conn::Or:
    case Conn::Implies: {
      auto l = subst_rec(f->a, name, shadowed, replacement, repl_vars, namer, renames);
      auto r = subst_rec(f->b, name, shadowed, replacement, repl_vars, namer, renames);
      if (f->kind == Conn::And) return Formula::land(l, r);
      if (f->kind == Conn::Or) return Formula::lor(l, r);
      return Formula::implies(l, r);
    }
    case Conn::Forall:
    case Conn::Exists: {
      std::string binder = f->var;
      bool inner_shadowed = shadowed || binder == name;
      // An inner binder shadows any pending rename of the same name.
      auto pending = renames.find(binder);
      std::string pending_target;
      bool had_pending = pending != renames.end();
      if (had_pending) {
        pending_target = pending->second;
        renames.erase(pending);
      }
      bool renamed = false;
      if (!inner_shadowed && repl_vars.count(binder)) {
        std::string fresh = namer.fresh();
        renames[binder] = fresh;
        renamed = true;
        auto body = subst_rec(f->a, name, inner_shadowed, replacement, repl_vars, namer, renames);
        renames.erase(binder);
        if (had_pending) renames[binder] = pending_target;
        return f->kind == Conn::Forall ? Formula::forall(fresh, body)
                                       : Formula::exists(fresh, body);
      }
      auto body = subst_rec(f->a, name, inner_shadowed, replacement, repl_vars, namer, renames);
      (void)renamed;
      if (had_pending) renames[binder] = pending_target;
      return f->kind == Conn::Forall ? Formula::forall(binder, body)
                                     : Formula::exists(binder, body);
    }
  }
  return f;
}

}  // namespace

FormulaPtr substitute_free(const FormulaPtr& f, const std::string& name, const Term& replacement,
                           FreshNamer& namer) {
  std::set<std::string> repl_vars;
  replacement.collect_vars(repl_vars);
  std::map<std::string, std::string> renames;
  return subst_rec(f, name, false, replacement, repl_vars, namer, renames);
}

}  // namespace godelstr
