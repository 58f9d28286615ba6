#include "arith.hpp"

#include <algorithm>
#include <functional>

namespace godelstr {

// ---------------------------------------------------------------------
// Terms and formulas

ATermPtr a_var(std::string name) {
  if (!is_variable_name(name)) {
    throw Error(ErrorCode::BadInput, "bad variable name '" + name + "'");
  }
  auto n = std::make_shared<ATermNode>();
  n->kind = AOp::Var;
  n->var = std::move(name);
  return n;
}

ATermPtr a_num(ANat value) {
  auto n = std::make_shared<ATermNode>();
  n->kind = AOp::Num;
  n->value = std::move(value);
  return n;
}

namespace {
ATermPtr a_binary(AOp op, ATermPtr a, ATermPtr b) {
  auto n = std::make_shared<ATermNode>();
  n->kind = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}
}  // namespace

ATermPtr a_sum(ATermPtr a, ATermPtr b) { return a_binary(AOp::Sum, std::move(a), std::move(b)); }
ATermPtr a_prod(ATermPtr a, ATermPtr b) {
  return a_binary(AOp::Product, std::move(a), std::move(b));
}

AFormulaPtr AFormula::atom(bool neq, ATermPtr l, ATermPtr r) {
  auto f = std::make_shared<AFormula>();
  f->kind = Conn::Atom;
  f->neq = neq;
  f->lhs = std::move(l);
  f->rhs = std::move(r);
  return f;
}

AFormulaPtr AFormula::lnot(AFormulaPtr a) {
  auto f = std::make_shared<AFormula>();
  f->kind = Conn::Not;
  f->ex_count = a->ex_count;
  f->a = std::move(a);
  return f;
}

namespace {
AFormulaPtr af_binary(Conn kind, AFormulaPtr a, AFormulaPtr b) {
  auto f = std::make_shared<AFormula>();
  f->kind = kind;
  f->ex_count = a->ex_count + b->ex_count;
  f->a = std::move(a);
  f->b = std::move(b);
  return f;
}
}  // namespace

AFormulaPtr AFormula::land(AFormulaPtr a, AFormulaPtr b) {
  return af_binary(Conn::And, std::move(a), std::move(b));
}
AFormulaPtr AFormula::lor(AFormulaPtr a, AFormulaPtr b) {
  return af_binary(Conn::Or, std::move(a), std::move(b));
}
AFormulaPtr AFormula::implies(AFormulaPtr a, AFormulaPtr b) {
  return af_binary(Conn::Implies, std::move(a), std::move(b));
}

AFormulaPtr AFormula::forall(std::string var, AFormulaPtr body) {
  auto f = std::make_shared<AFormula>();
  f->kind = Conn::Forall;
  f->var = std::move(var);
  f->ex_count = body->ex_count;
  f->a = std::move(body);
  return f;
}

AFormulaPtr AFormula::exists(std::string var, AFormulaPtr body) {
  auto f = std::make_shared<AFormula>();
  f->kind = Conn::Exists;
  f->var = std::move(var);
  f->ex_count = body->ex_count + 1;
  f->a = std::move(body);
  return f;
}

AFormulaPtr AFormula::chain(Conn op, const std::vector<AFormulaPtr>& parts) {
  AFormulaPtr out = parts.at(0);
  for (std::size_t i = 1; i < parts.size(); ++i) out = af_binary(op, out, parts[i]);
  return out;
}

namespace {

void collect_term_vars(const ATermPtr& t, std::set<std::string>& out) {
  switch (t->kind) {
    case AOp::Var:
      out.insert(t->var);
      break;
    case AOp::Num:
      break;
    case AOp::Sum:
    case AOp::Product:
      collect_term_vars(t->a, out);
      collect_term_vars(t->b, out);
      break;
  }
}

void a_free_rec(const AFormulaPtr& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f->kind) {
    case Conn::Atom: {
      std::set<std::string> vars;
      collect_term_vars(f->lhs, vars);
      collect_term_vars(f->rhs, vars);
      for (const auto& v : vars) {
        if (!bound.count(v)) out.insert(v);
      }
      break;
    }
    case Conn::Not:
      a_free_rec(f->a, bound, out);
      break;
    case Conn::And:
    case Conn::Or:
    case Conn::Implies:
      a_free_rec(f->a, bound, out);
      a_free_rec(f->b, bound, out);
      break;
    case Conn::Forall:
    case Conn::Exists: {
      bool inserted = bound.insert(f->var).second;
      a_free_rec(f->a, bound, out);
      if (inserted) bound.erase(f->var);
      break;
    }
  }
}

void a_all_rec(const AFormulaPtr& f, std::set<std::string>& out) {
  switch (f->kind) {
    case Conn::Atom:
      collect_term_vars(f->lhs, out);
      collect_term_vars(f->rhs, out);
      break;
    case Conn::Not:
      a_all_rec(f->a, out);
      break;
    case Conn::And:
    case Conn::Or:
    case Conn::Implies:
      a_all_rec(f->a, out);
      a_all_rec(f->b, out);
      break;
    case Conn::Forall:
    case Conn::Exists:
      out.insert(f->var);
      a_all_rec(f->a, out);
      break;
  }
}

bool aterm_equal(const ATermPtr& a, const ATermPtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case AOp::Var:
      return a->var == b->var;
    case AOp::Num:
      return a->value == b->value;
    case AOp::Sum:
    case AOp::Product:
      return aterm_equal(a->a, b->a) && aterm_equal(a->b, b->b);
  }
  return false;
}

}  // namespace

std::set<std::string> a_free_vars(const AFormulaPtr& f) {
  std::set<std::string> bound, out;
  a_free_rec(f, bound, out);
  return out;
}

std::set<std::string> a_all_vars(const AFormulaPtr& f) {
  std::set<std::string> out;
  a_all_rec(f, out);
  return out;
}

bool a_equal(const AFormulaPtr& a, const AFormulaPtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Conn::Atom:
      return a->neq == b->neq && aterm_equal(a->lhs, b->lhs) && aterm_equal(a->rhs, b->rhs);
    case Conn::Not:
      return a_equal(a->a, b->a);
    case Conn::And:
    case Conn::Or:
    case Conn::Implies:
      return a_equal(a->a, b->a) && a_equal(a->b, b->b);
    case Conn::Forall:
    case Conn::Exists:
      return a->var == b->var && a_equal(a->a, b->a);
  }
  return false;
}

// ---------------------------------------------------------------------
// Bijection

ANat num(const std::string& s) {
  ANat acc = 0;
  for (char c : s) {
    int n = char_number(c);
    if (n == 0) {
      throw Error(ErrorCode::BadInput, "num: byte outside the alphabet");
    }
    acc = acc * 53 + n;
  }
  return acc;
}

std::string denum(ANat n) {
  if (n < 0) throw Error(ErrorCode::BadInput, "denum: negative input");
  std::string out;
  while (n > 0) {
    ANat c = ((n - 1) % 53) + 1;
    int digit = static_cast<int>(c);
    out += char_at(digit);
    n = (n - c) / 53;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string successor(const std::string& s) {
  require_valid_str(s, "successor input");
  std::string out = s;
  std::size_t i = out.size();
  while (i > 0 && char_number(out[i - 1]) == kAlphabetSize) {
    out[i - 1] = char_at(1);
    --i;
  }
  if (i == 0) {
    return std::string(s.size() + 1, char_at(1));
  }
  out[i - 1] = char_at(char_number(out[i - 1]) + 1);
  return out;
}

std::string iota(std::size_t n) { return std::string(n, 'a'); }

// ---------------------------------------------------------------------
// Templates

AFormulaPtr pow53_formula(ATermPtr k, FreshNamer& namer) {
  std::string x = namer.fresh(), y = namer.fresh(), z = namer.fresh();
  auto divides53 = AFormula::exists(z, AFormula::eq(a_var(x), a_prod(a_num(53), a_var(z))));
  auto body = AFormula::implies(
      AFormula::eq(std::move(k), a_prod(a_var(x), a_var(y))),
      AFormula::lor(AFormula::eq(a_var(x), a_num(1)), divides53));
  return AFormula::forall(x, AFormula::forall(y, body));
}

AFormulaPtr lt_formula(ATermPtr x, ATermPtr y, FreshNamer& namer) {
  std::string i = namer.fresh();
  return AFormula::exists(
      i, AFormula::eq(std::move(y), a_sum(a_sum(std::move(x), a_var(i)), a_num(1))));
}

AFormulaPtr cat_formula(ATermPtr x, ATermPtr y, ATermPtr z, FreshNamer& namer) {
  std::string k = namer.fresh();
  auto y53p1 = [&] { return a_sum(a_prod(y, a_num(53)), a_num(1)); };
  auto upper = lt_formula(y53p1(), a_sum(a_prod(a_num(53), a_var(k)), y), namer);
  auto lower = AFormula::lnot(lt_formula(y53p1(), a_sum(a_var(k), y), namer));
  auto eqn = AFormula::eq(std::move(z), a_sum(a_prod(a_var(k), std::move(x)), y));
  auto body = AFormula::chain(
      Conn::And, {pow53_formula(a_var(k), namer), upper, lower, eqn});
  return AFormula::exists(k, body);
}

namespace {
FreshNamer namer_avoiding(std::initializer_list<std::string> names) {
  std::set<std::string> avoid;
  for (const auto& n : names) avoid.insert(n);
  return FreshNamer(std::move(avoid));
}
}  // namespace

AFormulaPtr gen_pow53(const std::string& k) {
  FreshNamer namer = namer_avoiding({k});
  return pow53_formula(a_var(k), namer);
}

AFormulaPtr gen_lt(const std::string& x, const std::string& y) {
  FreshNamer namer = namer_avoiding({x, y});
  return lt_formula(a_var(x), a_var(y), namer);
}

AFormulaPtr gen_cat(const std::string& x, const std::string& y, const std::string& z) {
  if (x == y || y == z || x == z) {
    throw Error(ErrorCode::BadInput, "gen_cat requires distinct variable names");
  }
  FreshNamer namer = namer_avoiding({x, y, z});
  return cat_formula(a_var(x), a_var(y), a_var(z), namer);
}

// ---------------------------------------------------------------------
// Evaluation

ANat eval_aterm(const ATermPtr& t, const AEnv& env) {
  switch (t->kind) {
    case AOp::Var: {
      auto it = env.find(t->var);
      if (it == env.end()) {
        throw Error(ErrorCode::UnboundVariable, "unbound variable '" + t->var + "'");
      }
      return it->second;
    }
    case AOp::Num:
      return t->value;
    case AOp::Sum:
      return eval_aterm(t->a, env) + eval_aterm(t->b, env);
    case AOp::Product:
      return eval_aterm(t->a, env) * eval_aterm(t->b, env);
  }
  return 0;
}

namespace {

struct AStepLimit {};

int count_unknown_occurrences(const ATermPtr& t, const std::set<std::string>& unknowns) {
  switch (t->kind) {
    case AOp::Var:
      return unknowns.count(t->var) ? 1 : 0;
    case AOp::Num:
      return 0;
    case AOp::Sum:
    case AOp::Product:
      return count_unknown_occurrences(t->a, unknowns) +
             count_unknown_occurrences(t->b, unknowns);
  }
  return 0;
}

bool term_ground(const ATermPtr& t, const AEnv& env, const std::set<std::string>& excluded) {
  switch (t->kind) {
    case AOp::Var:
      return !excluded.count(t->var) && env.count(t->var);
    case AOp::Num:
      return true;
    case AOp::Sum:
    case AOp::Product:
      return term_ground(t->a, env, excluded) && term_ground(t->b, env, excluded);
  }
  return false;
}

struct AGuard {
  const AFormula* node = nullptr;
  const ATermPtr* pattern = nullptr;
  const ATermPtr* ground = nullptr;
  std::set<std::string> covered;
  std::set<std::string> crossed;
};

struct ACollector {
  const std::set<std::string>& block;
  const AEnv& env;
  std::vector<AGuard> guards;
  std::set<std::string> crossed;

  void try_equation(const AFormula* f) {
    for (int orient = 0; orient < 2; ++orient) {
      const ATermPtr* ground = orient == 0 ? &f->rhs : &f->lhs;
      const ATermPtr* pattern = orient == 0 ? &f->lhs : &f->rhs;
      std::set<std::string> excluded = block;
      excluded.insert(crossed.begin(), crossed.end());
      if (!term_ground(*ground, env, excluded)) continue;
      std::set<std::string> vars;
      collect_term_vars(*pattern, vars);
      AGuard g;
      bool ok = true;
      for (const auto& v : vars) {
        if (block.count(v)) {
          g.covered.insert(v);
        } else if (crossed.count(v)) {
          g.crossed.insert(v);
        } else if (!env.count(v)) {
          ok = false;
          break;
        }
      }
      if (!ok || g.covered.empty()) continue;
      g.node = f;
      g.pattern = pattern;
      g.ground = ground;
      guards.push_back(std::move(g));
      return;
    }
  }

  void walk(const AFormula* f, bool positive) {
    switch (f->kind) {
      case Conn::Atom:
        if ((positive && !f->neq) || (!positive && f->neq)) try_equation(f);
        break;
      case Conn::Not:
        walk(f->a.get(), !positive);
        break;
      case Conn::And:
        if (positive) {
          walk(f->a.get(), true);
          walk(f->b.get(), true);
        }
        break;
      case Conn::Or:
        if (!positive) {
          walk(f->a.get(), false);
          walk(f->b.get(), false);
        }
        break;
      case Conn::Implies:
        if (!positive) {
          walk(f->a.get(), true);
          walk(f->b.get(), false);
        }
        break;
      case Conn::Exists:
        if (positive) {
          if (block.count(f->var) || env.count(f->var) || crossed.count(f->var)) return;
          crossed.insert(f->var);
          walk(f->a.get(), true);
          crossed.erase(f->var);
        }
        break;
      case Conn::Forall:
        break;
    }
  }
};

struct AScopedBind {
  AEnv& env;
  std::string name;
  ANat saved;
  bool had;
  AScopedBind(AEnv& e, const std::string& n, ANat v) : env(e), name(n) {
    auto it = env.find(name);
    had = it != env.end();
    if (had) saved = it->second;
    env[name] = std::move(v);
  }
  ~AScopedBind() {
    if (had) {
      env[name] = saved;
    } else {
      env.erase(name);
    }
  }
};

struct AQuantVar {
  const AFormula* node;
  std::size_t address;
};

// Result of structurally inverting a required equation for a candidate set.
struct Inversion {
  enum Kind { None, Empty, Single, DivisorPairs, SumPairs, Unconstrained } kind = None;
  // Single
  std::string var;
  ANat value;
  // pairs
  std::string var_a, var_b;
  ANat target;
};

// Peels ground addends/factors off `t` so that `target` is what the
// remaining core must equal; classifies the core.
Inversion invert(const ATermPtr& t, ANat target, const AEnv& env,
                 const std::set<std::string>& unknowns) {
  int occ = count_unknown_occurrences(t, unknowns);
  Inversion inv;
  if (occ == 0) {
    inv.kind = Inversion::None;
    return inv;
  }
  switch (t->kind) {
    case AOp::Var: {
      inv.kind = Inversion::Single;
      inv.var = t->var;
      inv.value = std::move(target);
      return inv;
    }
    case AOp::Num:
      inv.kind = Inversion::None;
      return inv;
    case AOp::Sum: {
      int occ_a = count_unknown_occurrences(t->a, unknowns);
      int occ_b = occ - occ_a;
      if (occ_a > 0 && occ_b > 0) {
        // Two-unknown sum: enumerable as splits when both sides are bare vars.
        if (t->a->kind == AOp::Var && t->b->kind == AOp::Var && t->a->var != t->b->var) {
          inv.kind = Inversion::SumPairs;
          inv.var_a = t->a->var;
          inv.var_b = t->b->var;
          inv.target = std::move(target);
          return inv;
        }
        inv.kind = Inversion::None;
        return inv;
      }
      const ATermPtr& unknown_side = occ_a > 0 ? t->a : t->b;
      const ATermPtr& ground_side = occ_a > 0 ? t->b : t->a;
      ANat g = eval_aterm(ground_side, env);
      if (target < g) {
        inv.kind = Inversion::Empty;
        return inv;
      }
      return invert(unknown_side, target - g, env, unknowns);
    }
    case AOp::Product: {
      int occ_a = count_unknown_occurrences(t->a, unknowns);
      int occ_b = occ - occ_a;
      if (occ_a > 0 && occ_b > 0) {
        if (t->a->kind == AOp::Var && t->b->kind == AOp::Var && t->a->var != t->b->var) {
          inv.kind = Inversion::DivisorPairs;
          inv.var_a = t->a->var;
          inv.var_b = t->b->var;
          inv.target = std::move(target);
          return inv;
        }
        inv.kind = Inversion::None;
        return inv;
      }
      const ATermPtr& unknown_side = occ_a > 0 ? t->a : t->b;
      const ATermPtr& ground_side = occ_a > 0 ? t->b : t->a;
      ANat g = eval_aterm(ground_side, env);
      if (g == 0) {
        inv.kind = target == 0 ? Inversion::Unconstrained : Inversion::Empty;
        return inv;
      }
      if (target % g != 0) {
        inv.kind = Inversion::Empty;
        return inv;
      }
      return invert(unknown_side, target / g, env, unknowns);
    }
  }
  return inv;
}

class AEvaluator {
 public:
  AEvaluator(const ABounds& bounds) : bounds_(bounds) {}

  Truth run(const AFormulaPtr& f, AEnv& env) { return ev(f.get(), 0, env); }

  std::vector<Diag> diags;
  std::uint64_t steps = 0;
  std::size_t last_quant_addr = 0;

 private:
  void tick() {
    if (++steps > bounds_.step_budget) throw AStepLimit{};
  }

  Truth ev(const AFormula* f, std::size_t ex_base, AEnv& env) {
    tick();
    if (!skip_.empty() && skip_.count(f)) return Truth::True;
    switch (f->kind) {
      case Conn::Atom: {
        bool eq = eval_aterm(f->lhs, env) == eval_aterm(f->rhs, env);
        return (eq != f->neq) ? Truth::True : Truth::False;
      }
      case Conn::Not:
        return truth_not(ev(f->a.get(), ex_base, env));
      case Conn::And: {
        Truth l = ev(f->a.get(), ex_base, env);
        if (l == Truth::False) return Truth::False;
        Truth r = ev(f->b.get(), ex_base + f->a->ex_count, env);
        if (r == Truth::False) return Truth::False;
        return (l == Truth::True && r == Truth::True) ? Truth::True : Truth::Unknown;
      }
      case Conn::Or: {
        Truth l = ev(f->a.get(), ex_base, env);
        if (l == Truth::True) return Truth::True;
        Truth r = ev(f->b.get(), ex_base + f->a->ex_count, env);
        if (r == Truth::True) return Truth::True;
        return (l == Truth::False && r == Truth::False) ? Truth::False : Truth::Unknown;
      }
      case Conn::Implies: {
        Truth l = ev(f->a.get(), ex_base, env);
        if (l == Truth::False) return Truth::True;
        Truth r = ev(f->b.get(), ex_base + f->a->ex_count, env);
        if (r == Truth::True) return Truth::True;
        return (l == Truth::True && r == Truth::False) ? Truth::False : Truth::Unknown;
      }
      case Conn::Exists:
      case Conn::Forall: {
        last_quant_addr = ex_base;
        bool existential = f->kind == Conn::Exists;
        std::vector<AQuantVar> vars;
        const AFormula* cur = f;
        std::size_t base = ex_base;
        while (cur->kind == f->kind) {
          vars.push_back(AQuantVar{cur, base});
          if (existential) ++base;
          cur = cur->a.get();
        }
        return eval_block(existential, vars, cur, base, env);
      }
    }
    return Truth::Unknown;
  }

  Truth eval_block(bool existential, const std::vector<AQuantVar>& vars, const AFormula* body,
                   std::size_t body_base, AEnv& env) {
    std::set<std::string> block;
    for (const auto& v : vars) block.insert(v.node->var);

    ACollector collector{block, env, {}, {}};
    collector.walk(body, existential);

    // Prefer single-candidate inversions, then pair enumerations, by the
    // number of block variables they pin.
    for (const auto& g : collector.guards) {
      std::set<std::string> unknowns = g.covered;
      unknowns.insert(g.crossed.begin(), g.crossed.end());
      ANat target = eval_aterm(*g.ground, env);
      Inversion inv = invert(*g.pattern, std::move(target), env, unknowns);
      if (inv.kind == Inversion::None || inv.kind == Inversion::Unconstrained) continue;
      return eval_guarded(existential, vars, body, body_base, env, g, inv);
    }
    return eval_fallback(existential, vars, body, body_base, env);
  }

  Truth eval_guarded(bool existential, const std::vector<AQuantVar>& vars, const AFormula* body,
                     std::size_t body_base, AEnv& env, const AGuard& guard,
                     const Inversion& inv) {
    std::set<std::string> pinned;
    switch (inv.kind) {
      case Inversion::Empty:
        break;
      case Inversion::Single:
        if (guard.covered.count(inv.var)) pinned.insert(inv.var);
        break;
      case Inversion::DivisorPairs:
      case Inversion::SumPairs:
        if (guard.covered.count(inv.var_a)) pinned.insert(inv.var_a);
        if (guard.covered.count(inv.var_b)) pinned.insert(inv.var_b);
        break;
      default:
        break;
    }

    std::vector<AQuantVar> remaining;
    for (const auto& v : vars) {
      if (!pinned.count(v.node->var)) remaining.push_back(v);
    }

    bool inserted = skip_.insert(guard.node).second;
    bool saw_unknown = false;
    bool decided = false;
    Truth decided_value = Truth::Unknown;
    bool complete = true;

    auto consider = [&](const std::vector<std::pair<std::string, ANat>>& binding) -> bool {
      tick();
      std::vector<std::unique_ptr<AScopedBind>> binds;
      for (const auto& [name, value] : binding) {
        if (pinned.count(name)) {
          binds.push_back(std::make_unique<AScopedBind>(env, name, value));
        }
      }
      Truth t = remaining.empty() ? ev(body, body_base, env)
                                  : eval_block(existential, remaining, body, body_base, env);
      if (existential && t == Truth::True) {
        decided = true;
        decided_value = Truth::True;
        return false;
      }
      if (!existential && t == Truth::False) {
        decided = true;
        decided_value = Truth::False;
        return false;
      }
      if (t == Truth::Unknown) saw_unknown = true;
      return true;
    };

    try {
      switch (inv.kind) {
        case Inversion::Empty:
          break;
        case Inversion::Single:
          if (!pinned.empty()) {
            consider({{inv.var, inv.value}});
          } else {
            // The equation pins a crossed variable only; nothing to bind.
            complete = false;
          }
          break;
        case Inversion::DivisorPairs: {
          const ANat& k = inv.target;
          if (k == 0) {
            // x*y = 0 has infinitely many solutions; probe a few for a
            // counterexample / witness but stay incomplete.
            complete = false;
            for (int j = 0; j <= 8 && !decided; ++j) {
              if (!consider({{inv.var_a, ANat(j)}, {inv.var_b, ANat(0)}})) break;
              if (j > 0 && !consider({{inv.var_a, ANat(0)}, {inv.var_b, ANat(j)}})) break;
            }
            break;
          }
          ANat d = 1;
          std::size_t emitted = 0;
          for (; d * d <= k; ++d) {
            if (k % d != 0) continue;
            ANat q = k / d;
            if (emitted + 2 > bounds_.max_solutions) {
              complete = false;
              break;
            }
            ++emitted;
            if (!consider({{inv.var_a, d}, {inv.var_b, q}})) break;
            if (d != q) {
              ++emitted;
              if (!consider({{inv.var_a, q}, {inv.var_b, d}})) break;
            }
          }
          break;
        }
        case Inversion::SumPairs: {
          const ANat& s = inv.target;
          if (s > ANat(bounds_.max_solutions)) {
            complete = false;
            break;
          }
          for (ANat i = 0; i <= s; ++i) {
            if (!consider({{inv.var_a, i}, {inv.var_b, s - i}})) break;
          }
          break;
        }
        default:
          break;
      }
    } catch (...) {
      if (inserted) skip_.erase(guard.node);
      throw;
    }
    if (inserted) skip_.erase(guard.node);

    if (decided) return decided_value;
    if (!complete) {
      diags.push_back(Diag{vars.front().address, "solution-cap"});
      return Truth::Unknown;
    }
    if (saw_unknown) return Truth::Unknown;
    return existential ? Truth::False : Truth::True;
  }

  Truth eval_fallback(bool existential, const std::vector<AQuantVar>& vars, const AFormula* body,
                      std::size_t body_base, AEnv& env) {
    const AQuantVar& head = vars.front();
    std::vector<AQuantVar> rest(vars.begin() + 1, vars.end());
    for (ANat v = 0; v <= bounds_.max_value; ++v) {
      tick();
      Truth t;
      {
        AScopedBind bind(env, head.node->var, v);
        t = rest.empty() ? ev(body, body_base, env)
                         : eval_block(existential, rest, body, body_base, env);
      }
      if (existential && t == Truth::True) return Truth::True;
      if (!existential && t == Truth::False) return Truth::False;
    }
    diags.push_back(Diag{head.address, "fallback-exhausted"});
    return Truth::Unknown;
  }

  const ABounds& bounds_;
  std::set<const AFormula*> skip_;
};

}  // namespace

Verdict eval_arith(const AFormulaPtr& f, const AEnv& env, const ABounds& bounds) {
  for (const auto& v : a_free_vars(f)) {
    if (!env.count(v)) {
      throw Error(ErrorCode::UnboundVariable, "free variable '" + v + "' not bound");
    }
  }
  AEvaluator evaluator(bounds);
  AEnv working = env;
  Verdict verdict;
  try {
    verdict.value = evaluator.run(f, working);
  } catch (const AStepLimit&) {
    verdict.value = Truth::Unknown;
    evaluator.diags.push_back(Diag{evaluator.last_quant_addr, "step-budget"});
  }
  verdict.steps = evaluator.steps;
  if (verdict.value == Truth::Unknown) {
    verdict.diagnostics = evaluator.diags;
  }
  return verdict;
}

// ---------------------------------------------------------------------
// Concrete syntax

namespace {

struct ALexer {
  const std::string& text;
  std::size_t pos = 0;

  explicit ALexer(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++pos;
      } else {
        break;
      }
    }
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool accept(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!accept(c)) throw syntax_error(std::string("expected ") + what, pos);
  }
  std::string read_variable() {
    skip_ws();
    std::size_t start = pos;
    if (pos >= text.size() || !is_lower(text[pos])) {
      throw syntax_error("expected a variable name", pos);
    }
    ++pos;
    while (pos < text.size() && is_digit(text[pos])) ++pos;
    return text.substr(start, pos - start);
  }
  ANat read_numeral() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && is_digit(text[pos])) ++pos;
    std::string digits = text.substr(start, pos - start);
    if (digits.empty()) throw syntax_error("expected a numeral", start);
    if (digits.size() > 1 && digits[0] == '0') {
      throw syntax_error("numeral must not start with 0", start);
    }
    return ANat(digits);
  }
};

struct AParser {
  ALexer lex;
  explicit AParser(const std::string& t) : lex(t) {}

  ATermPtr parse_primary_term() {
    char c = lex.peek();
    if (c == '(') {
      ++lex.pos;
      ATermPtr t = parse_sum();
      lex.expect(')', "')' in term");
      return t;
    }
    if (is_lower(c)) return a_var(lex.read_variable());
    if (is_digit(c)) return a_num(lex.read_numeral());
    throw syntax_error("expected a term", lex.pos);
  }

  ATermPtr parse_product() {
    ATermPtr l = parse_primary_term();
    while (lex.accept('*')) l = a_prod(l, parse_primary_term());
    return l;
  }

  ATermPtr parse_sum() {
    ATermPtr l = parse_product();
    while (lex.accept('+')) l = a_sum(l, parse_product());
    return l;
  }

  AFormulaPtr parse_atom() {
    ATermPtr l = parse_sum();
    bool neq;
    if (lex.accept('=')) {
      neq = false;
    } else if (lex.accept('!')) {
      neq = true;
    } else {
      throw syntax_error("expected '=' or '!' after term", lex.pos);
    }
    ATermPtr r = parse_sum();
    return AFormula::atom(neq, std::move(l), std::move(r));
  }

  AFormulaPtr parse_primary() {
    if (lex.peek() == '(') {
      // Could be a parenthesized formula or a parenthesized term; try the
      // formula reading and back off when a term operator follows.
      std::size_t saved = lex.pos;
      bool formula_ok = true;
      AFormulaPtr f;
      try {
        ++lex.pos;
        f = parse_formula();
        lex.expect(')', "')'");
      } catch (const Error&) {
        formula_ok = false;
      }
      if (formula_ok) {
        char next = lex.peek();
        if (next != '=' && next != '!' && next != '+' && next != '*') return f;
      }
      lex.pos = saved;
      return parse_atom();
    }
    return parse_atom();
  }

  AFormulaPtr parse_unary() {
    if (lex.accept('~')) return AFormula::lnot(parse_unary());
    char c = lex.peek();
    if (c == 'A' || c == 'E') {
      ++lex.pos;
      std::string var = lex.read_variable();
      lex.expect(':', "':' after quantified variable");
      AFormulaPtr body = parse_formula();
      return c == 'A' ? AFormula::forall(std::move(var), std::move(body))
                      : AFormula::exists(std::move(var), std::move(body));
    }
    return parse_primary();
  }

  AFormulaPtr parse_and() {
    AFormulaPtr l = parse_unary();
    while (lex.accept('&')) l = AFormula::land(l, parse_unary());
    return l;
  }

  AFormulaPtr parse_or() {
    AFormulaPtr l = parse_and();
    while (lex.accept('|')) l = AFormula::lor(l, parse_and());
    return l;
  }

  AFormulaPtr parse_formula() {
    AFormulaPtr l = parse_or();
    for (;;) {
      lex.skip_ws();
      if (lex.pos + 1 < lex.text.size() && lex.text[lex.pos] == '-' &&
          lex.text[lex.pos + 1] == '>') {
        lex.pos += 2;
        l = AFormula::implies(l, parse_or());
      } else if (lex.pos < lex.text.size() && lex.text[lex.pos] == '-') {
        throw syntax_error("'-' must be followed by '>'", lex.pos);
      } else {
        break;
      }
    }
    return l;
  }
};

int aterm_prec(AOp k) {
  switch (k) {
    case AOp::Sum:
      return 1;
    case AOp::Product:
      return 2;
    case AOp::Var:
    case AOp::Num:
      return 3;
  }
  return 3;
}

void print_aterm_rec(const ATermPtr& t, int min_prec, std::string& out) {
  int p = aterm_prec(t->kind);
  if (p < min_prec) {
    out += '(';
    print_aterm_rec(t, 0, out);
    out += ')';
    return;
  }
  switch (t->kind) {
    case AOp::Var:
      out += t->var;
      break;
    case AOp::Num:
      out += t->value.str();
      break;
    case AOp::Sum:
      print_aterm_rec(t->a, 1, out);
      out += '+';
      print_aterm_rec(t->b, 2, out);
      break;
    case AOp::Product:
      print_aterm_rec(t->a, 2, out);
      out += '*';
      print_aterm_rec(t->b, 3, out);
      break;
  }
}

void print_amin(const AFormulaPtr& f, int min_prec, bool tail, std::string& out);

int aformula_prec(Conn k) {
  switch (k) {
    case Conn::Implies:
      return 1;
    case Conn::Or:
      return 2;
    case Conn::And:
      return 3;
    case Conn::Not:
      return 4;
    case Conn::Forall:
    case Conn::Exists:
      return 0;
    case Conn::Atom:
      return 5;
  }
  return 5;
}

void print_amin(const AFormulaPtr& f, int min_prec, bool tail, std::string& out) {
  bool parens;
  if (f->kind == Conn::Atom) {
    parens = false;
  } else if (f->kind == Conn::Forall || f->kind == Conn::Exists) {
    parens = min_prec > 0 && !tail;
  } else {
    parens = aformula_prec(f->kind) < min_prec;
  }
  if (parens) {
    out += '(';
    print_amin(f, 0, true, out);
    out += ')';
    return;
  }
  switch (f->kind) {
    case Conn::Atom:
      print_aterm_rec(f->lhs, 0, out);
      out += f->neq ? '!' : '=';
      print_aterm_rec(f->rhs, 0, out);
      break;
    case Conn::Not:
      out += '~';
      print_amin(f->a, 4, tail, out);
      break;
    case Conn::And:
      print_amin(f->a, 3, false, out);
      out += '&';
      print_amin(f->b, 4, tail, out);
      break;
    case Conn::Or:
      print_amin(f->a, 2, false, out);
      out += '|';
      print_amin(f->b, 3, tail, out);
      break;
    case Conn::Implies:
      print_amin(f->a, 1, false, out);
      out += "->";
      print_amin(f->b, 2, tail, out);
      break;
    case Conn::Forall:
    case Conn::Exists:
      out += f->kind == Conn::Forall ? 'A' : 'E';
      out += f->var;
      out += ':';
      print_amin(f->a, 0, tail, out);
      break;
  }
}

void print_afull(const AFormulaPtr& f, std::string& out) {
  auto child = [&out](const AFormulaPtr& c) {
    out += '(';
    print_afull(c, out);
    out += ')';
  };
  switch (f->kind) {
    case Conn::Atom:
      print_aterm_rec(f->lhs, 0, out);
      out += f->neq ? '!' : '=';
      print_aterm_rec(f->rhs, 0, out);
      break;
    case Conn::Not:
      out += '~';
      child(f->a);
      break;
    case Conn::And:
    case Conn::Or:
    case Conn::Implies:
      child(f->a);
      out += f->kind == Conn::And ? "&" : f->kind == Conn::Or ? "|" : "->";
      child(f->b);
      break;
    case Conn::Forall:
    case Conn::Exists:
      out += f->kind == Conn::Forall ? 'A' : 'E';
      out += f->var;
      out += ':';
      child(f->a);
      break;
  }
}

}  // namespace

AFormulaPtr parse_aformula(const std::string& text) {
  AParser p(text);
  AFormulaPtr f = p.parse_formula();
  if (!p.lex.eof()) {
    throw syntax_error("unexpected trailing input", p.lex.pos);
  }
  return f;
}

std::string print_aterm(const ATermPtr& t) {
  std::string out;
  print_aterm_rec(t, 0, out);
  return out;
}

std::string print_aformula(const AFormulaPtr& f, PrintStyle style) {
  std::string out;
  if (style == PrintStyle::Minimal) {
    print_amin(f, 0, true, out);
  } else {
    print_afull(f, out);
  }
  return out;
}

}  // namespace godelstr
