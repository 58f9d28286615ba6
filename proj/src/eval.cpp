#include "eval.hpp"

#include <algorithm>
#include <set>

namespace godelstr {

Bounds Bounds::defaults() {
  Bounds b;
  b.fallback_alphabet.assign(alphabet().begin(), alphabet().end());
  return b;
}

namespace {

struct StepLimit {};

using Seg = std::string_view;
using Segs = std::vector<Seg>;

void term_segments(const Term& t, const Env& env, Segs& out) {
  for (const auto& atom : t.atoms) {
    if (atom.is_var) {
      auto it = env.find(atom.text);
      if (it == env.end()) {
        throw Error(ErrorCode::UnboundVariable, "unbound variable '" + atom.text + "'");
      }
      if (!it->second.empty()) out.push_back(it->second.view());
    } else if (!atom.text.empty()) {
      out.push_back(atom.text);
    }
  }
}

bool segs_equal(const Segs& a, const Segs& b) {
  std::size_t la = 0, lb = 0;
  for (auto s : a) la += s.size();
  for (auto s : b) lb += s.size();
  if (la != lb) return false;
  std::size_t ia = 0, ib = 0, oa = 0, ob = 0;
  std::size_t left = la;
  while (left > 0) {
    while (ia < a.size() && oa == a[ia].size()) {
      ++ia;
      oa = 0;
    }
    while (ib < b.size() && ob == b[ib].size()) {
      ++ib;
      ob = 0;
    }
    std::size_t chunk = std::min(a[ia].size() - oa, b[ib].size() - ob);
    if (a[ia].compare(oa, chunk, b[ib].substr(ob, chunk)) != 0) return false;
    oa += chunk;
    ob += chunk;
    left -= chunk;
  }
  return true;
}

// ---------------------------------------------------------------------
// Pattern solving

struct Piece {
  bool is_var = false;
  std::string ground;              // when !is_var
  std::string var;                 // when is_var
  std::vector<std::string> filters;  // substrings the value must not contain
};

struct Pattern {
  std::vector<Piece> pieces;
  bool ok = true;  // false when a variable was neither bound nor allowed
};

Pattern build_pattern(const Term& t, const Env& env, const std::set<std::string>& unknowns,
                      const std::map<std::string, std::vector<std::string>>& filters) {
  Pattern p;
  std::string run;
  auto flush = [&] {
    if (!run.empty()) {
      Piece piece;
      piece.ground = std::move(run);
      run.clear();
      p.pieces.push_back(std::move(piece));
    }
  };
  for (const auto& atom : t.atoms) {
    if (!atom.is_var) {
      run += atom.text;
      continue;
    }
    if (unknowns.count(atom.text)) {
      flush();
      Piece piece;
      piece.is_var = true;
      piece.var = atom.text;
      auto it = filters.find(atom.text);
      if (it != filters.end()) piece.filters = it->second;
      p.pieces.push_back(std::move(piece));
      continue;
    }
    auto it = env.find(atom.text);
    if (it == env.end()) {
      p.ok = false;
      return p;
    }
    run.append(it->second.view());
  }
  flush();
  return p;
}

struct Span {
  std::size_t pos, len;
};

struct SolveResult {
  bool complete = true;  // enumeration covered every solution
  std::size_t count = 0;
};

// Backtracking placement of ground segments, left to right, candidates in
// ascending position/length order.  `sink` returns false to stop early
// (the enumeration is then marked incomplete unless it stopped itself).
class Solver {
 public:
  Solver(const Pattern& pattern, std::string_view target, std::size_t cap,
         std::function<bool(const std::map<std::string, Span>&)> sink)
      : pieces_(pattern.pieces), target_(target), cap_(cap), sink_(std::move(sink)) {}

  SolveResult run() {
    rec(0, 0);
    SolveResult r;
    r.complete = !stopped_ && !capped_;
    r.count = count_;
    return r;
  }

 private:
  bool value_ok(const Piece& piece, std::string_view value) const {
    for (const auto& f : piece.filters) {
      if (value.find(f) != std::string_view::npos) return false;
    }
    return true;
  }

  void rec(std::size_t i, std::size_t pos) {
    if (stopped_ || capped_) return;
    if (i == pieces_.size()) {
      if (pos == target_.size()) emit();
      return;
    }
    const Piece& piece = pieces_[i];
    if (!piece.is_var) {
      if (target_.compare(pos, piece.ground.size(), piece.ground) == 0) {
        rec(i + 1, pos + piece.ground.size());
      }
      return;
    }
    auto bound = binding_.find(piece.var);
    if (bound != binding_.end()) {
      std::string_view v = target_.substr(bound->second.pos, bound->second.len);
      if (target_.compare(pos, v.size(), v) == 0) rec(i + 1, pos + v.size());
      return;
    }
    if (i + 1 == pieces_.size()) {
      std::string_view value = target_.substr(pos);
      if (value_ok(piece, value)) {
        binding_[piece.var] = Span{pos, value.size()};
        rec(i + 1, target_.size());
        binding_.erase(piece.var);
      }
      return;
    }
    const Piece& next = pieces_[i + 1];
    if (!next.is_var) {
      // Anchor on the next ground segment; the gap is this variable's value.
      std::size_t from = pos;
      for (;;) {
        std::size_t occ = target_.find(next.ground, from);
        if (occ == std::string_view::npos) break;
        std::string_view value = target_.substr(pos, occ - pos);
        // A not-substring filter is monotone in the gap length.
        if (!value_ok(piece, value)) break;
        binding_[piece.var] = Span{pos, occ - pos};
        rec(i + 1, occ);
        binding_.erase(piece.var);
        if (stopped_ || capped_) return;
        from = occ + 1;
      }
      return;
    }
    for (std::size_t len = 0; pos + len <= target_.size(); ++len) {
      std::string_view value = target_.substr(pos, len);
      if (!value_ok(piece, value)) break;
      binding_[piece.var] = Span{pos, len};
      rec(i + 1, pos + len);
      binding_.erase(piece.var);
      if (stopped_ || capped_) return;
    }
  }

  void emit() {
    if (count_ >= cap_) {
      capped_ = true;
      return;
    }
    ++count_;
    if (!sink_(binding_)) stopped_ = true;
  }

  const std::vector<Piece>& pieces_;
  std::string_view target_;
  std::size_t cap_;
  std::function<bool(const std::map<std::string, Span>&)> sink_;
  std::map<std::string, Span> binding_;
  std::size_t count_ = 0;
  bool stopped_ = false;
  bool capped_ = false;
};

// ---------------------------------------------------------------------
// Guard extraction

struct GuardCand {
  const Formula* node = nullptr;   // the equation atom
  const Term* pattern = nullptr;   // side holding the unknowns
  const Term* ground = nullptr;    // fully evaluable side
  std::set<std::string> covered;   // block variables solved by this guard
  std::set<std::string> crossed;   // existential binders crossed on the way
};

struct FilterSpec {
  std::string var;
  Term needle;  // ground under env at solve time
  const Formula* node;
};

struct Collector {
  const std::set<std::string>& block;
  const Env& env;
  std::vector<GuardCand> guards;
  std::vector<FilterSpec> filters;
  std::set<std::string> crossed;

  bool env_ground(const std::string& name) const {
    return !block.count(name) && !crossed.count(name) && env.count(name);
  }

  void try_equation(const Formula* f) {
    for (int orient = 0; orient < 2; ++orient) {
      const Term* ground = orient == 0 ? &f->rhs : &f->lhs;
      const Term* pattern = orient == 0 ? &f->lhs : &f->rhs;
      bool ground_ok = true;
      for (const auto& a : ground->atoms) {
        if (a.is_var && !env_ground(a.text)) {
          ground_ok = false;
          break;
        }
      }
      if (!ground_ok) continue;
      GuardCand cand;
      bool pattern_ok = true;
      for (const auto& a : pattern->atoms) {
        if (!a.is_var) continue;
        if (block.count(a.text)) {
          cand.covered.insert(a.text);
        } else if (crossed.count(a.text)) {
          cand.crossed.insert(a.text);
        } else if (!env.count(a.text)) {
          pattern_ok = false;
          break;
        }
      }
      if (!pattern_ok || cand.covered.empty()) continue;
      cand.node = f;
      cand.pattern = pattern;
      cand.ground = ground;
      guards.push_back(std::move(cand));
      return;
    }
  }

  // Recognizes ~(Ea:Eb: X = a <needle> b) — "needle is not a substring of
  // X" — which the solver can enforce while enumerating X.
  bool try_filter(const Formula* not_node) {
    const Formula* e1 = not_node->a.get();
    if (e1->kind != Conn::Exists) return false;
    const Formula* e2 = e1->a.get();
    if (e2->kind != Conn::Exists) return false;
    const Formula* atom = e2->a.get();
    if (atom->kind != Conn::Atom || atom->neq) return false;
    const std::string& v1 = e1->var;
    const std::string& v2 = e2->var;
    if (v1 == v2) return false;
    for (int orient = 0; orient < 2; ++orient) {
      const Term* x_side = orient == 0 ? &atom->lhs : &atom->rhs;
      const Term* pat = orient == 0 ? &atom->rhs : &atom->lhs;
      if (x_side->atoms.size() != 1 || !x_side->atoms[0].is_var) continue;
      const std::string& x = x_side->atoms[0].text;
      if (!block.count(x)) continue;
      if (pat->atoms.size() < 2) continue;
      const auto& first = pat->atoms.front();
      const auto& last = pat->atoms.back();
      if (!first.is_var || first.text != v1 || !last.is_var || last.text != v2) continue;
      Term needle;
      bool ok = true;
      for (std::size_t i = 1; i + 1 < pat->atoms.size(); ++i) {
        const auto& a = pat->atoms[i];
        if (a.is_var && !env_ground(a.text)) {
          ok = false;
          break;
        }
        needle.atoms.push_back(a);
      }
      if (!ok) continue;
      filters.push_back(FilterSpec{x, std::move(needle), not_node});
      return true;
    }
    return false;
  }

  void walk(const Formula* f, bool positive) {
    switch (f->kind) {
      case Conn::Atom:
        if ((positive && !f->neq) || (!positive && f->neq)) try_equation(f);
        break;
      case Conn::Not:
        if (positive && try_filter(f)) return;
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

// ---------------------------------------------------------------------
// Evaluation

struct ScopedBind {
  Env& env;
  std::string name;
  Val saved;
  bool had;
  ScopedBind(Env& e, const std::string& n, Val v) : env(e), name(n) {
    auto it = env.find(name);
    had = it != env.end();
    if (had) saved = it->second;
    env[name] = std::move(v);
  }
  ~ScopedBind() {
    if (had) {
      env[name] = saved;
    } else {
      env.erase(name);
    }
  }
};

struct QuantVar {
  const Formula* node;
  std::size_t address;
};

class Evaluator {
 public:
  Evaluator(const Bounds& bounds, const WitnessMap& witnesses)
      : bounds_(bounds), witnesses_(witnesses) {}

  Truth run(const FormulaPtr& f, Env& env) { return ev(f.get(), 0, env); }

  std::vector<Diag> diags;
  std::uint64_t steps = 0;
  std::size_t last_quant_addr = 0;

 private:
  void tick() {
    if (++steps > bounds_.step_budget) throw StepLimit{};
  }

  Truth ev(const Formula* f, std::size_t ex_base, Env& env) {
    tick();
    if (!skip_.empty() && skip_.count(f)) return Truth::True;
    switch (f->kind) {
      case Conn::Atom: {
        Segs l, r;
        term_segments(f->lhs, env, l);
        term_segments(f->rhs, env, r);
        bool eq = segs_equal(l, r);
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
      case Conn::Exists: {
        last_quant_addr = ex_base;
        if (witnesses_.has(ex_base)) {
          ScopedBind bind(env, f->var, witnesses_.get(ex_base));
          return ev(f->a.get(), ex_base + 1, env);
        }
        std::vector<QuantVar> vars;
        const Formula* cur = f;
        std::size_t base = ex_base;
        while (cur->kind == Conn::Exists && !witnesses_.has(base)) {
          vars.push_back(QuantVar{cur, base});
          ++base;
          cur = cur->a.get();
        }
        return eval_block(true, vars, cur, base, env);
      }
      case Conn::Forall: {
        last_quant_addr = ex_base;
        std::vector<QuantVar> vars;
        const Formula* cur = f;
        std::size_t base = ex_base;
        while (cur->kind == Conn::Forall) {
          vars.push_back(QuantVar{cur, base});
          cur = cur->a.get();
        }
        return eval_block(false, vars, cur, base, env);
      }
    }
    return Truth::Unknown;
  }

  // Shared engine for an Exists-block (existential=true) or Forall-block.
  // For a Forall-block the guard must be required by the *negation* of the
  // body, so the collector runs with negative polarity.
  Truth eval_block(bool existential, const std::vector<QuantVar>& vars, const Formula* body,
                   std::size_t body_base, Env& env) {
    std::set<std::string> block;
    for (const auto& v : vars) block.insert(v.node->var);

    Collector collector{block, env, {}, {}, {}};
    collector.walk(body, existential);

    const GuardCand* best = nullptr;
    for (const auto& g : collector.guards) {
      if (!best || g.covered.size() > best->covered.size()) best = &g;
    }
    if (best) return eval_guarded(existential, vars, body, body_base, env, *best, collector);
    return eval_fallback(existential, vars, body, body_base, env);
  }

  Truth eval_guarded(bool existential, const std::vector<QuantVar>& vars, const Formula* body,
                     std::size_t body_base, Env& env, const GuardCand& guard,
                     const Collector& collector) {
    // Unknown variables the solver may assign: covered block vars plus any
    // crossed existential binders (their values are witnesses we discard).
    std::set<std::string> unknowns = guard.covered;
    for (const auto& c : guard.crossed) unknowns.insert(c);

    std::map<std::string, std::vector<std::string>> filters;
    std::vector<const Formula*> captured;
    captured.push_back(guard.node);
    for (const auto& fs : collector.filters) {
      // Only filters on solver-assigned block variables are enforced during
      // enumeration; only those may be skipped when re-evaluating the body.
      if (!guard.covered.count(fs.var)) continue;
      Segs segs;
      term_segments(fs.needle, env, segs);
      std::string needle;
      for (auto s : segs) needle.append(s);
      filters[fs.var].push_back(std::move(needle));
      captured.push_back(fs.node);
    }

    Pattern pattern = build_pattern(*guard.pattern, env, unknowns, filters);
    if (!pattern.ok) return eval_fallback(existential, vars, body, body_base, env);
    Val target = eval_term(*guard.ground, env);

    std::vector<QuantVar> remaining;
    for (const auto& v : vars) {
      if (!guard.covered.count(v.node->var)) remaining.push_back(v);
    }

    std::vector<const Formula*> inserted;
    for (const Formula* n : captured) {
      if (skip_.insert(n).second) inserted.push_back(n);
    }

    bool saw_unknown = false;
    bool decided = false;
    Truth decided_value = Truth::Unknown;
    auto sink = [&](const std::map<std::string, Span>& binding) -> bool {
      tick();
      std::vector<std::unique_ptr<ScopedBind>> binds;
      for (const auto& v : guard.covered) {
        auto it = binding.find(v);
        Val value =
            it == binding.end() ? Val() : target.substr(it->second.pos, it->second.len);
        binds.push_back(std::make_unique<ScopedBind>(env, v, std::move(value)));
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

    SolveResult result;
    try {
      Solver solver(pattern, target.view(), bounds_.max_solutions, sink);
      result = solver.run();
    } catch (...) {
      for (const Formula* n : inserted) skip_.erase(n);
      throw;
    }
    for (const Formula* n : inserted) skip_.erase(n);

    if (decided) return decided_value;
    if (!result.complete) {
      diags.push_back(Diag{vars.front().address, "solution-cap"});
      return Truth::Unknown;
    }
    if (saw_unknown) return Truth::Unknown;
    return existential ? Truth::False : Truth::True;
  }

  Truth eval_fallback(bool existential, const std::vector<QuantVar>& vars, const Formula* body,
                      std::size_t body_base, Env& env) {
    const QuantVar& head = vars.front();
    std::vector<QuantVar> rest(vars.begin() + 1, vars.end());
    const std::string& ab = bounds_.fallback_alphabet;
    std::vector<std::size_t> odo;
    for (std::size_t len = 0; len <= bounds_.max_candidate_len; ++len) {
      if (len > 0 && ab.empty()) break;
      odo.assign(len, 0);
      for (;;) {
        std::string cand;
        cand.reserve(len);
        for (std::size_t i = 0; i < len; ++i) cand += ab[odo[i]];
        tick();
        Truth t;
        {
          ScopedBind bind(env, head.node->var, Val::of(std::move(cand)));
          t = rest.empty() ? ev(body, body_base, env)
                           : eval_block(existential, rest, body, body_base, env);
        }
        if (existential && t == Truth::True) return Truth::True;
        if (!existential && t == Truth::False) return Truth::False;
        std::size_t i = len;
        while (i > 0) {
          if (++odo[i - 1] < ab.size()) break;
          odo[i - 1] = 0;
          --i;
        }
        if (i == 0) break;
      }
    }
    diags.push_back(Diag{head.address, "fallback-exhausted"});
    return Truth::Unknown;
  }

  const Bounds& bounds_;
  const WitnessMap& witnesses_;
  std::set<const Formula*> skip_;
};

}  // namespace

Val eval_term(const Term& t, const Env& env) {
  if (t.atoms.size() == 1 && t.atoms[0].is_var) {
    auto it = env.find(t.atoms[0].text);
    if (it == env.end()) {
      throw Error(ErrorCode::UnboundVariable, "unbound variable '" + t.atoms[0].text + "'");
    }
    return it->second;
  }
  Segs segs;
  term_segments(t, env, segs);
  std::size_t total = 0;
  for (auto s : segs) total += s.size();
  std::string out;
  out.reserve(total);
  for (auto s : segs) out.append(s);
  return Val::of(std::move(out));
}

std::vector<Env> solve_pattern(const Term& t, const Val& target, const Env& env) {
  std::set<std::string> unknowns;
  for (const auto& atom : t.atoms) {
    if (atom.is_var && !env.count(atom.text)) unknowns.insert(atom.text);
  }
  Pattern pattern = build_pattern(t, env, unknowns, {});
  if (!pattern.ok) {
    throw Error(ErrorCode::UnboundVariable, "pattern references an unknown variable");
  }
  std::vector<Env> out;
  auto sink = [&](const std::map<std::string, Span>& binding) -> bool {
    Env assignment;
    for (const auto& [var, span] : binding) {
      assignment[var] = target.substr(span.pos, span.len);
    }
    for (const auto& v : unknowns) {
      if (!assignment.count(v)) assignment[v] = Val();
    }
    out.push_back(std::move(assignment));
    return true;
  };
  Solver solver(pattern, target.view(), static_cast<std::size_t>(-1), sink);
  solver.run();
  return out;
}

Verdict eval(const FormulaPtr& f, const Env& env, const Bounds& bounds,
             const WitnessMap& witnesses) {
  for (const auto& v : free_vars(f)) {
    if (!env.count(v)) {
      throw Error(ErrorCode::UnboundVariable, "free variable '" + v + "' not bound");
    }
  }
  Evaluator evaluator(bounds, witnesses);
  Env working = env;
  Verdict verdict;
  try {
    verdict.value = evaluator.run(f, working);
  } catch (const StepLimit&) {
    verdict.value = Truth::Unknown;
    evaluator.diags.push_back(Diag{evaluator.last_quant_addr, "step-budget"});
  }
  verdict.steps = evaluator.steps;
  if (verdict.value == Truth::Unknown) {
    verdict.diagnostics = evaluator.diags;
  }
  return verdict;
}

std::size_t exists_address(const FormulaPtr& root, const std::string& path) {
  const Formula* cur = root.get();
  std::size_t base = 0;
  for (char c : path) {
    switch (cur->kind) {
      case Conn::Exists:
        base += 1;
        cur = cur->a.get();
        break;
      case Conn::Forall:
      case Conn::Not:
        cur = cur->a.get();
        break;
      case Conn::And:
      case Conn::Or:
      case Conn::Implies:
        if (c == 'b') {
          base += cur->a->ex_count;
          cur = cur->b.get();
        } else {
          cur = cur->a.get();
        }
        break;
      case Conn::Atom:
        throw Error(ErrorCode::BadInput, "exists_address: path descends into an atom");
    }
  }
  return base;
}

}  // namespace godelstr
