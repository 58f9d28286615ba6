#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ast.hpp"

namespace godelstr {

// Immutable string value with cheap substring views.  Holds a shared base
// buffer plus an offset/length, so candidate extraction during pattern
// solving never copies.
class Val {
 public:
  Val() : base_(empty_base()) {}
  static Val of(std::string s) {
    Val v;
    v.base_ = std::make_shared<const std::string>(std::move(s));
    v.off_ = 0;
    v.len_ = v.base_->size();
    return v;
  }
  Val substr(std::size_t off, std::size_t len) const {
    Val v;
    v.base_ = base_;
    v.off_ = off_ + off;
    v.len_ = len;
    return v;
  }
  std::string_view view() const { return std::string_view(base_->data() + off_, len_); }
  std::size_t size() const { return len_; }
  bool empty() const { return len_ == 0; }
  std::string str() const { return std::string(view()); }
  friend bool operator==(const Val& a, const Val& b) { return a.view() == b.view(); }
  friend bool operator!=(const Val& a, const Val& b) { return !(a == b); }

 private:
  static std::shared_ptr<const std::string> empty_base() {
    static const auto e = std::make_shared<const std::string>();
    return e;
  }
  std::shared_ptr<const std::string> base_;
  std::size_t off_ = 0, len_ = 0;
};

using Env = std::map<std::string, Val>;

enum class Truth : std::int8_t { False = -1, Unknown = 0, True = 1 };

inline Truth truth_not(Truth t) { return static_cast<Truth>(-static_cast<std::int8_t>(t)); }

struct Bounds {
  // Alphabet used by the bounded fallback enumeration (subset of the 53).
  std::string fallback_alphabet;
  std::size_t max_candidate_len = 2;
  std::size_t max_solutions = 1u << 20;
  std::uint64_t step_budget = 400000000ull;

  static Bounds defaults();
};

struct Diag {
  std::size_t address;  // pre-order Exists index at/under which we gave up
  const char* reason;   // "fallback-exhausted" | "solution-cap" | "step-budget"
};

struct Verdict {
  Truth value;
  std::vector<Diag> diagnostics;
  std::uint64_t steps = 0;
};

// Values for designated existential quantifiers, keyed by the pre-order
// index of the Exists node (counting Exists nodes only, 0-based).  Values
// may be supplied lazily; a lazy witness is materialized at bind time and
// released when evaluation leaves the quantifier.
class WitnessMap {
 public:
  using Lazy = std::function<Val()>;
  void set(std::size_t address, Val v) { entries_[address] = std::move(v); }
  void set_lazy(std::size_t address, Lazy fn) { entries_[address] = std::move(fn); }
  bool has(std::size_t address) const { return entries_.count(address) != 0; }
  Val get(std::size_t address) const {
    const auto& e = entries_.at(address);
    if (std::holds_alternative<Val>(e)) return std::get<Val>(e);
    return std::get<Lazy>(e)();
  }
  bool empty() const { return entries_.empty(); }
  void merge_offset(const WitnessMap& other, std::size_t offset) {
    for (const auto& [addr, v] : other.entries_) entries_[addr + offset] = v;
  }

 private:
  std::map<std::size_t, std::variant<Val, Lazy>> entries_;
};

// Concatenation of the term's atom values.  Throws Error(UnboundVariable).
Val eval_term(const Term& t, const Env& env);

// All assignments of t's unbound variables that make eval_term equal the
// target; complete and duplicate-free, deterministic order.
std::vector<Env> solve_pattern(const Term& t, const Val& target, const Env& env);

// Three-valued evaluation over the intended model of all finite strings.
// True and False are definitive for witness-free formulas; Unknown carries
// diagnostics.  A witnessed existential is checked at its witness only.
Verdict eval(const FormulaPtr& f, const Env& env, const Bounds& bounds,
             const WitnessMap& witnesses = {});

// Pre-order Exists index of the node reached from `root` by the given
// child path ('a' = left/body, 'b' = right); for locating witness targets.
std::size_t exists_address(const FormulaPtr& root, const std::string& path);

}  // namespace godelstr
