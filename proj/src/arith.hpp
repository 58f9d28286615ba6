#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ast.hpp"
#include "eval.hpp"
#include "print.hpp"

namespace godelstr {

using ANat = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------
// Arithmetic terms and formulas

enum class AOp : std::uint8_t { Var, Num, Sum, Product };

struct ATermNode;
using ATermPtr = std::shared_ptr<const ATermNode>;

struct ATermNode {
  AOp kind;
  std::string var;
  ANat value;
  ATermPtr a, b;
};

ATermPtr a_var(std::string name);
ATermPtr a_num(ANat value);
ATermPtr a_sum(ATermPtr a, ATermPtr b);
ATermPtr a_prod(ATermPtr a, ATermPtr b);

struct AFormula;
using AFormulaPtr = std::shared_ptr<const AFormula>;

// Mirrors the string-language formula structure over arithmetic atoms.
struct AFormula {
  Conn kind;
  bool neq = false;
  ATermPtr lhs, rhs;
  AFormulaPtr a, b;
  std::string var;
  std::uint32_t ex_count = 0;

  static AFormulaPtr atom(bool neq, ATermPtr l, ATermPtr r);
  static AFormulaPtr eq(ATermPtr l, ATermPtr r) { return atom(false, std::move(l), std::move(r)); }
  static AFormulaPtr neq_atom(ATermPtr l, ATermPtr r) {
    return atom(true, std::move(l), std::move(r));
  }
  static AFormulaPtr lnot(AFormulaPtr a);
  static AFormulaPtr land(AFormulaPtr a, AFormulaPtr b);
  static AFormulaPtr lor(AFormulaPtr a, AFormulaPtr b);
  static AFormulaPtr implies(AFormulaPtr a, AFormulaPtr b);
  static AFormulaPtr forall(std::string var, AFormulaPtr body);
  static AFormulaPtr exists(std::string var, AFormulaPtr body);
  static AFormulaPtr chain(Conn op, const std::vector<AFormulaPtr>& parts);
};

std::set<std::string> a_free_vars(const AFormulaPtr& f);
std::set<std::string> a_all_vars(const AFormulaPtr& f);
bool a_equal(const AFormulaPtr& a, const AFormulaPtr& b);

// ---------------------------------------------------------------------
// The base-53 string <-> number bijection

// Horner evaluation with digit values 1..53 in the alphabet numbering.
ANat num(const std::string& s);
// Inverse (bijective base-53 numeration).
std::string denum(ANat n);
// Successor in the string ordering; num(successor(s)) == num(s) + 1.
std::string successor(const std::string& s);
// n copies of 'a'; num(iota(n)) == (53^n - 1) / 52.
std::string iota(std::size_t n);

// ---------------------------------------------------------------------
// Formula templates

// Pow53(k): k is a power of 53.
AFormulaPtr gen_pow53(const std::string& k);
AFormulaPtr pow53_formula(ATermPtr k, FreshNamer& namer);
// lt(x,y): x < y.
AFormulaPtr gen_lt(const std::string& x, const std::string& y);
AFormulaPtr lt_formula(ATermPtr x, ATermPtr y, FreshNamer& namer);
// Cat(x,y,z): z = num of the concatenation of the strings numbered x, y.
AFormulaPtr gen_cat(const std::string& x, const std::string& y, const std::string& z);
AFormulaPtr cat_formula(ATermPtr x, ATermPtr y, ATermPtr z, FreshNamer& namer);

// ---------------------------------------------------------------------
// Evaluation

using AEnv = std::map<std::string, ANat>;

struct ABounds {
  ANat max_value = 200000;  // bounded fallback range 0..max_value
  std::size_t max_solutions = 1u << 20;
  std::uint64_t step_budget = 400000000ull;
};

ANat eval_aterm(const ATermPtr& t, const AEnv& env);

// Three-valued evaluation over the naturals with guided instantiation:
// equations linear in one unknown are inverted, ground products are solved
// by divisor-pair enumeration, two-unknown sums enumerate splits, and
// anything else falls back to the bounded range.
Verdict eval_arith(const AFormulaPtr& f, const AEnv& env, const ABounds& bounds);

// ---------------------------------------------------------------------
// Concrete syntax (same formula level as the string language; terms use
// numerals, +, * and parentheses, with * binding tighter than +)

AFormulaPtr parse_aformula(const std::string& text);
std::string print_aterm(const ATermPtr& t);
std::string print_aformula(const AFormulaPtr& f, PrintStyle style = PrintStyle::Minimal);

}  // namespace godelstr
