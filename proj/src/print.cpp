#include "print.hpp"

namespace godelstr {

std::string print_literal(const std::string& value) {
  return "\"" + encode_chars(value) + "\"";
}

std::string print_term(const Term& t) {
  std::string out;
  for (const auto& atom : t.atoms) {
    if (atom.is_var) {
      out += atom.text;
    } else {
      out += print_literal(atom.text);
    }
  }
  return out;
}

namespace {

// Precedence levels for the formula operators; higher binds tighter.
// Quantifiers are 0 (their scope extends right as far as the group allows),
// ->: 1, |: 2, &: 3, ~: 4.
int prec_of(Conn k) {
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

// `min_prec` is the loosest operator printable here without parentheses;
// `tail` is true when this subformula extends to the end of the enclosing
// group, which is what lets an unparenthesized quantifier appear.
void print_min(const FormulaPtr& f, int min_prec, bool tail, std::string& out) {
  bool parens;
  if (f->kind == Conn::Atom) {
    parens = false;
  } else if (f->kind == Conn::Forall || f->kind == Conn::Exists) {
    parens = min_prec > 0 && !tail;
  } else {
    parens = prec_of(f->kind) < min_prec;
  }
  if (parens) {
    out += '(';
    print_min(f, 0, true, out);
    out += ')';
    return;
  }
  switch (f->kind) {
    case Conn::Atom:
      out += print_term(f->lhs);
      out += f->neq ? '!' : '=';
      out += print_term(f->rhs);
      break;
    case Conn::Not:
      out += '~';
      print_min(f->a, 4, tail, out);
      break;
    case Conn::And:
      print_min(f->a, 3, false, out);
      out += '&';
      print_min(f->b, 4, tail, out);
      break;
    case Conn::Or:
      print_min(f->a, 2, false, out);
      out += '|';
      print_min(f->b, 3, tail, out);
      break;
    case Conn::Implies:
      print_min(f->a, 1, false, out);
      out += "->";
      print_min(f->b, 2, tail, out);
      break;
    case Conn::Forall:
    case Conn::Exists:
      out += f->kind == Conn::Forall ? 'A' : 'E';
      out += f->var;
      out += ':';
      print_min(f->a, 0, tail, out);
      break;
  }
}

void print_full(const FormulaPtr& f, std::string& out);

void print_full_child(const FormulaPtr& f, std::string& out) {
  out += '(';
  print_full(f, out);
  out += ')';
}

void print_full(const FormulaPtr& f, std::string& out) {
  switch (f->kind) {
    case Conn::Atom:
      out += print_term(f->lhs);
      out += f->neq ? '!' : '=';
      out += print_term(f->rhs);
      break;
    case Conn::Not:
      out += '~';
      print_full_child(f->a, out);
      break;
    case Conn::And:
    case Conn::Or:
    case Conn::Implies:
      print_full_child(f->a, out);
      out += f->kind == Conn::And ? "&" : f->kind == Conn::Or ? "|" : "->";
      print_full_child(f->b, out);
      break;
    case Conn::Forall:
    case Conn::Exists:
      out += f->kind == Conn::Forall ? 'A' : 'E';
      out += f->var;
      out += ':';
      print_full_child(f->a, out);
      break;
  }
}

}  // namespace

std::string print_formula(const FormulaPtr& f, PrintStyle style) {
  std::string out;
  if (style == PrintStyle::Minimal) {
    print_min(f, 0, true, out);
  } else {
    print_full(f, out);
  }
  return out;
}

}  // namespace godelstr
