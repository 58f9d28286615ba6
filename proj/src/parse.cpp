#include "parse.hpp"

namespace godelstr {

namespace {

struct Lexer {
  const std::string& text;
  std::size_t pos = 0;

  explicit Lexer(const std::string& t) : text(t) {}

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
    if (!accept(c)) {
      throw syntax_error(std::string("expected ") + what, pos);
    }
  }

  // A variable name: lower-case letter then digits; greedy.
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

  // Content of a string literal, decoded.  Caller consumed the opening '"'.
  std::string read_literal_body(std::size_t open_pos) {
    std::string content;
    for (;;) {
      if (pos >= text.size()) {
        throw syntax_error("unterminated string literal", open_pos);
      }
      char c = text[pos];
      if (c == '"') {
        ++pos;
        break;
      }
      if (!is_alpha_char(c)) {
        throw syntax_error("character outside the alphabet inside a literal", pos);
      }
      content += c;
      ++pos;
    }
    try {
      return decode_chars(content);
    } catch (const Error& e) {
      throw Error(ErrorCode::MalformedEscape, e.what(), open_pos + 1);
    }
  }
};

struct Parser {
  Lexer lex;

  explicit Parser(const std::string& text) : lex(text) {}

  bool at_term_start() {
    char c = lex.peek();
    return is_lower(c) || c == '"';
  }

  Term parse_term() {
    Term t;
    for (;;) {
      char c = lex.peek();
      if (is_lower(c)) {
        t.atoms.push_back(var_atom(lex.read_variable()));
      } else if (c == '"') {
        std::size_t open = lex.pos;
        ++lex.pos;
        t.atoms.push_back(lit_atom(lex.read_literal_body(open)));
      } else {
        break;
      }
    }
    if (t.atoms.empty()) {
      throw syntax_error("expected a term", lex.pos);
    }
    return t;
  }

  FormulaPtr parse_atom() {
    Term l = parse_term();
    bool neq;
    if (lex.accept('=')) {
      neq = false;
    } else if (lex.accept('!')) {
      neq = true;
    } else {
      throw syntax_error("expected '=' or '!' after term", lex.pos);
    }
    Term r = parse_term();
    return Formula::atom(neq, std::move(l), std::move(r));
  }

  FormulaPtr parse_primary() {
    if (lex.accept('(')) {
      FormulaPtr f = parse_formula();
      lex.expect(')', "')'");
      return f;
    }
    if (at_term_start()) return parse_atom();
    throw syntax_error("expected a formula", lex.pos);
  }

  FormulaPtr parse_unary() {
    if (lex.accept('~')) return Formula::lnot(parse_unary());
    char c = lex.peek();
    if (c == 'A' || c == 'E') {
      ++lex.pos;
      std::string var = lex.read_variable();
      lex.expect(':', "':' after quantified variable");
      FormulaPtr body = parse_formula();
      return c == 'A' ? Formula::forall(std::move(var), std::move(body))
                      : Formula::exists(std::move(var), std::move(body));
    }
    return parse_primary();
  }

  FormulaPtr parse_and() {
    FormulaPtr l = parse_unary();
    while (lex.accept('&')) l = Formula::land(l, parse_unary());
    return l;
  }

  FormulaPtr parse_or() {
    FormulaPtr l = parse_and();
    while (lex.accept('|')) l = Formula::lor(l, parse_and());
    return l;
  }

  FormulaPtr parse_formula() {
    FormulaPtr l = parse_or();
    for (;;) {
      lex.skip_ws();
      if (lex.pos + 1 < lex.text.size() && lex.text[lex.pos] == '-' &&
          lex.text[lex.pos + 1] == '>') {
        lex.pos += 2;
        l = Formula::implies(l, parse_or());
      } else if (lex.pos < lex.text.size() && lex.text[lex.pos] == '-') {
        throw syntax_error("'-' must be followed by '>'", lex.pos);
      } else {
        break;
      }
    }
    return l;
  }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
  Parser p(text);
  FormulaPtr f = p.parse_formula();
  if (!p.lex.eof()) {
    throw syntax_error("unexpected trailing input", p.lex.pos);
  }
  return f;
}

Term parse_term(const std::string& text) {
  Parser p(text);
  Term t = p.parse_term();
  if (!p.lex.eof()) {
    throw syntax_error("unexpected trailing input after term", p.lex.pos);
  }
  return t;
}

std::string parse_literal(const std::string& text) {
  Lexer lex(text);
  lex.skip_ws();
  std::size_t open = lex.pos;
  if (!lex.accept('"')) {
    throw syntax_error("expected a string literal", lex.pos);
  }
  std::string value = lex.read_literal_body(open);
  if (!lex.eof()) {
    throw syntax_error("unexpected trailing input after literal", lex.pos);
  }
  return value;
}

}  // namespace godelstr
