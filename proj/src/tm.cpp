#include "tm.hpp"

#include <fstream>
#include <sstream>

#include "alphabet.hpp"

namespace godelstr {

int Symbol::char_number_of(const Symbol& s) { return s.blank ? 0 : char_number(s.ch); }

int symbol_index(const Symbol& s) { return s.blank ? 54 : char_number(s.ch); }

Symbol symbol_at_index(int idx) {
  return idx == 54 ? Symbol::Blank() : Symbol::of(char_at(idx));
}

const Action& Machine::action(const Symbol& sym, int state) const {
  auto it = rules.find({state, symbol_index(sym)});
  if (it == rules.end()) {
    throw Error(ErrorCode::MachineFormat, "rule table is not total");
  }
  return it->second;
}

bool valid_bstring(const std::vector<Symbol>& s) {
  return s.empty() || !s.back().blank;
}

Config step(const Machine& m, const Config& c) {
  if (c.state == 0) {
    throw Error(ErrorCode::AlreadyHalted, "step on a halted configuration");
  }
  Symbol sym = c.right.empty() ? Symbol::Blank() : c.right.front();
  const Action& act = m.action(sym, c.state);

  // Write: an at-most-one-symbol right b-string is overwritten as a whole;
  // writing the blank there empties it.
  std::vector<Symbol> right;
  if (c.right.size() <= 1) {
    if (!act.write.blank) right.push_back(act.write);
  } else {
    right = c.right;
    right[0] = act.write;
  }

  Config out;
  out.state = act.next_state;
  switch (act.dir) {
    case Dir::N:
      out.left = c.left;
      out.right = std::move(right);
      break;
    case Dir::R: {
      // Move the first symbol of the new right string to the front of the
      // left string; extracting from empty extracts a blank, and a blank is
      // never prepended to an empty destination.
      std::vector<Symbol> from = std::move(right);
      std::vector<Symbol> to = c.left;
      Symbol e = from.empty() ? Symbol::Blank() : from.front();
      if (!from.empty()) from.erase(from.begin());
      if (!(e.blank && to.empty())) to.insert(to.begin(), e);
      out.left = std::move(to);
      out.right = std::move(from);
      break;
    }
    case Dir::L: {
      std::vector<Symbol> from = c.left;
      std::vector<Symbol> to = std::move(right);
      Symbol e = from.empty() ? Symbol::Blank() : from.front();
      if (!from.empty()) from.erase(from.begin());
      if (!(e.blank && to.empty())) to.insert(to.begin(), e);
      out.left = std::move(from);
      out.right = std::move(to);
      break;
    }
  }
  return out;
}

RunOutcome run(const Machine& m, const std::string& input, std::uint64_t fuel) {
  require_valid_str(input, "machine input");
  Config c;
  c.state = 1;
  c.right.reserve(input.size());
  for (char ch : input) c.right.push_back(Symbol::of(ch));
  RunOutcome out;
  out.trace.push_back(c);
  for (std::uint64_t i = 0; i < fuel; ++i) {
    if (c.state == 0) break;
    c = step(m, c);
    out.trace.push_back(c);
  }
  out.halted = out.trace.back().state == 0;
  return out;
}

std::string encode_bstring(const std::vector<Symbol>& s) {
  std::string out;
  out.reserve(s.size() * 2);
  for (const Symbol& sym : s) {
    if (sym.blank) {
      out += "\\2";
    } else if (sym.ch == '\\') {
      out += "\\0";
    } else if (sym.ch == '"') {
      out += "\\1";
    } else {
      out += sym.ch;
    }
  }
  return out;
}

std::string encode_trace(const Trace& t) {
  if (t.empty() || t.back().state != 0) {
    throw Error(ErrorCode::NotHalted, "trace does not end in the final state");
  }
  std::string out;
  for (const Config& c : t) {
    out += '"';
    out += encode_bstring(c.left);
    out += '"';
    out += encode_bstring(c.right);
    out += "\\3";
    out += std::to_string(c.state);
  }
  out += '"';
  return out;
}

namespace {

Symbol parse_symbol_token(const std::string& tok, std::size_t line_no, bool allow_dot,
                          bool& is_dot) {
  is_dot = false;
  if (tok.size() != 1) {
    throw Error(ErrorCode::MachineFormat, "bad symbol '" + tok + "'", line_no);
  }
  char c = tok[0];
  if (c == '.') {
    if (!allow_dot) {
      throw Error(ErrorCode::MachineFormat, "'.' not allowed here", line_no);
    }
    is_dot = true;
    return Symbol::Blank();
  }
  if (c == '_') return Symbol::Blank();
  if (!is_alpha_char(c)) {
    throw Error(ErrorCode::MachineFormat, std::string("bad symbol '") + c + "'", line_no);
  }
  return Symbol::of(c);
}

int parse_state_token(const std::string& tok, std::size_t line_no) {
  if (tok.empty()) throw Error(ErrorCode::MachineFormat, "missing state", line_no);
  for (char c : tok) {
    if (!is_digit(c)) {
      throw Error(ErrorCode::MachineFormat, "bad state '" + tok + "'", line_no);
    }
  }
  long v = std::stol(tok);
  if (v < 0 || v > 1000000) {
    throw Error(ErrorCode::MachineFormat, "state out of range '" + tok + "'", line_no);
  }
  return static_cast<int>(v);
}

}  // namespace

Machine parse_machine(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  Machine m;
  bool have_states = false;

  struct PendingWildcard {
    int state;
    bool write_dot;
    Action action;
    std::size_t line_no;
  };
  std::vector<PendingWildcard> wildcards;

  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(t);
    if (tok.empty()) continue;
    if (!have_states) {
      if (tok.size() != 2 || tok[0] != "states") {
        throw Error(ErrorCode::MachineFormat, "expected 'states <r>' header", line_no);
      }
      m.r = parse_state_token(tok[1], line_no);
      if (m.r < 1) {
        throw Error(ErrorCode::MachineFormat, "r must be at least 1", line_no);
      }
      have_states = true;
      continue;
    }
    if (tok.size() != 6 || tok[2] != "->") {
      throw Error(ErrorCode::MachineFormat, "expected '<q> <sym> -> <q2> <sym2> <L|R|N>'",
                  line_no);
    }
    int q = parse_state_token(tok[0], line_no);
    if (q < 1 || q > m.r) {
      throw Error(ErrorCode::MachineFormat, "rule state out of range", line_no);
    }
    bool read_dot = false;
    Symbol read = parse_symbol_token(tok[1], line_no, true, read_dot);
    int q2 = parse_state_token(tok[3], line_no);
    if (q2 < 0 || q2 > m.r) {
      throw Error(ErrorCode::MachineFormat, "next state out of range", line_no);
    }
    bool write_dot = false;
    Symbol write = parse_symbol_token(tok[4], line_no, true, write_dot);
    if (tok[5].size() != 1 || (tok[5][0] != 'L' && tok[5][0] != 'R' && tok[5][0] != 'N')) {
      throw Error(ErrorCode::MachineFormat, "direction must be L, R or N", line_no);
    }
    Action act{write, q2, static_cast<Dir>(tok[5][0])};
    if (read_dot) {
      wildcards.push_back(PendingWildcard{q, write_dot, act, line_no});
      continue;
    }
    if (write_dot) act.write = read;
    auto key = std::make_pair(q, symbol_index(read));
    if (!m.rules.emplace(key, act).second) {
      throw Error(ErrorCode::MachineFormat, "duplicate rule for this state and symbol", line_no);
    }
  }
  if (!have_states) {
    throw Error(ErrorCode::MachineFormat, "missing 'states <r>' header");
  }
  for (const auto& w : wildcards) {
    bool matched = false;
    for (int idx = 1; idx <= 54; ++idx) {
      auto key = std::make_pair(w.state, idx);
      if (m.rules.count(key)) continue;
      Action act = w.action;
      if (w.write_dot) act.write = symbol_at_index(idx);
      m.rules.emplace(key, act);
      matched = true;
    }
    if (!matched) {
      throw Error(ErrorCode::MachineFormat, "wildcard rule matches nothing", w.line_no);
    }
  }
  for (int q = 1; q <= m.r; ++q) {
    for (int idx = 1; idx <= 54; ++idx) {
      if (!m.rules.count({q, idx})) {
        throw Error(ErrorCode::MachineFormat,
                    "incomplete rule table: no rule for state " + std::to_string(q) +
                        ", symbol #" + std::to_string(idx));
      }
    }
  }
  return m;
}

std::string print_machine(const Machine& m) {
  std::ostringstream out;
  out << "states " << m.r << "\n";
  for (int q = 1; q <= m.r; ++q) {
    for (int idx = 1; idx <= 54; ++idx) {
      const Action& a = m.rules.at({q, idx});
      Symbol read = symbol_at_index(idx);
      out << q << ' ' << (read.blank ? '_' : read.ch) << " -> " << a.next_state << ' '
          << (a.write.blank ? '_' : a.write.ch) << ' ' << static_cast<char>(a.dir) << "\n";
    }
  }
  return out.str();
}

Machine load_machine_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::BadInput, "cannot open machine file '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_machine(ss.str());
}

Machine machine_halt() { return parse_machine("states 1\n1 . -> 0 . N\n"); }

Machine machine_loop() { return parse_machine("states 1\n1 . -> 1 . N\n"); }

Machine machine_shiftr() {
  return parse_machine("states 1\n1 _ -> 0 _ N\n1 . -> 1 _ R\n");
}

}  // namespace godelstr
