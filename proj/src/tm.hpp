#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "errors.hpp"

namespace godelstr {

// Tape symbol: one of the 53 characters or the blank.
struct Symbol {
  bool blank = true;
  char ch = 0;

  static Symbol Blank() { return Symbol{}; }
  static Symbol of(char c) { return Symbol{false, c}; }
  friend bool operator==(const Symbol& a, const Symbol& b) {
    return a.blank == b.blank && (a.blank || a.ch == b.ch);
  }
  friend bool operator<(const Symbol& a, const Symbol& b) {
    // Characters in numbering order first, the blank last.
    auto key = [](const Symbol& s) { return s.blank ? 54 : 0 + char_number_of(s); };
    return key(a) < key(b);
  }
  static int char_number_of(const Symbol& s);
};

enum class Dir : char { L = 'L', R = 'R', N = 'N' };

struct Action {
  Symbol write;
  int next_state = 0;  // 0..r, 0 = final
  Dir dir = Dir::N;
  friend bool operator==(const Action& a, const Action& b) {
    return a.write == b.write && a.next_state == b.next_state && a.dir == b.dir;
  }
};

struct Rule {
  Symbol read;
  int state = 1;  // 1..r
  Action action;
};

// Total rule table: exactly 54*r rules, one per (symbol, state) pair.
struct Machine {
  int r = 1;
  std::map<std::pair<int, int>, Action> rules;  // key: (state, symbol index 1..54)

  const Action& action(const Symbol& sym, int state) const;
  friend bool operator==(const Machine& a, const Machine& b) {
    return a.r == b.r && a.rules == b.rules;
  }
};

// Symbol index used for table ordering: characters 1..53, blank 54.
int symbol_index(const Symbol& s);
Symbol symbol_at_index(int idx);

// A configuration: left b-string (head-adjacent symbol first), control
// state, right b-string (head cell first).  Neither b-string ends with a
// blank.
struct Config {
  std::vector<Symbol> left;
  int state = 1;
  std::vector<Symbol> right;
  friend bool operator==(const Config& a, const Config& b) {
    return a.left == b.left && a.state == b.state && a.right == b.right;
  }
};

bool valid_bstring(const std::vector<Symbol>& s);

using Trace = std::vector<Config>;

// One computation step; mirrors the Write/Move formula semantics.
// Throws Error(AlreadyHalted) when c.state == 0.
Config step(const Machine& m, const Config& c);

struct RunOutcome {
  bool halted = false;
  Trace trace;
};

// Iterates step from (empty, 1, input) until state 0 or fuel runs out.
RunOutcome run(const Machine& m, const std::string& input, std::uint64_t fuel);

// Per-symbol value encoding of a b-string: '\'->\0, '"'->\1, blank->\2.
std::string encode_bstring(const std::vector<Symbol>& s);

// The trace string "l0"r0\3q0"..."ln"rn\3qn" of a halting trace.
// Throws Error(NotHalted) when the trace does not end in state 0.
std::string encode_trace(const Trace& t);

// Machine file format: a `states <r>` line, then rule lines
// `<q> <sym> -> <q'> <sym'> <L|R|N>`, with `#` comments, `_` for the
// blank, read symbol `.` for "every symbol not otherwise listed for this
// state", and write symbol `.` for "write what was read".
Machine parse_machine(const std::string& text);
std::string print_machine(const Machine& m);

Machine load_machine_file(const std::string& path);

// Shipped fixtures.
Machine machine_halt();    // every (c,1) -> (c,0,N)
Machine machine_loop();    // every (c,1) -> (c,1,N)
Machine machine_shiftr();  // erase and move right until blank, then halt

}  // namespace godelstr
