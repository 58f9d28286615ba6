#pragma once

#include "pvble.hpp"

namespace godelstr {

// The self-referential sentence of a machine's proof system:
//   full = alpha ++ '"' ++ beta ++ '"',  beta = encode_chars(alpha),
// where alpha is the printed text of
//   Ex:Ey: <Q(x,y)> & ~<Pvble(x"\1"y"\1")> & x=
// with all internal binders renamed away from x and y.
struct GodelSentence {
  std::string full;
  std::string alpha;
  std::string beta;
};

GodelSentence gen_godel(const Machine& m);

// True iff s splits as alpha ++ '"' ++ beta ++ '"' with beta the content
// of the final string literal, decode_chars(beta) == alpha, and s parsing
// as a sentence.  Independent of gen_godel internals.
bool check_fixed_point(const std::string& s);

// Runs the machine on its own sentence (it must halt within fuel) and then
// verifies the halting witness through the Pvble formula: the proof system
// proves the sentence that asserts its own unprovability.
struct FalseBranchReport {
  std::size_t sentence_length = 0;
  std::uint64_t halt_steps = 0;
  Verdict pvble_verdict;
};

FalseBranchReport demo_false_branch(const Machine& m, std::uint64_t fuel);

}  // namespace godelstr
