#pragma once

#include <string>

#include "eval.hpp"

namespace godelstr {

// Simultaneous replacement of every instance of u in x by v, under the
// assumptions the RepAll formula makes: u non-empty, instances pairwise
// non-overlapping, and u/v sharing no character.  Throws
// Error(PreconditionViolated) when they fail.
std::string native_replace_all(const std::string& x, const std::string& u, const std::string& v);

// The witness string p x1 p x2 p ... p xn p for RepAll's outer Exists,
// with x1 = x, xn = native_replace_all(x,u,v), and consecutive entries
// differing by one replacement, performed left to right.  Additionally
// requires p to be non-self-overlapping and absent from every xi.
std::string repall_witness(const std::string& x, const std::string& u, const std::string& v,
                           const std::string& p);

// The shortest run of ':' characters that is not a substring of x.
std::string shortest_absent_colon_run(const std::string& x);

// Witnesses making the fully expanded Q(x,y) evaluate True when y is the
// character-encoded form of x: the colon run q, the three stage
// intermediates x1..x3, and each stage's RepAll witness (supplied lazily;
// they are quadratic in |x|).  `q_formula` is the expansion the witnesses
// are addressed against; `base` is its starting Exists index.
WitnessMap q_witnesses(const std::string& x, const FormulaPtr& q_formula, std::size_t base = 0);

// Stage parameters of the encoding chain, exposed for tests: returns
// {x1, x2, x3, y} for the four RepAll stages of Q.
struct QStages {
  std::string q;  // colon run
  std::string x1, x2, x3, y;
};
QStages q_stages(const std::string& x);

}  // namespace godelstr
