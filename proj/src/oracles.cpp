#include "oracles.hpp"

#include <array>
#include <vector>

namespace godelstr {

namespace {

std::vector<std::size_t> occurrences(const std::string& x, const std::string& u) {
  std::vector<std::size_t> occ;
  std::size_t pos = 0;
  while ((pos = x.find(u, pos)) != std::string::npos) {
    occ.push_back(pos);
    pos += 1;
  }
  return occ;
}

void check_replace_preconditions(const std::string& x, const std::string& u,
                                 const std::string& v,
                                 const std::vector<std::size_t>& occ) {
  if (u.empty()) {
    throw Error(ErrorCode::PreconditionViolated, "replacement pattern u is empty");
  }
  std::array<bool, 256> in_u{};
  for (char c : u) in_u[static_cast<unsigned char>(c)] = true;
  for (char c : v) {
    if (in_u[static_cast<unsigned char>(c)]) {
      throw Error(ErrorCode::PreconditionViolated, "u and v share a character");
    }
  }
  for (std::size_t i = 1; i < occ.size(); ++i) {
    if (occ[i] < occ[i - 1] + u.size()) {
      throw Error(ErrorCode::PreconditionViolated, "overlapping instances of u in x");
    }
  }
  (void)x;
}

bool self_overlapping(const std::string& p) {
  for (std::size_t k = 1; k < p.size(); ++k) {
    if (p.compare(k, std::string::npos, p, 0, p.size() - k) == 0) return true;
  }
  return false;
}

}  // namespace

std::string native_replace_all(const std::string& x, const std::string& u,
                               const std::string& v) {
  auto occ = occurrences(x, u);
  check_replace_preconditions(x, u, v, occ);
  std::string out;
  out.reserve(x.size() + occ.size() * v.size());
  std::size_t pos = 0;
  for (std::size_t o : occ) {
    out.append(x, pos, o - pos);
    out += v;
    pos = o + u.size();
  }
  out.append(x, pos, std::string::npos);
  return out;
}

std::string repall_witness(const std::string& x, const std::string& u, const std::string& v,
                           const std::string& p) {
  auto occ = occurrences(x, u);
  check_replace_preconditions(x, u, v, occ);
  if (p.empty() || self_overlapping(p)) {
    throw Error(ErrorCode::PreconditionViolated, "p is empty or overlaps itself");
  }
  if (x.find(p) != std::string::npos) {
    throw Error(ErrorCode::PreconditionViolated, "p occurs inside x");
  }
  std::size_t n = occ.size();
  std::size_t total = (n + 2) * p.size();
  for (std::size_t i = 0; i <= n; ++i) {
    total += x.size() + i * v.size() - i * u.size();
  }
  std::string out;
  out.reserve(total);
  std::string cur = x;
  out += p;
  out += cur;
  std::size_t hint = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t at = cur.find(u, hint);
    cur.replace(at, u.size(), v);
    hint = at + v.size();
    // A fresh occurrence of p could only span the modified region.
    std::size_t win_from = at >= p.size() ? at - p.size() : 0;
    std::size_t win_len = std::min(cur.size() - win_from, v.size() + 2 * p.size());
    std::string_view window(cur.data() + win_from, win_len);
    if (window.find(p) != std::string_view::npos) {
      throw Error(ErrorCode::PreconditionViolated, "p occurs inside an intermediate result");
    }
    out += p;
    out += cur;
  }
  out += p;
  return out;
}

std::string shortest_absent_colon_run(const std::string& x) {
  std::size_t longest = 0, run = 0;
  for (char c : x) {
    if (c == ':') {
      ++run;
      longest = std::max(longest, run);
    } else {
      run = 0;
    }
  }
  return std::string(longest + 1, ':');
}

QStages q_stages(const std::string& x) {
  QStages s;
  s.q = shortest_absent_colon_run(x);
  std::string marker = "*" + s.q;
  s.x1 = native_replace_all(x, "\\", marker);
  s.x2 = native_replace_all(s.x1, marker, "\\0");
  s.x3 = native_replace_all(s.x2, "\"", marker);
  s.y = native_replace_all(s.x3, marker, "\\1");
  return s;
}

WitnessMap q_witnesses(const std::string& x, const FormulaPtr& q_formula, std::size_t base) {
  if (q_formula->kind != Conn::Exists) {
    throw Error(ErrorCode::BadInput, "q_witnesses: expected the expanded Q to open with Eq:");
  }
  QStages st = q_stages(x);
  std::string marker = "*" + st.q;
  std::string punct = "+" + st.q;

  WitnessMap w;
  w.set(base, Val::of(st.q));

  struct Stage {
    std::string in, u, v, out;
  };
  std::array<Stage, 4> stages = {Stage{x, "\\", marker, st.x1}, Stage{st.x1, marker, "\\0", st.x2},
                                 Stage{st.x2, "\"", marker, st.x3},
                                 Stage{st.x3, marker, "\\1", st.y}};

  // Body of Eq: is And(Punct', Ex1: And(RA1', Ex2: And(RA2', Ex3: And(RA3', RA4')))).
  const Formula* node = q_formula->a.get();
  std::size_t node_base = base + 1;
  for (int i = 0; i < 4; ++i) {
    if (node->kind != Conn::And) {
      throw Error(ErrorCode::BadInput, "q_witnesses: unexpected Q expansion shape");
    }
    const Formula* left = node->a.get();   // Punct' (i==0) or RepAll_i'
    const Formula* right = node->b.get();  // Exi: ... or RA4'
    std::size_t right_base = node_base + left->ex_count;
    if (i > 0) {
      // left is RepAll_i's expansion, rooted at Es:.
      if (left->kind != Conn::Exists) {
        throw Error(ErrorCode::BadInput, "q_witnesses: RepAll expansion does not open with Es:");
      }
      const Stage& stage = stages[static_cast<std::size_t>(i - 1)];
      w.set_lazy(node_base, [stage, punct] {
        return Val::of(repall_witness(stage.in, stage.u, stage.v, punct));
      });
    }
    if (i < 3) {
      if (right->kind != Conn::Exists) {
        throw Error(ErrorCode::BadInput, "q_witnesses: missing stage existential");
      }
      w.set(right_base, Val::of(i == 0 ? st.x1 : i == 1 ? st.x2 : st.x3));
      node = right->a.get();
      node_base = right_base + 1;
    } else {
      // right is RA4' itself.
      if (right->kind != Conn::Exists) {
        throw Error(ErrorCode::BadInput, "q_witnesses: RepAll expansion does not open with Es:");
      }
      const Stage& stage = stages[3];
      w.set_lazy(right_base, [stage, punct] {
        return Val::of(repall_witness(stage.in, stage.u, stage.v, punct));
      });
    }
  }
  return w;
}

}  // namespace godelstr
