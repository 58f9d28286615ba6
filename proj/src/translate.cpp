#include "translate.hpp"

namespace godelstr {

namespace {

struct Translator {
  FreshNamer namer;

  ATermPtr operand(const TermAtom& atom) {
    if (atom.is_var) return a_var(atom.text);
    return a_num(num(atom.text));
  }

  // Builds the constraint chain pinning `result` to the number of the
  // concatenation of the operands, peeling from the right:
  //   Cat(prefix, last, result) with the prefix pinned recursively.
  AFormulaPtr chain(const std::vector<ATermPtr>& ops, std::size_t count,
                    const std::string& result) {
    if (count == 2) {
      return cat_formula(ops[0], ops[1], a_var(result), namer);
    }
    std::string prefix = namer.fresh();
    AFormulaPtr last = cat_formula(a_var(prefix), ops[count - 1], a_var(result), namer);
    AFormulaPtr rest = chain(ops, count - 1, prefix);
    return AFormula::exists(prefix, AFormula::land(last, rest));
  }

  AFormulaPtr atom(const FormulaPtr& f) {
    std::vector<ATermPtr> l, r;
    for (const auto& a : f->lhs.atoms) l.push_back(operand(a));
    for (const auto& a : f->rhs.atoms) r.push_back(operand(a));
    if (l.size() == 1 && r.size() == 1) {
      return AFormula::atom(f->neq, l[0], r[0]);
    }
    if (l.size() == 1) {
      std::string tr = namer.fresh();
      return AFormula::exists(
          tr, AFormula::land(AFormula::atom(f->neq, l[0], a_var(tr)), chain(r, r.size(), tr)));
    }
    if (r.size() == 1) {
      std::string tl = namer.fresh();
      return AFormula::exists(
          tl, AFormula::land(AFormula::atom(f->neq, a_var(tl), r[0]), chain(l, l.size(), tl)));
    }
    std::string tl = namer.fresh();
    std::string tr = namer.fresh();
    AFormulaPtr body = AFormula::land(
        AFormula::land(AFormula::atom(f->neq, a_var(tl), a_var(tr)), chain(l, l.size(), tl)),
        chain(r, r.size(), tr));
    return AFormula::exists(tl, AFormula::exists(tr, body));
  }

  AFormulaPtr walk(const FormulaPtr& f) {
    switch (f->kind) {
      case Conn::Atom:
        return atom(f);
      case Conn::Not:
        return AFormula::lnot(walk(f->a));
      case Conn::And:
        return AFormula::land(walk(f->a), walk(f->b));
      case Conn::Or:
        return AFormula::lor(walk(f->a), walk(f->b));
      case Conn::Implies:
        return AFormula::implies(walk(f->a), walk(f->b));
      case Conn::Forall:
        return AFormula::forall(f->var, walk(f->a));
      case Conn::Exists:
        return AFormula::exists(f->var, walk(f->a));
    }
    return nullptr;
  }
};

}  // namespace

AFormulaPtr translate(const FormulaPtr& f) {
  Translator tr{FreshNamer(all_vars(f))};
  return tr.walk(f);
}

}  // namespace godelstr
