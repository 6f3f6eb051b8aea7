#ifndef ICK_TRANSLATE_HPP
#define ICK_TRANSLATE_HPP

// The modal Kuroda translation embedding classical CK-S5 into ICKS5:
// tau is homomorphic on the propositional structure and inserts a double
// negation after each modality; tr(f) = ~~tau(f).

#include "ick/model.hpp"

namespace ick {

inline F tau(F f) {
  switch (f->kind) {
    case Kind::Bottom:
    case Kind::Atom: return f;
    case Kind::And: return f_and(tau(f->lhs), tau(f->rhs));
    case Kind::Or: return f_or(tau(f->lhs), tau(f->rhs));
    case Kind::Implies: return f_imp(tau(f->lhs), tau(f->rhs));
    case Kind::Know: return f_know(f->name, f_neg(f_neg(tau(f->lhs))));
    case Kind::Com: return f_com(f_neg(f_neg(tau(f->lhs))));
  }
  throw std::logic_error("unreachable");
}

inline F tr(F f) { return f_neg(f_neg(tau(f))); }

// Classically the translation changes nothing: f and tr(f) agree at every
// world of an S5 model.
inline bool check_translation_equiv(const ClassicalModel& m, F f) {
  if (!check_classical(m).empty())
    throw std::invalid_argument("check_translation_equiv needs a classical S5 model");
  ClassicalEvaluator ev(m);
  F t = tr(f);
  for (int w = 0; w < m.size(); ++w)
    if (ev.truth(w, f) != ev.truth(w, t)) return false;
  return true;
}

}  // namespace ick

#endif  // ICK_TRANSLATE_HPP
