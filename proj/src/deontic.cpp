#include "lexlog/deontic.hpp"

namespace lexlog {

DeonticLiteral normalize_deontic(const DeonticLiteral& d) {
  DeonticLiteral out = d;
  if (out.mode == DeonticMode::kProhibition) {
    out.mode = DeonticMode::kObligation;
    out.negations += 1;
  }
  out.negations %= 2;
  return out;
}

Literal to_literal(const DeonticLiteral& d) {
  DeonticLiteral n = normalize_deontic(d);
  Literal out = n.atom;
  out.neg = n.negations == 1;
  out.mode = n.mode == DeonticMode::kObligation   ? Mode::kObligation
             : n.mode == DeonticMode::kPermission ? Mode::kPermission
                                                  : Mode::kNone;
  return out;
}

DeonticLiteral from_literal(const Literal& l) {
  DeonticLiteral d;
  d.atom = l;
  d.atom.neg = false;
  d.atom.mode = Mode::kNone;
  d.negations = l.neg ? 1 : 0;
  d.mode = l.mode == Mode::kObligation   ? DeonticMode::kObligation
           : l.mode == Mode::kPermission ? DeonticMode::kPermission
                                         : DeonticMode::kNone;
  return d;
}

std::vector<Literal> conflicts_of(const Literal& l) {
  Literal flipped = l;
  flipped.neg = !l.neg;
  switch (l.mode) {
    case Mode::kNone: return {flipped};
    case Mode::kObligation: {
      Literal perm = flipped;
      perm.mode = Mode::kPermission;
      return {flipped, perm};
    }
    case Mode::kPermission: {
      Literal obl = flipped;
      obl.mode = Mode::kObligation;
      return {obl};
    }
  }
  return {};
}

bool conflicting(const Literal& a, const Literal& b) {
  for (const auto& c : conflicts_of(a))
    if (c == b) return true;
  return false;
}

Literal exception_head(const Literal& base) {
  Literal out = base;
  out.neg = !base.neg;
  if (base.mode == Mode::kObligation) out.mode = Mode::kPermission;
  if (base.mode == Mode::kPermission) out.mode = Mode::kObligation;
  return out;
}

}  // namespace lexlog
