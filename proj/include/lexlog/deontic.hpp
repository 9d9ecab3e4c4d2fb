#pragma once

#include <vector>

#include "lexlog/ir.hpp"

namespace lexlog {

enum class DeonticMode { kNone, kObligation, kPermission, kProhibition };

// A literal before normalization: an operator over a stack of negations.
struct DeonticLiteral {
  DeonticMode mode = DeonticMode::kNone;
  int negations = 0;
  Literal atom;  // mode kNone, neg false

  friend bool operator==(const DeonticLiteral&, const DeonticLiteral&) = default;
};

// F p -> O ~p; negation stacks collapse to parity.
DeonticLiteral normalize_deontic(const DeonticLiteral& d);

Literal to_literal(const DeonticLiteral& d);
DeonticLiteral from_literal(const Literal& l);

// q <-> ~q, O q <-> O ~q, P q <-> O ~q.
std::vector<Literal> conflicts_of(const Literal& l);
bool conflicting(const Literal& a, const Literal& b);

// Head of an exception rule generated from "unless": the literal that
// defeats the base conclusion (~q, P ~q for O q, O ~q for P q).
Literal exception_head(const Literal& base);

}  // namespace lexlog
