#pragma once

#include <string>

#include "fedosov/scalar.hpp"

namespace fedosov {

// Grammar (whitespace-insensitive):
//   expr    := term (('+'|'-') term)*
//   term    := factor ('*' factor)*
//   factor  := base ('^' natural)?
//   base    := rational | 'i' | coord | func | '(' expr ')' | '-' base
//   coord   := 'x[' natural ']'
//   func    := ident deriv? '(' expr (',' expr)* ')'
//   deriv   := '^(' natural (',' natural)* ')'
//   rational:= natural ('/' natural)?
// 'i', 'x' and 'h' are reserved and may not name functions. Function
// arguments must be exactly x[1],...,x[2n] in that order; derivative
// multi-indices must have length 2n; coordinate indices lie in 1..2n.
ScalarCoeff parse_expr(const std::string& source, int n);

enum class RenderStyle { human, machine };

// Deterministic rendering, terms in descending monomial order. Machine style
// round-trips through parse_expr: functions carry their argument list and,
// when differentiated, a ^(o1,...,o2n) marker. Human style drops the
// argument list.
std::string render_expr(const ScalarCoeff& a, RenderStyle style = RenderStyle::machine);

std::string render_atom(const Atom& a, RenderStyle style);
std::string render_gaussian(const GaussianRational& c);

}  // namespace fedosov
