#pragma once

#include <string>

#include "kr/polynomial.hpp"

namespace kr {

// Parses the polynomial text grammar:
//   expression ::= term (('+'|'-') term)*
//   term       ::= factor ('*' factor)*
//   factor     ::= rational | variable ('^' positive-integer)?
//   rational   ::= integer ('/' positive-integer)?
// Whitespace is insignificant. Variables match [a-zA-Z][a-zA-Z0-9_]* and must
// exist in the table. A leading sign before the first term is tolerated on
// input but never printed.
Polynomial parse_polynomial(const std::string& text, const VarTablePtr& table);

// Canonical form: terms in graded-lex descending order, coefficient first,
// '*' separators, "p/q" rationals, unit coefficients elided except where the
// grammar requires them ("-1*z" for a leading negative unit, "1" and "-1" for
// constants). parse(print(p)) == p for every polynomial.
std::string to_text(const Polynomial& p);

} // namespace kr
