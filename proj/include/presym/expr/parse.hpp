#pragma once

#include <string_view>

#include "presym/expr/rational_expr.hpp"

namespace presym {

/// Parses the expression grammar
///
///   expr    := term (('+'|'-') term)*
///   term    := factor (('*'|'/') factor)*
///   factor  := '-'? base ('^' exponent)?
///   base    := integer | identifier | '(' expr ')'
///
/// where identifiers must be known to `vars` and exponents are integer
/// constants (optionally signed or parenthesized). Throws ParseError.
RationalExpr parse(std::string_view text, const VarTable& vars);

}  // namespace presym
