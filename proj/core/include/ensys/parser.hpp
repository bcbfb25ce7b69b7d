#pragma once

#include "ensys/polynomial.hpp"

#include <string_view>

namespace ensys {

/// Parses and expands an integer polynomial expression.
///
/// Grammar (whitespace between tokens is ignored):
///
///     expr    := term (('+' | '-') term)*
///     term    := unary ('*' unary)*
///     unary   := ('+' | '-') unary | power
///     power   := primary ('^' integer)?
///     primary := integer | identifier | '(' expr ')'
///
/// Identifiers match [A-Za-z_][A-Za-z0-9_]*. The variable list of the result
/// is every identifier that occurs in the text, sorted by name, even when its
/// terms cancel. Throws ParseError with a 1-based column on malformed input.
Polynomial parse_polynomial(std::string_view text);

}  // namespace ensys
