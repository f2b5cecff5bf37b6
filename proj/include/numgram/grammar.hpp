#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "numgram/expr.hpp"
#include "numgram/numeral_system.hpp"

namespace numgram {

using Tokens = std::vector<std::string>;

std::string joinTokens(const Tokens& tokens);
Tokens splitTokens(const std::string& text);

/// Renders n to its canonical AST under sys: the positional decomposition
/// sum(c_i * b^i), each nonzero term as Mul(digit, power) for i >= 1 (a bare
/// power when c_i = 1 at the highest term and omitUnitMultiplier is set), a
/// bare digit in the units slot, terms joined by Add, folded left.
///
/// When the units residue r satisfies b - r <= subtractiveThreshold the whole
/// numeral renders subtractively as Sub(render(n + c), digit c) with
/// c = b - r, the untiriish / 30-minus-1 construction.
ExprPtr render(std::int64_t n, const NumeralSystem& sys);

/// Morpheme surfaces separated by single spaces, most-significant-first
/// in-order; LeastSignificantFirst emits the exact token reverse. Overt
/// connective words are emitted at their operator's node; no operator
/// symbols appear (this is the implicit surface).
Tokens surface(const NumExpr& expr, const NumeralSystem& sys);
inline Tokens surface(const ExprPtr& expr, const NumeralSystem& sys) {
  return surface(*expr, sys);
}

/// All ASTs of the canonical grammar that produce exactly these tokens.
/// The canonical grammar accepts:
///   numeral := addExpr (subConn digit)?   with eval(addExpr) > digit
///   addExpr := term (addConn? term)*      power exponents strictly decreasing
///   term    := digit | digit mulConn? power | power (first term only, and
///              only when omitUnitMultiplier)
/// plus a lone zero morpheme. Unknown tokens raise Error(UnknownToken);
/// empty input raises Error(EmptyInput).
std::vector<ExprPtr> parseAll(const Tokens& tokens, const NumeralSystem& sys);

/// The unique parse; Error(NoParse) when none, Error(AmbiguousParse) when
/// several (downstream code that wants the candidate set uses parseAll).
ExprPtr parseUnique(const Tokens& tokens, const NumeralSystem& sys);

}  // namespace numgram
