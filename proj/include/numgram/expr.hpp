#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "numgram/morpheme.hpp"

namespace numgram {

struct NumExpr;
using ExprPtr = std::shared_ptr<const NumExpr>;

/// Arithmetic AST of a numeral: atoms are lexicon morphemes carrying their
/// numeric value (digit value, or b^e for a power morpheme).
struct NumExpr {
  enum class Kind { Atom, Add, Sub, Mul };

  Kind kind = Kind::Atom;
  Morpheme morpheme;          // Atom only
  std::int64_t value = 0;     // Atom only: the morpheme's numeric value
  ExprPtr left, right;        // Add/Sub/Mul only

  static ExprPtr atom(Morpheme m, std::int64_t value);
  static ExprPtr add(ExprPtr l, ExprPtr r);
  static ExprPtr sub(ExprPtr l, ExprPtr r);
  static ExprPtr mul(ExprPtr l, ExprPtr r);
};

/// Standard arithmetic fold. Throws Error(NegativeIntermediate) if any Sub
/// underflows, which signals a malformed expression.
std::int64_t evaluate(const NumExpr& expr);
inline std::int64_t evaluate(const ExprPtr& expr) { return evaluate(*expr); }

bool structurallyEqual(const NumExpr& a, const NumExpr& b);
inline bool structurallyEqual(const ExprPtr& a, const ExprPtr& b) {
  return structurallyEqual(*a, *b);
}

/// Compact s-expression form, e.g. "(add (mul 2 12) 5)"; used in tests and
/// diagnostics.
std::string exprToString(const NumExpr& expr);
inline std::string exprToString(const ExprPtr& expr) { return exprToString(*expr); }

}  // namespace numgram
