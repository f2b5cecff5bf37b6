#include <algorithm>
#include <cctype>

#include "numgram/error.hpp"
#include "numgram/expr.hpp"
#include "numgram/morpheme.hpp"
#include "numgram/rng.hpp"

namespace numgram {

const char* errcName(Errc code) {
  switch (code) {
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::Inexpressible: return "Inexpressible";
    case Errc::UnknownMorpheme: return "UnknownMorpheme";
    case Errc::UnknownToken: return "UnknownToken";
    case Errc::AmbiguousParse: return "AmbiguousParse";
    case Errc::NoParse: return "NoParse";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::InvalidSystem: return "InvalidSystem";
    case Errc::InvalidCondition: return "InvalidCondition";
    case Errc::MissingOperatorSurface: return "MissingOperatorSurface";
    case Errc::MissingMetadata: return "MissingMetadata";
    case Errc::EmptyAfterFilter: return "EmptyAfterFilter";
    case Errc::IoFailure: return "IoFailure";
    case Errc::ConstraintUnsatisfiable: return "ConstraintUnsatisfiable";
    case Errc::IdentifiabilityFailure: return "IdentifiabilityFailure";
    case Errc::InvalidCount: return "InvalidCount";
    case Errc::UnsupportedBase: return "UnsupportedBase";
    case Errc::NegativeIntermediate: return "NegativeIntermediate";
    case Errc::ResourceBudgetExceeded: return "ResourceBudgetExceeded";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

const char* opName(OpKind op) {
  switch (op) {
    case OpKind::Add: return "add";
    case OpKind::Sub: return "sub";
    case OpKind::Mul: return "mul";
  }
  return "?";
}

std::uint64_t mixSeed(std::uint64_t seed) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t deriveSeed(std::uint64_t seed, const std::string& tag) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the tag
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mixSeed(seed ^ h);
}

void validateMorpheme(const Morpheme& m) {
  if (m.surface.empty()) raise(Errc::InvalidSystem, "empty morpheme surface");
  for (unsigned char c : m.surface) {
    if (std::isspace(c)) raise(Errc::InvalidSystem, "whitespace in morpheme surface '" + m.surface + "'");
  }
  if (m.glyph) {
    if (m.surface.size() != 1 || !std::isdigit(static_cast<unsigned char>(m.surface[0])))
      raise(Errc::InvalidSystem, "glyph morpheme must be a single digit character, got '" + m.surface + "'");
    if (m.role.kind != RoleKind::Digit && m.role.kind != RoleKind::Zero)
      raise(Errc::InvalidSystem, "glyph morpheme must be a digit or zero");
  } else {
    for (unsigned char c : m.surface) {
      if (std::isdigit(c))
        raise(Errc::InvalidSystem, "digit character in non-glyph surface '" + m.surface + "'");
    }
  }
}

ExprPtr NumExpr::atom(Morpheme m, std::int64_t value) {
  auto node = std::make_shared<NumExpr>();
  node->kind = Kind::Atom;
  node->morpheme = std::move(m);
  node->value = value;
  return node;
}

static ExprPtr makeBinary(NumExpr::Kind kind, ExprPtr l, ExprPtr r) {
  auto node = std::make_shared<NumExpr>();
  node->kind = kind;
  node->left = std::move(l);
  node->right = std::move(r);
  return node;
}

ExprPtr NumExpr::add(ExprPtr l, ExprPtr r) { return makeBinary(Kind::Add, std::move(l), std::move(r)); }
ExprPtr NumExpr::sub(ExprPtr l, ExprPtr r) { return makeBinary(Kind::Sub, std::move(l), std::move(r)); }
ExprPtr NumExpr::mul(ExprPtr l, ExprPtr r) { return makeBinary(Kind::Mul, std::move(l), std::move(r)); }

std::int64_t evaluate(const NumExpr& expr) {
  switch (expr.kind) {
    case NumExpr::Kind::Atom:
      return expr.value;
    case NumExpr::Kind::Add:
      return evaluate(*expr.left) + evaluate(*expr.right);
    case NumExpr::Kind::Sub: {
      std::int64_t l = evaluate(*expr.left);
      std::int64_t r = evaluate(*expr.right);
      if (l < r) raise(Errc::NegativeIntermediate, "subtraction underflow");
      return l - r;
    }
    case NumExpr::Kind::Mul:
      return evaluate(*expr.left) * evaluate(*expr.right);
  }
  return 0;
}

bool structurallyEqual(const NumExpr& a, const NumExpr& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == NumExpr::Kind::Atom)
    return a.morpheme == b.morpheme && a.value == b.value;
  return structurallyEqual(*a.left, *b.left) && structurallyEqual(*a.right, *b.right);
}

std::string exprToString(const NumExpr& expr) {
  switch (expr.kind) {
    case NumExpr::Kind::Atom:
      return std::to_string(expr.value) + "[" + expr.morpheme.surface + "]";
    case NumExpr::Kind::Add:
      return "(add " + exprToString(*expr.left) + " " + exprToString(*expr.right) + ")";
    case NumExpr::Kind::Sub:
      return "(sub " + exprToString(*expr.left) + " " + exprToString(*expr.right) + ")";
    case NumExpr::Kind::Mul:
      return "(mul " + exprToString(*expr.left) + " " + exprToString(*expr.right) + ")";
  }
  return "?";
}

}  // namespace numgram
