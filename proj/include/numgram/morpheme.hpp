#pragma once

#include <cstdint>
#include <string>

namespace numgram {

enum class OpKind { Add, Sub, Mul };

const char* opName(OpKind op);

enum class RoleKind { Digit, Power, Connective, Zero };

/// What a morpheme means: a digit value, a power of the base, an overt
/// operator word, or zero.
struct MorphemeRole {
  RoleKind kind = RoleKind::Digit;
  std::int64_t value = 0;   // digit value (Digit) or exponent (Power)
  OpKind op = OpKind::Add;  // meaningful only for Connective

  static MorphemeRole digit(std::int64_t value) { return {RoleKind::Digit, value, OpKind::Add}; }
  static MorphemeRole power(std::int64_t exponent) {
    return {RoleKind::Power, exponent, OpKind::Add};
  }
  static MorphemeRole connective(OpKind op) { return {RoleKind::Connective, 0, op}; }
  static MorphemeRole zero() { return {RoleKind::Zero, 0, OpKind::Add}; }

  friend bool operator==(const MorphemeRole& a, const MorphemeRole& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == RoleKind::Connective) return a.op == b.op;
    return a.value == b.value;
  }
};

/// Smallest meaning-bearing unit of a numeral word. Surfaces are
/// whitespace-free; digit characters are only allowed on single-character
/// glyph morphemes (the typed-vs-glyph setting).
struct Morpheme {
  std::string surface;
  MorphemeRole role;
  bool glyph = false;

  friend bool operator==(const Morpheme& a, const Morpheme& b) {
    return a.surface == b.surface && a.role == b.role && a.glyph == b.glyph;
  }
};

/// Validates surface shape (nonempty, no whitespace, Latin letters, digit
/// characters only when glyph). Throws Error(InvalidSystem) on violation.
void validateMorpheme(const Morpheme& morpheme);

}  // namespace numgram
