#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "numgram/morpheme.hpp"

namespace numgram {

enum class Order { MostSignificantFirst, LeastSignificantFirst };

const char* orderName(Order order);
Order orderFromName(const std::string& name);

/// Full parameterization of one number grammar: radix, token order, digit
/// and power lexicon, subtractive threshold and overt connective words.
///
/// Invariants (enforced by validate()):
///   - base >= 2, maxPower >= 1, 0 <= subtractiveThreshold < base
///   - exactly one digit morpheme per value in 1..base-1 and exactly one
///     power morpheme per exponent in 1..maxPower
///   - no two morphemes (including connectives) share a surface
///   - subtractiveThreshold > 0 requires an overt sub connective, since a
///     covert subtraction would be unparseable against addition
struct NumeralSystem {
  std::int64_t base = 10;
  Order order = Order::MostSignificantFirst;
  std::int64_t maxPower = 3;
  std::int64_t subtractiveThreshold = 0;
  bool omitUnitMultiplier = true;
  std::vector<Morpheme> lexicon;  // digits, powers, optional zero
  std::map<OpKind, std::string> connectives;  // overt operator words, if any

  void validate() const;

  const Morpheme* digit(std::int64_t value) const;
  const Morpheme* power(std::int64_t exponent) const;
  const Morpheme* zero() const;
  const Morpheme* bySurface(const std::string& surface) const;
  std::optional<OpKind> connectiveFor(const std::string& surface) const;

  /// base^(maxPower+1) - 1, the largest renderable integer.
  std::int64_t maxValue() const;

  /// Documented JSON schema; field names are exactly: base, order, lexicon,
  /// subtractiveThreshold, connectives, maxPower, omitUnitMultiplier.
  std::string toJson(int indent = -1) const;
  static NumeralSystem fromJson(const std::string& text);
};

struct SystemTemplate {
  std::int64_t base = 10;
  Order order = Order::MostSignificantFirst;
  std::int64_t maxPower = 3;
  std::int64_t subtractiveThreshold = 0;
  bool omitUnitMultiplier = true;
  bool overtAdd = false;
  bool overtMul = false;
};

/// Builds a valid system with systematic placeholder surfaces ("d1".."d9",
/// "p1"..; connectives "ca"/"cs"/"cm"). Generators re-map these to dummy
/// words before a puzzle ever leaves the process.
NumeralSystem makeSystem(const SystemTemplate& spec);

}  // namespace numgram
