#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "numgram/puzzle.hpp"

namespace numgram {

/// The three grammar shapes a hypothesis can take. Numeric-valued equations
/// admit morphological (digit/power/connective words) and positional (plain
/// digit strings) readings; word-valued equations admit the substitution
/// reading used by the numeral-vs-not control.
enum class Flavor { Morphological, Positional, Substitution };

const char* flavorName(Flavor f);

struct TokenBinding {
  enum class Kind { Digit, Power, ConnAdd, ConnSub, ConnMul, Word };
  Kind kind = Kind::Digit;
  std::int64_t value = 0;  // digit value or power exponent
  std::string word;        // substitution flavor

  friend bool operator==(const TokenBinding& a, const TokenBinding& b) {
    return a.kind == b.kind && a.value == b.value && a.word == b.word;
  }
};

/// One complete candidate reading of the equation set.
struct Hypothesis {
  Flavor flavor = Flavor::Morphological;
  std::int64_t base = 0;  // 0 for substitution
  Order order = Order::MostSignificantFirst;
  bool subtractive = false;  // positional: units term subtracted;
                             // morphological: a sub connective is bound
  std::map<std::string, TokenBinding> bindings;

  /// Minimal-description-length key: (base, lexicon size, operator-word
  /// count), lexicographic; smaller is simpler.
  std::tuple<std::int64_t, std::size_t, std::size_t> mdlKey() const;

  std::string canonicalKey() const;  // total order + set comparisons
  std::string toJsonString(int indent = -1) const;

  friend bool operator==(const Hypothesis& a, const Hypothesis& b);
  friend bool operator<(const Hypothesis& a, const Hypothesis& b);
};

/// Declared hypothesis space. Power exponents range over
/// 1..maxExponentFor(base, maxValue); digit and exponent assignments are
/// injective (one morpheme per value, one power word per exponent); zero
/// morphemes are outside the space.
struct SpaceConfig {
  std::int64_t baseMin = 2;
  std::int64_t baseMax = 30;
  std::int64_t maxExponent = 4;
  bool morphological = true;
  bool positional = true;
  bool substitution = true;
  bool subtractive = true;
  bool bothOrders = true;
  std::uint64_t nodeBudget = 10'000'000;
  double timeBudgetSecs = 30.0;
  /// Pre-bound operator tokens; set for the explicit conditions, where the
  /// equation strings carry overt operators and parentheses.
  std::map<std::string, OpKind> boundOperators;
  bool explicitStructure = false;

  std::int64_t maxExponentFor(std::int64_t base, std::int64_t maxValue) const;
};

struct SolveStats {
  std::uint64_t nodesExpanded = 0;
  double elapsedSecs = 0.0;
  bool budgetExceeded = false;
};

enum class SolveStatus { Unique, Ambiguous, Unsatisfiable, ResourceBudgetExceeded };

const char* statusName(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::Unsatisfiable;
  std::vector<std::int64_t> answers;      // distinct numeric answers, sorted
  std::vector<std::string> answerTexts;   // distinct surface answers, sorted
  std::vector<Hypothesis> survivors;      // MDL-minimal consistent hypotheses
  std::size_t consistentCount = 0;
  SolveStats stats;

  std::string toJson(int indent = 2) const;
};

/// Exhaustive consistency enumeration by plain depth-first assignment with
/// per-equation checks; the deliberately simple reference implementation the
/// propagating engine is measured against.
std::vector<Hypothesis> enumerateConsistent(const std::vector<Equation>& equations,
                                            const SpaceConfig& space);

/// The propagating engine's full consistent set (pre-MDL); exposed so the
/// equivalence suite can compare it with enumerateConsistent.
std::vector<Hypothesis> solveConsistent(const std::vector<Equation>& equations,
                                        const SpaceConfig& space, SolveStats& stats);

/// Full solve: propagating search, MDL filtering, query answering. Explicit
/// puzzles get their operator tokens pre-bound from puzzle metadata.
SolveResult solve(const Puzzle& puzzle, const SpaceConfig& space);

/// Space with operator pre-binding derived from the puzzle's condition.
SpaceConfig spaceForPuzzle(const Puzzle& puzzle, SpaceConfig base = {});

}  // namespace numgram
