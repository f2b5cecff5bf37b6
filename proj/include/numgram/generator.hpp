#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "numgram/puzzle.hpp"
#include "numgram/randomizer.hpp"
#include "numgram/solver.hpp"

namespace numgram {

struct GeneratorContext {
  TokenVocabulary vocab;
  ConditionConfig config = ConditionConfig::defaults();
  SpaceConfig space;
  /// Rosetta puzzles are additionally verified under the other three
  /// explicitness conditions so a suite can transform them freely.
  bool verifyAllConditions = true;
  int maxAttempts = 64;
};

struct GeneratedPuzzle {
  Puzzle puzzle;
  GroundTruth truth;
};

/// Olympiad-style Rosetta set: `count` revealed equations plus one withheld
/// query, all surfaces dummy-worded and rendered under cond. The equation
/// set is resampled until the induction solver proves it identifiable
/// (unique answer matching the hidden system); Error(IdentifiabilityFailure)
/// after bounded attempts.
GeneratedPuzzle generateRosetta(const SystemTemplate& tmpl, int count, const Condition& cond,
                                std::uint64_t seed, const GeneratorContext& ctx);

enum class MinimalPairParameter { NumeralVsNot, TypedVsGlyph, Order, AdditiveVsSubtractive, Base };

const char* minimalPairParameterName(MinimalPairParameter p);
MinimalPairParameter minimalPairParameterFromName(const std::string& name);

struct MinimalPairSpec {
  MinimalPairParameter parameter = MinimalPairParameter::Order;
  std::int64_t base = 10;
  std::int64_t altBase = 6;  // Base parameter only
};

/// Serialized setting config (flavor, base, order, subtractive, revealedAs)
/// for one side of a pair; the pair-purity law says the two sides differ in
/// exactly the field owned by the varied parameter.
std::string minimalPairSettingJson(const MinimalPairSpec& spec, bool settingB);

/// Paired puzzles sharing seed, symbol letters and values wherever the
/// varied parameter permits.
std::pair<GeneratedPuzzle, GeneratedPuzzle> generateMinimalPair(const MinimalPairSpec& spec,
                                                                std::uint64_t seed,
                                                                const GeneratorContext& ctx);

enum class SymbolMode { Abcd, RandomTokens };

const char* symbolModeName(SymbolMode m);
SymbolMode symbolModeFromName(const std::string& name);

struct BaseExperimentSpec {
  std::int64_t base = 10;  // 4..19
  SymbolMode symbolMode = SymbolMode::Abcd;
  std::vector<std::int64_t> numbers;  // empty: sampled from the seed
};

/// Digit-string puzzle: unknown symbols spell the numbers in base b, revealed
/// values stay decimal; the last number is withheld as the query.
GeneratedPuzzle generateBaseExperiment(const BaseExperimentSpec& spec, std::uint64_t seed,
                                       const GeneratorContext& ctx);

}  // namespace numgram
