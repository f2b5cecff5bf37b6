#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "numgram/condition.hpp"
#include "numgram/grammar.hpp"
#include "numgram/numeral_system.hpp"

namespace numgram {

/// One revealed line: a token sequence equated with either an integer value
/// or, for the numeral-vs-not control, an arbitrary word sequence.
struct Equation {
  Tokens tokens;
  std::optional<std::int64_t> value;
  std::optional<std::string> text;

  static Equation withValue(Tokens tokens, std::int64_t value) {
    return {std::move(tokens), value, std::nullopt};
  }
  static Equation withText(Tokens tokens, std::string text) {
    return {std::move(tokens), std::nullopt, std::move(text)};
  }
};

struct PuzzleMeta {
  std::string id;
  std::string kind;       // rosetta | minimal-pair | base-experiment | fixture
  std::string language;   // synthetic language label for the language hint
  std::int64_t base = 0;  // for the base hint
  std::uint64_t seed = 0;
  std::map<OpKind, std::string> operators;  // operator surfaces when explicit
  std::string revealedAs = "glyphs";        // glyphs | words
  std::string paradigm;                     // minimal pairs
  std::string setting;                      // minimal pairs: A | B
  std::string symbolMode;                   // base experiments: abcd | random
};

/// A blind puzzle file: equations, a query whose value is withheld, the
/// condition it was rendered under, and metadata. Ground truth lives in a
/// separate sidecar so puzzle files can go to external solvers as-is.
struct Puzzle {
  std::vector<Equation> equations;
  Tokens query;
  Condition condition;
  PuzzleMeta meta;
  std::uint64_t seed = 0;

  /// Equation lines then the query line: "tokens = value" per line, final
  /// line "tokens = ??", no trailing newline. Values print as decimal
  /// digits, or as English words when meta.revealedAs is "words".
  std::string bodyText() const;

  /// bodyText behind the condition's decorated prompt header.
  std::string promptText(const ConditionConfig& config) const;

  std::string toJson(int indent = 2) const;
  static Puzzle fromJson(const std::string& text);
};

/// Hidden ground truth: the generating system in one of the three hypothesis
/// shapes, plus the withheld answer.
struct GroundTruth {
  struct Positional {
    std::int64_t base = 10;
    Order order = Order::MostSignificantFirst;
    bool subtractive = false;
    std::map<std::string, std::int64_t> digits;
  };
  struct Substitution {
    Order order = Order::MostSignificantFirst;  // LeastSignificantFirst = reversed mapping
    std::map<std::string, std::string> words;
  };

  std::optional<NumeralSystem> system;
  std::optional<Positional> positional;
  std::optional<Substitution> substitution;
  std::optional<std::int64_t> answerValue;
  std::string answerText;

  std::string toJson(int indent = 2) const;
  static GroundTruth fromJson(const std::string& text);
};

std::string readFile(const std::string& path);
/// Writes via a temp file in the same directory plus rename.
void writeFileAtomic(const std::string& path, const std::string& content);

}  // namespace numgram
