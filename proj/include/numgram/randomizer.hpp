#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "numgram/condition.hpp"
#include "numgram/rng.hpp"

namespace numgram {

/// Candidate subword tokens for dummy-word assembly. After filtering every
/// entry is 1-3 Latin letters, digit-free.
struct TokenVocabulary {
  std::vector<std::string> entries;
  std::string source;
  std::size_t dropped = 0;

  std::size_t retained() const { return entries.size(); }
};

/// Applies the filter rules to raw lines; Error(EmptyAfterFilter) when
/// nothing survives.
TokenVocabulary filterVocabulary(const std::vector<std::string>& lines, std::string source);

/// Newline-delimited token list from disk, filtered.
TokenVocabulary loadVocabulary(const std::string& path);

/// Concatenation of `pieces` sampled tokens (pieces >= 2), total length
/// <= 12. Resamples a bounded number of times before giving up with
/// Error(ConstraintUnsatisfiable).
std::string dummyWord(const TokenVocabulary& vocab, Rng& rng, int pieces);

/// Seed-deterministic injective mapping from morpheme surfaces to fresh
/// spellings, plus operator spellings for the explicit conditions:
/// single capitals under SingleCharacter width, dummy words otherwise;
/// symbol pool draws for unfamiliar-symbol operators, dummy words for
/// unfamiliar-word operators, the fixed familiar style otherwise.
struct RandomAssignment {
  std::uint64_t seed = 0;
  std::map<std::string, std::string> words;
  std::map<OpKind, std::string> operatorWords;

  std::string toJson(int indent = 2) const;
};

RandomAssignment assign(const std::vector<std::string>& morphemes,
                        const std::vector<OpKind>& operators, const TokenVocabulary& vocab,
                        std::uint64_t seed, const Condition& cond, const ConditionConfig& config);

}  // namespace numgram
