#include "numgram/randomizer.hpp"

#include <cctype>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "numgram/error.hpp"

namespace numgram {

using nlohmann::json;

namespace {

constexpr int kMaxRetries = 1000;
constexpr std::size_t kMaxWordLength = 12;

bool latinOnly(const std::string& s) {
  for (unsigned char c : s)
    if (!std::isalpha(c) || c > 127) return false;
  return !s.empty();
}

}  // namespace

TokenVocabulary filterVocabulary(const std::vector<std::string>& lines, std::string source) {
  TokenVocabulary vocab;
  vocab.source = std::move(source);
  std::set<std::string> seen;
  for (const std::string& line : lines) {
    if (line.empty()) continue;
    if (line.size() > 3 || !latinOnly(line) || !seen.insert(line).second) {
      ++vocab.dropped;
      continue;
    }
    vocab.entries.push_back(line);
  }
  if (vocab.entries.empty()) raise(Errc::EmptyAfterFilter, "no usable tokens in " + vocab.source);
  return vocab;
}

TokenVocabulary loadVocabulary(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::IoFailure, "cannot open vocabulary '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    lines.push_back(line);
  }
  return filterVocabulary(lines, path);
}

std::string dummyWord(const TokenVocabulary& vocab, Rng& rng, int pieces) {
  if (pieces < 2) raise(Errc::InvalidArgument, "dummy words use at least 2 pieces");
  if (vocab.entries.empty()) raise(Errc::EmptyAfterFilter, "empty vocabulary");
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    std::string word;
    for (int i = 0; i < pieces; ++i) word += rng.pick(vocab.entries);
    if (word.size() <= kMaxWordLength) return word;
  }
  raise(Errc::ConstraintUnsatisfiable, "could not assemble a dummy word within the length cap");
}

std::string RandomAssignment::toJson(int indent) const {
  json j;
  j["seed"] = seed;
  j["words"] = words;  // std::map keeps keys sorted
  json ops = json::object();
  for (const auto& [op, word] : operatorWords) ops[opName(op)] = word;
  j["operators"] = ops;
  return j.dump(indent);
}

RandomAssignment assign(const std::vector<std::string>& morphemes,
                        const std::vector<OpKind>& operators, const TokenVocabulary& vocab,
                        std::uint64_t seed, const Condition& cond, const ConditionConfig& config) {
  RandomAssignment out;
  out.seed = seed;
  Rng rng(seed);

  std::set<std::string> used;
  auto freshWord = [&]() {
    for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
      const int pieces = static_cast<int>(rng.nextInt(2, 3));
      std::string word = dummyWord(vocab, rng, pieces);
      if (used.insert(word).second) return word;
    }
    raise(Errc::ConstraintUnsatisfiable, "vocabulary too small for an injective assignment");
  };

  if (cond.variableWidth == VariableWidth::SingleCharacter) {
    std::vector<std::string> capitals;
    for (char c = 'A'; c <= 'Z'; ++c) capitals.emplace_back(1, c);
    if (morphemes.size() > capitals.size())
      raise(Errc::ConstraintUnsatisfiable,
            "more morphemes than single-character spellings: " + std::to_string(morphemes.size()));
    rng.shuffle(capitals);
    for (std::size_t i = 0; i < morphemes.size(); ++i) {
      out.words[morphemes[i]] = capitals[i];
      used.insert(capitals[i]);
    }
  } else {
    for (const std::string& m : morphemes) out.words[m] = freshWord();
  }

  switch (cond.explicitness) {
    case Explicitness::Implicit:
      break;
    case Explicitness::ExplicitFamiliar: {
      const OperatorStyle fam = OperatorStyle::familiar();
      for (OpKind op : operators) out.operatorWords[op] = fam.surfaceFor(op);
      break;
    }
    case Explicitness::ExplicitUnfamiliarSymbol: {
      if (operators.size() > config.operatorSymbols.size())
        raise(Errc::ConstraintUnsatisfiable, "symbol pool smaller than the operator set");
      std::vector<std::string> pool = config.operatorSymbols;
      rng.shuffle(pool);
      for (std::size_t i = 0; i < operators.size(); ++i) out.operatorWords[operators[i]] = pool[i];
      break;
    }
    case Explicitness::ExplicitUnfamiliarWord:
      for (OpKind op : operators) out.operatorWords[op] = freshWord();
      break;
  }
  return out;
}

}  // namespace numgram
