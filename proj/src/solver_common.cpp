#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "numgram/error.hpp"
#include "numgram/solver.hpp"

namespace numgram {

using nlohmann::json;

const char* flavorName(Flavor f) {
  switch (f) {
    case Flavor::Morphological: return "morphological";
    case Flavor::Positional: return "positional";
    case Flavor::Substitution: return "substitution";
  }
  return "?";
}

const char* statusName(SolveStatus s) {
  switch (s) {
    case SolveStatus::Unique: return "unique";
    case SolveStatus::Ambiguous: return "ambiguous";
    case SolveStatus::Unsatisfiable: return "unsatisfiable";
    case SolveStatus::ResourceBudgetExceeded: return "resource-budget-exceeded";
  }
  return "?";
}

namespace {

const char* bindingKindName(TokenBinding::Kind k) {
  switch (k) {
    case TokenBinding::Kind::Digit: return "digit";
    case TokenBinding::Kind::Power: return "power";
    case TokenBinding::Kind::ConnAdd: return "conn-add";
    case TokenBinding::Kind::ConnSub: return "conn-sub";
    case TokenBinding::Kind::ConnMul: return "conn-mul";
    case TokenBinding::Kind::Word: return "word";
  }
  return "?";
}

}  // namespace

std::tuple<std::int64_t, std::size_t, std::size_t> Hypothesis::mdlKey() const {
  std::size_t lexicon = 0;
  std::size_t ops = 0;
  for (const auto& [token, b] : bindings) {
    switch (b.kind) {
      case TokenBinding::Kind::ConnAdd:
      case TokenBinding::Kind::ConnSub:
      case TokenBinding::Kind::ConnMul:
        ++ops;
        break;
      default:
        ++lexicon;
    }
  }
  return {base, lexicon, ops};
}

std::string Hypothesis::canonicalKey() const {
  std::ostringstream out;
  out << flavorName(flavor) << '|' << base << '|' << orderName(order) << '|' << subtractive;
  for (const auto& [token, b] : bindings)
    out << '|' << token << ':' << bindingKindName(b.kind) << ':' << b.value << ':' << b.word;
  return out.str();
}

std::string Hypothesis::toJsonString(int indent) const {
  json binds = json::object();
  for (const auto& [token, b] : bindings) {
    json jb = {{"kind", bindingKindName(b.kind)}};
    if (b.kind == TokenBinding::Kind::Word) jb["word"] = b.word;
    else if (b.kind == TokenBinding::Kind::Digit) jb["value"] = b.value;
    else if (b.kind == TokenBinding::Kind::Power) jb["exponent"] = b.value;
    binds[token] = jb;
  }
  json j = {{"flavor", flavorName(flavor)},
            {"base", base},
            {"order", orderName(order)},
            {"subtractive", subtractive},
            {"bindings", binds}};
  return j.dump(indent);
}

bool operator==(const Hypothesis& a, const Hypothesis& b) {
  return a.flavor == b.flavor && a.base == b.base && a.order == b.order &&
         a.subtractive == b.subtractive && a.bindings == b.bindings;
}

bool operator<(const Hypothesis& a, const Hypothesis& b) {
  return a.canonicalKey() < b.canonicalKey();
}

std::int64_t SpaceConfig::maxExponentFor(std::int64_t base, std::int64_t maxValue) const {
  // A bound power word appears in some equation, so b^e can be at most the
  // equation value plus the largest subtractive complement.
  std::int64_t e = 1;
  std::int64_t v = base;
  const std::int64_t cap = maxValue + base - 1;
  while (e < maxExponent && v <= cap / base) {
    v *= base;
    ++e;
  }
  while (e > 1 && v > cap) {
    v /= base;
    --e;
  }
  return e;
}

std::string SolveResult::toJson(int indent) const {
  json survivorsJson = json::array();
  for (const Hypothesis& h : survivors) survivorsJson.push_back(json::parse(h.toJsonString()));
  json j = {{"status", statusName(status)},
            {"answers", answers},
            {"answerTexts", answerTexts},
            {"survivors", survivorsJson},
            {"consistentCount", consistentCount},
            {"stats",
             {{"nodesExpanded", stats.nodesExpanded},
              {"elapsedSecs", stats.elapsedSecs},
              {"budgetExceeded", stats.budgetExceeded}}}};
  return j.dump(indent);
}

SpaceConfig spaceForPuzzle(const Puzzle& puzzle, SpaceConfig space) {
  if (puzzle.condition.explicitness != Explicitness::Implicit) {
    space.explicitStructure = true;
    space.boundOperators.clear();
    if (puzzle.meta.operators.empty())
      raise(Errc::MissingOperatorSurface, "explicit puzzle without operator metadata");
    for (const auto& [op, word] : puzzle.meta.operators) space.boundOperators[word] = op;
  }
  return space;
}

}  // namespace numgram
