#include "numgram/generator.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "numgram/error.hpp"
#include "numgram/grammar.hpp"

namespace numgram {

using nlohmann::json;

namespace {

std::string capitalized(std::string word) {
  if (!word.empty()) word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
  return word;
}

NumeralSystem remapSurfaces(const NumeralSystem& sys, const RandomAssignment& assignment) {
  NumeralSystem out = sys;
  for (Morpheme& m : out.lexicon) m.surface = assignment.words.at(m.surface);
  for (auto& [op, word] : out.connectives) word = assignment.words.at(word);
  out.validate();
  return out;
}

OperatorStyle styleFor(const Condition& cond, const RandomAssignment& assignment) {
  if (cond.explicitness == Explicitness::Implicit) return OperatorStyle::familiar();
  OperatorStyle style;
  auto pick = [&](OpKind op, const std::string& fallback) {
    auto it = assignment.operatorWords.find(op);
    return it != assignment.operatorWords.end() ? it->second : fallback;
  };
  const OperatorStyle fam = OperatorStyle::familiar();
  style.addSurface = pick(OpKind::Add, fam.addSurface);
  style.subSurface = pick(OpKind::Sub, fam.subSurface);
  style.mulSurface = pick(OpKind::Mul, fam.mulSurface);
  style.parenthesize = true;
  return style;
}

std::map<OpKind, std::string> operatorMeta(const Condition& cond, const OperatorStyle& style) {
  std::map<OpKind, std::string> out;
  if (cond.explicitness == Explicitness::Implicit) return out;
  out[OpKind::Add] = style.addSurface;
  out[OpKind::Sub] = style.subSurface;
  out[OpKind::Mul] = style.mulSurface;
  return out;
}

bool solvesTo(const Puzzle& puzzle, const std::string& expected, const GeneratorContext& ctx) {
  SolveResult r = solve(puzzle, ctx.space);
  return r.status == SolveStatus::Unique && r.answerTexts.size() == 1 &&
         r.answerTexts[0] == expected;
}

}  // namespace

GeneratedPuzzle generateRosetta(const SystemTemplate& tmpl, int count, const Condition& cond,
                                std::uint64_t seed, const GeneratorContext& ctx) {
  if (count < 1) raise(Errc::InvalidCount, "need at least one equation");
  cond.validate();

  const NumeralSystem placeholder = makeSystem(tmpl);
  std::vector<std::string> morphemes;
  for (const Morpheme& m : placeholder.lexicon) morphemes.push_back(m.surface);
  for (const auto& [op, word] : placeholder.connectives) morphemes.push_back(word);
  std::vector<OpKind> ops{OpKind::Add, OpKind::Mul};
  if (tmpl.subtractiveThreshold > 0) ops.push_back(OpKind::Sub);

  const std::uint64_t lexSeed = deriveSeed(seed, "rosetta-lexicon");
  // One assignment per explicitness: the morpheme draw precedes the operator
  // draw, so the dummy words coincide and only the operator spellings vary.
  std::map<Explicitness, RandomAssignment> assignments;
  for (Explicitness e : {Explicitness::Implicit, Explicitness::ExplicitFamiliar,
                         Explicitness::ExplicitUnfamiliarSymbol,
                         Explicitness::ExplicitUnfamiliarWord}) {
    Condition c = cond;
    c.explicitness = e;
    if (c.contextHint == ContextHint::ImplicitOps && e != Explicitness::Implicit)
      c.contextHint = ContextHint::None;
    assignments[e] = assign(morphemes, ops, ctx.vocab, lexSeed, c, ctx.config);
  }
  const NumeralSystem sys = remapSurfaces(placeholder, assignments.at(cond.explicitness));

  Rng langRng(deriveSeed(seed, "rosetta-language"));
  const std::string language = capitalized(dummyWord(ctx.vocab, langRng, 2));

  const std::int64_t lo = sys.base;
  const std::int64_t hi = std::min(sys.base * sys.base * sys.base - 1, sys.maxValue());

  Rng valueRng(deriveSeed(seed, "rosetta-values"));
  for (int attempt = 0; attempt < ctx.maxAttempts; ++attempt) {
    std::set<std::int64_t> chosen;
    while (static_cast<int>(chosen.size()) < count + 1)
      chosen.insert(valueRng.nextInt(lo, hi));
    std::vector<std::int64_t> values(chosen.begin(), chosen.end());
    valueRng.shuffle(values);
    const std::int64_t queryValue = values.back();
    values.pop_back();

    auto renderPuzzle = [&](Explicitness e) {
      Condition c = cond;
      c.explicitness = e;
      if (c.contextHint == ContextHint::ImplicitOps && e != Explicitness::Implicit)
        c.contextHint = ContextHint::None;
      const OperatorStyle style = styleFor(c, assignments.at(e));
      Puzzle p;
      p.condition = c;
      p.seed = seed;
      for (std::int64_t v : values)
        p.equations.push_back(Equation::withValue(applyCondition(render(v, sys), sys, c, style), v));
      p.query = applyCondition(render(queryValue, sys), sys, c, style);
      p.meta.id = "rosetta-b" + std::to_string(sys.base) + "-s" + std::to_string(seed) + "-" +
                  explicitnessName(e);
      p.meta.kind = "rosetta";
      p.meta.language = language;
      p.meta.base = sys.base;
      p.meta.seed = seed;
      p.meta.operators = operatorMeta(c, style);
      return p;
    };

    const std::string expected = std::to_string(queryValue);
    bool ok = solvesTo(renderPuzzle(cond.explicitness), expected, ctx);
    if (ok && ctx.verifyAllConditions) {
      for (Explicitness e : {Explicitness::Implicit, Explicitness::ExplicitFamiliar,
                             Explicitness::ExplicitUnfamiliarSymbol,
                             Explicitness::ExplicitUnfamiliarWord}) {
        if (e == cond.explicitness) continue;
        if (!solvesTo(renderPuzzle(e), expected, ctx)) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;

    GeneratedPuzzle out;
    out.puzzle = renderPuzzle(cond.explicitness);
    out.truth.system = sys;
    out.truth.answerValue = queryValue;
    out.truth.answerText = expected;
    return out;
  }
  raise(Errc::IdentifiabilityFailure,
        "no identifiable equation set after " + std::to_string(ctx.maxAttempts) + " attempts");
}

// ---------------------------------------------------------------------------
// Minimal pairs
// ---------------------------------------------------------------------------

const char* minimalPairParameterName(MinimalPairParameter p) {
  switch (p) {
    case MinimalPairParameter::NumeralVsNot: return "numeral-vs-not";
    case MinimalPairParameter::TypedVsGlyph: return "typed-vs-glyph";
    case MinimalPairParameter::Order: return "order";
    case MinimalPairParameter::AdditiveVsSubtractive: return "additive-vs-subtractive";
    case MinimalPairParameter::Base: return "base";
  }
  return "?";
}

MinimalPairParameter minimalPairParameterFromName(const std::string& name) {
  if (name == "numeral-vs-not") return MinimalPairParameter::NumeralVsNot;
  if (name == "typed-vs-glyph") return MinimalPairParameter::TypedVsGlyph;
  if (name == "order") return MinimalPairParameter::Order;
  if (name == "additive-vs-subtractive") return MinimalPairParameter::AdditiveVsSubtractive;
  if (name == "base") return MinimalPairParameter::Base;
  raise(Errc::InvalidArgument, "unknown minimal-pair parameter '" + name + "'");
}

const char* symbolModeName(SymbolMode m) {
  return m == SymbolMode::Abcd ? "abcd" : "random";
}

SymbolMode symbolModeFromName(const std::string& name) {
  if (name == "abcd") return SymbolMode::Abcd;
  if (name == "random") return SymbolMode::RandomTokens;
  raise(Errc::InvalidArgument, "unknown symbol mode '" + name + "'");
}

std::string minimalPairSettingJson(const MinimalPairSpec& spec, bool settingB) {
  std::string flavor = "positional";
  std::int64_t base = spec.base;
  Order order = Order::MostSignificantFirst;
  bool subtractive = false;
  std::string revealedAs = "glyphs";
  if (settingB) {
    switch (spec.parameter) {
      case MinimalPairParameter::NumeralVsNot: flavor = "substitution"; break;
      case MinimalPairParameter::TypedVsGlyph: break;  // settingA carries "words"
      case MinimalPairParameter::Order: order = Order::LeastSignificantFirst; break;
      case MinimalPairParameter::AdditiveVsSubtractive: subtractive = true; break;
      case MinimalPairParameter::Base: base = spec.altBase; break;
    }
  } else if (spec.parameter == MinimalPairParameter::TypedVsGlyph) {
    revealedAs = "words";
  }
  json j = {{"flavor", flavor},
            {"base", base},
            {"order", orderName(order)},
            {"subtractive", subtractive},
            {"revealedAs", revealedAs}};
  return j.dump();
}

namespace {

struct PairScaffold {
  std::vector<std::string> letters;  // seeded distinct capitals
  Rng rng;
  explicit PairScaffold(std::uint64_t seed) : rng(deriveSeed(seed, "minimal-pair")) {
    for (char c = 'A'; c <= 'Z'; ++c) letters.emplace_back(1, c);
    rng.shuffle(letters);
  }
};

Puzzle positionalPuzzle(const std::vector<Equation>& equations, Tokens query,
                        const MinimalPairSpec& spec, bool settingB, std::uint64_t seed,
                        const std::string& revealedAs, std::int64_t base) {
  Puzzle p;
  p.equations = equations;
  p.query = std::move(query);
  p.condition.explicitness = Explicitness::Implicit;
  p.condition.variableWidth = VariableWidth::SingleCharacter;
  p.condition.contextHint = ContextHint::None;
  p.seed = seed;
  p.meta.kind = "minimal-pair";
  p.meta.paradigm = minimalPairParameterName(spec.parameter);
  p.meta.setting = settingB ? "B" : "A";
  p.meta.id = "minpair-" + p.meta.paradigm + "-" + p.meta.setting + "-s" + std::to_string(seed);
  p.meta.base = base;
  p.meta.seed = seed;
  p.meta.revealedAs = revealedAs;
  p.meta.language = "Template";
  return p;
}

GroundTruth positionalTruth(std::int64_t base, Order order, bool subtractive,
                            std::map<std::string, std::int64_t> digits, std::int64_t answer) {
  GroundTruth t;
  GroundTruth::Positional pos;
  pos.base = base;
  pos.order = order;
  pos.subtractive = subtractive;
  pos.digits = std::move(digits);
  t.positional = pos;
  t.answerValue = answer;
  t.answerText = std::to_string(answer);
  return t;
}

// Digit strings for the base experiment and the base minimal pair.
std::vector<std::int64_t> digitsOf(std::int64_t n, std::int64_t base) {
  std::vector<std::int64_t> out;
  for (std::int64_t v = n; v > 0; v /= base) out.push_back(v % base);
  if (out.empty()) out.push_back(0);
  std::reverse(out.begin(), out.end());  // most significant first
  return out;
}

}  // namespace

GeneratedPuzzle generateBaseExperiment(const BaseExperimentSpec& spec, std::uint64_t seed,
                                       const GeneratorContext& ctx) {
  if (spec.base < 4 || spec.base > 19)
    raise(Errc::UnsupportedBase, "base experiments cover bases 4..19");

  Rng rng(deriveSeed(seed, "base-experiment"));

  for (int attempt = 0; attempt < ctx.maxAttempts; ++attempt) {
    std::vector<std::int64_t> numbers = spec.numbers;
    if (numbers.empty()) {
      // Draw a digit pool of at most four values first, then spell numbers
      // from it, so the symbol constraint holds by construction.
      std::set<std::int64_t> pool;
      pool.insert(rng.nextInt(1, spec.base - 1));  // a nonzero leading digit
      while (pool.size() < 4) pool.insert(rng.nextInt(0, spec.base - 1));
      std::vector<std::int64_t> poolV(pool.begin(), pool.end());
      std::vector<std::int64_t> nonzero;
      for (std::int64_t d : poolV)
        if (d != 0) nonzero.push_back(d);

      std::set<std::int64_t> chosen;
      int guard = 0;
      while (chosen.size() < 5 && ++guard < 200) {
        const std::int64_t len = rng.nextInt(1, 3);
        std::int64_t n = rng.pick(nonzero);
        for (std::int64_t i = 1; i < len; ++i) n = n * spec.base + rng.pick(poolV);
        chosen.insert(n);
      }
      if (chosen.size() < 5) continue;
      numbers.assign(chosen.begin(), chosen.end());
      rng.shuffle(numbers);
    }

    std::set<std::int64_t> distinctDigits;
    for (std::int64_t n : numbers)
      for (std::int64_t d : digitsOf(n, spec.base)) distinctDigits.insert(d);
    if (distinctDigits.size() > 4) {
      if (!spec.numbers.empty())
        raise(Errc::InvalidArgument, "numbers use more than four distinct digits");
      continue;
    }

    // Symbol per digit value: A-D (shuffled) or dummy words.
    std::vector<std::string> symbols;
    if (spec.symbolMode == SymbolMode::Abcd) {
      symbols = {"A", "B", "C", "D"};
      rng.shuffle(symbols);
    } else {
      std::set<std::string> used;
      while (symbols.size() < 4) {
        std::string w = dummyWord(ctx.vocab, rng, static_cast<int>(rng.nextInt(2, 3)));
        if (used.insert(w).second) symbols.push_back(w);
      }
    }
    std::map<std::int64_t, std::string> symbolFor;
    std::size_t next = 0;
    for (std::int64_t d : distinctDigits) symbolFor[d] = symbols[next++];

    auto stringFor = [&](std::int64_t n) {
      Tokens out;
      for (std::int64_t d : digitsOf(n, spec.base)) out.push_back(symbolFor.at(d));
      return out;
    };

    Puzzle p;
    for (std::size_t i = 0; i + 1 < numbers.size(); ++i)
      p.equations.push_back(Equation::withValue(stringFor(numbers[i]), numbers[i]));
    p.query = stringFor(numbers.back());
    p.condition.explicitness = Explicitness::Implicit;
    p.condition.variableWidth = spec.symbolMode == SymbolMode::Abcd
                                    ? VariableWidth::SingleCharacter
                                    : VariableWidth::MultiCharacter;
    p.condition.contextHint = ContextHint::None;
    p.seed = seed;
    p.meta.kind = "base-experiment";
    p.meta.symbolMode = symbolModeName(spec.symbolMode);
    p.meta.id = "base-b" + std::to_string(spec.base) + "-" + p.meta.symbolMode + "-s" +
                std::to_string(seed);
    p.meta.base = spec.base;
    p.meta.seed = seed;
    p.meta.language = "Template";

    const std::int64_t answer = numbers.back();
    if (!solvesTo(p, std::to_string(answer), ctx)) {
      if (!spec.numbers.empty())
        raise(Errc::IdentifiabilityFailure, "supplied numbers are not identifiable");
      continue;
    }

    GeneratedPuzzle out;
    out.puzzle = std::move(p);
    std::map<std::string, std::int64_t> digitMap;
    for (const auto& [d, s] : symbolFor) digitMap[s] = d;
    out.truth = positionalTruth(spec.base, Order::MostSignificantFirst, false,
                                std::move(digitMap), answer);
    return out;
  }
  raise(Errc::IdentifiabilityFailure, "no identifiable base-experiment instance found");
}

std::pair<GeneratedPuzzle, GeneratedPuzzle> generateMinimalPair(const MinimalPairSpec& spec,
                                                                std::uint64_t seed,
                                                                const GeneratorContext& ctx) {
  PairScaffold sc(seed);
  const std::int64_t b = spec.base;
  if (b < 4) raise(Errc::UnsupportedBase, "minimal pairs need base >= 4");

  auto makeOrderTemplate = [&](Order order, const std::string& revealedAs, std::int64_t vA,
                               std::int64_t vB) {
    const std::string& A = sc.letters[0];
    const std::string& B = sc.letters[1];
    const bool lsf = order == Order::LeastSignificantFirst;
    Tokens combo = lsf ? Tokens{B, A} : Tokens{A, B};
    Tokens query = lsf ? Tokens{A, B} : Tokens{B, A};
    std::vector<Equation> eqs{Equation::withValue({A}, vA), Equation::withValue({B}, vB),
                              Equation::withValue(combo, b * vA + vB)};
    const std::int64_t answer = b * vB + vA;
    Puzzle p = positionalPuzzle(eqs, query, spec, order == Order::LeastSignificantFirst, seed,
                                revealedAs, b);
    GroundTruth t = positionalTruth(b, order, false, {{A, vA}, {B, vB}}, answer);
    return GeneratedPuzzle{std::move(p), std::move(t)};
  };

  for (int attempt = 0; attempt < ctx.maxAttempts; ++attempt) {
    const std::int64_t vA = sc.rng.nextInt(1, b - 1);
    const std::int64_t vB = sc.rng.nextInt(1, b - 1);
    if (vA == vB) continue;

    switch (spec.parameter) {
      case MinimalPairParameter::Order: {
        GeneratedPuzzle a = makeOrderTemplate(Order::MostSignificantFirst, "glyphs", vA, vB);
        GeneratedPuzzle bb = makeOrderTemplate(Order::LeastSignificantFirst, "glyphs", vA, vB);
        bb.puzzle.meta.setting = "B";
        bb.puzzle.meta.id = "minpair-order-B-s" + std::to_string(seed);
        if (!solvesTo(a.puzzle, a.truth.answerText, ctx)) continue;
        if (!solvesTo(bb.puzzle, bb.truth.answerText, ctx)) continue;
        return {std::move(a), std::move(bb)};
      }
      case MinimalPairParameter::TypedVsGlyph: {
        GeneratedPuzzle a = makeOrderTemplate(Order::MostSignificantFirst, "words", vA, vB);
        a.puzzle.meta.setting = "A";
        a.puzzle.meta.id = "minpair-typed-vs-glyph-A-s" + std::to_string(seed);
        GeneratedPuzzle g = makeOrderTemplate(Order::MostSignificantFirst, "glyphs", vA, vB);
        g.puzzle.meta.setting = "B";
        g.puzzle.meta.id = "minpair-typed-vs-glyph-B-s" + std::to_string(seed);
        if (!solvesTo(a.puzzle, a.truth.answerText, ctx)) continue;
        if (!solvesTo(g.puzzle, g.truth.answerText, ctx)) continue;
        return {std::move(a), std::move(g)};
      }
      case MinimalPairParameter::NumeralVsNot: {
        GeneratedPuzzle a = makeOrderTemplate(Order::MostSignificantFirst, "glyphs", vA, vB);
        a.puzzle.meta.setting = "A";
        a.puzzle.meta.id = "minpair-numeral-vs-not-A-s" + std::to_string(seed);

        const std::string& A = sc.letters[0];
        const std::string& B = sc.letters[1];
        std::set<std::string> used;
        std::vector<std::string> words;
        while (words.size() < 2) {
          std::string w = dummyWord(ctx.vocab, sc.rng, 2);
          if (used.insert(w).second) words.push_back(w);
        }
        std::vector<Equation> eqs{Equation::withText({A}, words[0]),
                                  Equation::withText({B}, words[1]),
                                  Equation::withText({A, B}, words[0] + " " + words[1])};
        Puzzle p = positionalPuzzle(eqs, {B, A}, spec, true, seed, "glyphs", b);
        GroundTruth t;
        GroundTruth::Substitution subst;
        subst.order = Order::MostSignificantFirst;
        subst.words = {{A, words[0]}, {B, words[1]}};
        t.substitution = subst;
        t.answerText = words[1] + " " + words[0];
        GeneratedPuzzle control{std::move(p), std::move(t)};
        if (!solvesTo(a.puzzle, a.truth.answerText, ctx)) continue;
        if (!solvesTo(control.puzzle, control.truth.answerText, ctx)) continue;
        return {std::move(a), std::move(control)};
      }
      case MinimalPairParameter::AdditiveVsSubtractive: {
        if (b != 10) raise(Errc::UnsupportedBase, "the additive-vs-subtractive template is decimal");
        const std::string& A = sc.letters[0];
        const std::string& B = sc.letters[1];
        // Additive side spells 27 as 20 + 7; subtractive side as 30 - 3.
        std::vector<Equation> addEqs{
            Equation::withValue({A}, 2), Equation::withValue({B}, 7),
            Equation::withValue({A, A}, 22), Equation::withValue({A, B}, 27)};
        Puzzle addP = positionalPuzzle(addEqs, {B, A}, spec, false, seed, "glyphs", b);
        GeneratedPuzzle a{std::move(addP),
                          positionalTruth(b, Order::MostSignificantFirst, false,
                                          {{A, 2}, {B, 7}}, 72)};

        const std::int64_t w = vB == 3 ? vA : vB;
        if (w == 3) continue;
        std::vector<Equation> subEqs{
            Equation::withValue({A}, 3), Equation::withValue({B}, w),
            Equation::withValue({A, A}, 27), Equation::withValue({A, B}, 30 - w)};
        Puzzle subP = positionalPuzzle(subEqs, {B, A}, spec, true, seed, "glyphs", b);
        GeneratedPuzzle s{std::move(subP),
                          positionalTruth(b, Order::MostSignificantFirst, true, {{A, 3}, {B, w}},
                                          10 * w - 3)};
        if (!solvesTo(a.puzzle, a.truth.answerText, ctx)) continue;
        if (!solvesTo(s.puzzle, s.truth.answerText, ctx)) continue;
        return {std::move(a), std::move(s)};
      }
      case MinimalPairParameter::Base: {
        if (spec.altBase == spec.base || spec.altBase < 4 || spec.altBase > 19)
          raise(Errc::UnsupportedBase, "alternate base must differ and lie in 4..19");
        // Shared numbers must stay within four distinct digit values in both
        // bases at once; greedily grow such a set from a shuffled candidate
        // pool.
        const std::int64_t cap =
            std::min(b * b * b, spec.altBase * spec.altBase * spec.altBase) - 1;
        std::vector<std::int64_t> candidates;
        for (std::int64_t n = 1; n <= cap; ++n) candidates.push_back(n);
        sc.rng.shuffle(candidates);
        std::vector<std::int64_t> numbers;
        std::set<std::int64_t> unionA, unionB;
        for (std::int64_t n : candidates) {
          std::set<std::int64_t> ua = unionA, ub = unionB;
          for (std::int64_t d : digitsOf(n, b)) ua.insert(d);
          for (std::int64_t d : digitsOf(n, spec.altBase)) ub.insert(d);
          if (ua.size() > 4 || ub.size() > 4) continue;
          unionA = std::move(ua);
          unionB = std::move(ub);
          numbers.push_back(n);
          if (numbers.size() == 5) break;
        }
        if (numbers.size() < 5) continue;

        BaseExperimentSpec ea{b, SymbolMode::Abcd, numbers};
        BaseExperimentSpec eb{spec.altBase, SymbolMode::Abcd, numbers};
        GeneratedPuzzle a, bb;
        try {
          a = generateBaseExperiment(ea, seed, ctx);
          bb = generateBaseExperiment(eb, seed, ctx);
        } catch (const Error& err) {
          if (err.code() == Errc::IdentifiabilityFailure || err.code() == Errc::InvalidArgument)
            continue;
          throw;
        }
        for (GeneratedPuzzle* g : {&a, &bb}) {
          g->puzzle.meta.kind = "minimal-pair";
          g->puzzle.meta.paradigm = minimalPairParameterName(spec.parameter);
          g->puzzle.meta.symbolMode.clear();
        }
        a.puzzle.meta.setting = "A";
        a.puzzle.meta.id = "minpair-base-A-s" + std::to_string(seed);
        bb.puzzle.meta.setting = "B";
        bb.puzzle.meta.id = "minpair-base-B-s" + std::to_string(seed);
        return {std::move(a), std::move(bb)};
      }
    }
  }
  raise(Errc::IdentifiabilityFailure, "no identifiable minimal pair found for " +
                                          std::string(minimalPairParameterName(spec.parameter)));
}

}  // namespace numgram
