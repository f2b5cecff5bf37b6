// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run via ctest (-R acceptance) or directly; expects the repo data
// directory (compiled in as DATA_DIR).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "numgram/english.hpp"
#include "numgram/error.hpp"
#include "numgram/eval.hpp"
#include "numgram/generator.hpp"
#include "numgram/showcase.hpp"

using namespace numgram;

namespace {

const std::string kDataDir = DATA_DIR;

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double secs() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void report(int criterion, const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "<missing " + path + ">";
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// ---------------------------------------------------------------------------

void criterion1RoundTrip() {
  Timer timer;
  std::vector<std::int64_t> bases;
  for (std::int64_t b = 4; b <= 20; ++b) bases.push_back(b);
  bases.push_back(24);

  std::uint64_t checked = 0, wrong = 0;
  for (std::int64_t b : bases) {
    for (Order order : {Order::MostSignificantFirst, Order::LeastSignificantFirst}) {
      for (std::int64_t t : {std::int64_t{0}, b / 2}) {
        SystemTemplate tmpl;
        tmpl.base = b;
        tmpl.order = order;
        tmpl.subtractiveThreshold = t;
        const NumeralSystem sys = makeSystem(tmpl);
        const std::int64_t hi = std::min<std::int64_t>(2 * b * b * b, 100000);
        for (std::int64_t n = 1; n <= hi; ++n) {
          ++checked;
          try {
            if (evaluate(parseUnique(surface(render(n, sys), sys), sys)) != n) ++wrong;
          } catch (const Error&) {
            ++wrong;
          }
        }
      }
    }
  }
  const double secs = timer.secs();
  std::ostringstream detail;
  detail << checked << " values, " << wrong << " failures, " << std::fixed << secs << "s";
  report(1, "round-trip suite", wrong == 0 && secs <= 60.0, detail.str());
}

// ---------------------------------------------------------------------------

struct FourWay {
  NumeralSystem sys;
  std::vector<std::int64_t> values;
  std::int64_t queryValue = 0;
  std::map<Explicitness, Puzzle> byCondition;
  std::map<Explicitness, OperatorStyle> styles;
};

std::vector<FourWay> conditionSuite(std::size_t count) {
  GeneratorContext ctx;
  ctx.vocab = loadVocabulary(kDataDir + "/vocab.txt");
  std::vector<FourWay> out;
  std::uint64_t seed = 1000;
  while (out.size() < count) {
    SystemTemplate tmpl;
    tmpl.base = 6 + static_cast<std::int64_t>(out.size() % 11);  // 6..16
    tmpl.order = out.size() % 2 ? Order::LeastSignificantFirst : Order::MostSignificantFirst;
    tmpl.subtractiveThreshold = (out.size() % 3 == 0) ? tmpl.base / 2 : 0;
    tmpl.overtAdd = out.size() % 2 == 0;
    Condition cond;
    cond.explicitness = Explicitness::Implicit;

    GeneratedPuzzle g;
    try {
      g = generateRosetta(tmpl, 6, cond, seed++, ctx);
    } catch (const Error&) {
      continue;
    }

    FourWay fw;
    fw.sys = *g.truth.system;
    fw.queryValue = *g.truth.answerValue;
    for (const Equation& eq : g.puzzle.equations) fw.values.push_back(*eq.value);
    fw.byCondition[Explicitness::Implicit] = g.puzzle;
    fw.styles[Explicitness::Implicit] = OperatorStyle::familiar();

    // re-render the same equations under the three explicit conditions;
    // operator words drawn per condition, deterministic in the seed
    for (Explicitness e : {Explicitness::ExplicitFamiliar,
                           Explicitness::ExplicitUnfamiliarSymbol,
                           Explicitness::ExplicitUnfamiliarWord}) {
      Condition c;
      c.explicitness = e;
      RandomAssignment draw =
          assign({}, {OpKind::Add, OpKind::Sub, OpKind::Mul}, ctx.vocab,
                 deriveSeed(g.puzzle.seed, explicitnessName(e)), c, ctx.config);
      OperatorStyle style = OperatorStyle::familiar();
      if (e != Explicitness::ExplicitFamiliar) {
        style.addSurface = draw.operatorWords.at(OpKind::Add);
        style.subSurface = draw.operatorWords.at(OpKind::Sub);
        style.mulSurface = draw.operatorWords.at(OpKind::Mul);
      }
      Puzzle p = g.puzzle;
      p.condition = c;
      p.equations.clear();
      for (std::int64_t v : fw.values)
        p.equations.push_back(
            Equation::withValue(applyCondition(render(v, fw.sys), fw.sys, c, style), v));
      p.query = applyCondition(render(fw.queryValue, fw.sys), fw.sys, c, style);
      p.meta.operators = {{OpKind::Add, style.addSurface},
                          {OpKind::Sub, style.subSurface},
                          {OpKind::Mul, style.mulSurface}};
      p.meta.id = g.puzzle.meta.id + "-" + explicitnessName(e);
      fw.byCondition[e] = std::move(p);
      fw.styles[e] = style;
    }
    out.push_back(std::move(fw));
  }
  return out;
}

void criterion2ConditionEquivalence(const std::vector<FourWay>& suite) {
  Timer timer;
  std::size_t checked = 0, bad = 0;
  for (const FourWay& fw : suite) {
    const Puzzle& implicit = fw.byCondition.at(Explicitness::Implicit);
    for (std::size_t i = 0; i <= fw.values.size(); ++i) {
      const bool isQuery = i == fw.values.size();
      const std::int64_t value = isQuery ? fw.queryValue : fw.values[i];
      const Tokens& impTokens = isQuery ? implicit.query : implicit.equations[i].tokens;
      const ExprPtr expect = render(value, fw.sys);
      Condition impCond;
      const ExprPtr impAst = parseConditioned(impTokens, fw.sys, impCond, fw.styles.at(Explicitness::Implicit));

      for (Explicitness e : {Explicitness::ExplicitFamiliar,
                             Explicitness::ExplicitUnfamiliarSymbol,
                             Explicitness::ExplicitUnfamiliarWord}) {
        ++checked;
        const Puzzle& p = fw.byCondition.at(e);
        const Tokens& exTokens = isQuery ? p.query : p.equations[i].tokens;
        const OperatorStyle& style = fw.styles.at(e);
        // strip law, exact
        if (stripOperators(exTokens, style) != stripConnectives(impTokens, fw.sys)) {
          ++bad;
          continue;
        }
        // AST identity across conditions
        Condition c;
        c.explicitness = e;
        try {
          const ExprPtr back = parseConditioned(exTokens, fw.sys, c, style);
          if (!structurallyEqual(back, expect) || !structurallyEqual(back, impAst)) ++bad;
        } catch (const Error&) {
          ++bad;
        }
      }
    }
  }
  std::ostringstream detail;
  detail << suite.size() << " puzzles x 4 conditions, " << checked << " comparisons, " << bad
         << " failures, " << std::fixed << timer.secs() << "s";
  report(2, "condition equivalence", bad == 0, detail.str());
}

// ---------------------------------------------------------------------------

void criterion3MinimalPairs() {
  Timer timer;
  GeneratorContext ctx;
  ctx.vocab = loadVocabulary(kDataDir + "/vocab.txt");
  std::size_t total = 0, solved = 0;
  for (MinimalPairParameter param :
       {MinimalPairParameter::NumeralVsNot, MinimalPairParameter::TypedVsGlyph,
        MinimalPairParameter::Order, MinimalPairParameter::AdditiveVsSubtractive,
        MinimalPairParameter::Base}) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      MinimalPairSpec spec;
      spec.parameter = param;
      spec.altBase = 4 + static_cast<std::int64_t>(seed % 6);  // 4..9
      if (spec.altBase == 10) spec.altBase = 11;
      try {
        auto [a, b] = generateMinimalPair(spec, seed, ctx);
        for (const GeneratedPuzzle* g : {&a, &b}) {
          ++total;
          SolveResult r = solve(g->puzzle, ctx.space);
          if (r.status == SolveStatus::Unique && r.answerTexts[0] == g->truth.answerText)
            ++solved;
        }
      } catch (const Error&) {
        total += 2;
      }
    }
  }
  const double secs = timer.secs();
  std::ostringstream detail;
  detail << solved << "/" << total << " solved, " << std::fixed << secs << "s";
  report(3, "minimal pairs", total == 200 && solved == total && secs <= 30.0, detail.str());
}

// ---------------------------------------------------------------------------

void criterion4BaseExperiments() {
  Timer timer;
  GeneratorContext ctx;
  ctx.vocab = loadVocabulary(kDataDir + "/vocab.txt");
  std::size_t total = 0, solved = 0;
  for (std::int64_t base = 4; base <= 19; ++base) {
    for (SymbolMode mode : {SymbolMode::Abcd, SymbolMode::RandomTokens}) {
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        ++total;
        try {
          BaseExperimentSpec spec;
          spec.base = base;
          spec.symbolMode = mode;
          GeneratedPuzzle g = generateBaseExperiment(spec, seed, ctx);
          SolveResult r = solve(g.puzzle, ctx.space);
          if (r.status == SolveStatus::Unique && r.answerTexts[0] == g.truth.answerText) ++solved;
        } catch (const Error&) {
        }
      }
    }
  }
  const double secs = timer.secs();
  std::ostringstream detail;
  detail << solved << "/" << total << " unique and correct, " << std::fixed << secs << "s";
  report(4, "base experiments", total == 320 && solved == total && secs <= 60.0, detail.str());
}

// ---------------------------------------------------------------------------

void criterion5OracleEquivalence() {
  Timer timer;
  Rng rng(424242);
  SpaceConfig space;
  space.baseMax = 12;

  auto keysOf = [](const std::vector<Hypothesis>& hs) {
    std::vector<std::string> keys;
    for (const Hypothesis& h : hs) keys.push_back(h.canonicalKey());
    return keys;
  };

  std::size_t run = 0, equal = 0;
  std::size_t tokenCap = 0;
  while (run < 500) {
    const int family = static_cast<int>(rng.nextInt(0, 3));
    std::vector<Equation> eqs;
    SpaceConfig instanceSpace = space;
    std::set<std::string> tokens;

    if (family == 0) {
      // positional: a batch of symbols, solos for most, two combos
      const std::int64_t b = rng.nextInt(4, 10);
      const int k = static_cast<int>(std::min<std::int64_t>(rng.nextInt(2, 6), b - 1));
      std::vector<std::string> syms;
      std::vector<std::int64_t> vals;
      std::set<std::int64_t> used;
      for (int i = 0; i < k; ++i) {
        syms.push_back(std::string(1, static_cast<char>('A' + i)));
        std::int64_t v;
        do {
          v = rng.nextInt(0, b - 1);
        } while (used.count(v));
        used.insert(v);
        vals.push_back(v);
      }
      if (vals[0] == 0) std::swap(vals[0], vals[k - 1]);
      if (vals[0] == 0) continue;
      for (int i = 0; i < k; ++i)
        if (vals[i] != 0 || rng.nextInt(0, 1)) eqs.push_back(Equation::withValue({syms[i]}, vals[i]));
      const bool unitsSubtracted = rng.nextInt(0, 3) == 0;
      std::int64_t combo = 0;
      Tokens comboTokens;
      const int comboLen = static_cast<int>(rng.nextInt(2, std::min(k, 3)));
      for (int i = 0; i < comboLen; ++i) {
        const bool units = i + 1 == comboLen;
        combo = units && unitsSubtracted ? combo * b - vals[i] : combo * b + vals[i];
        comboTokens.push_back(syms[i]);
      }
      if (combo < 0) continue;
      eqs.push_back(Equation::withValue(comboTokens, combo));
      if (k >= 3) {
        // second combo over the tail symbols
        std::int64_t combo2 = unitsSubtracted ? vals[k - 1] * b - vals[k - 2]
                                              : vals[k - 1] * b + vals[k - 2];
        if (vals[k - 1] == 0 || combo2 < 0) continue;
        eqs.push_back(Equation::withValue({syms[k - 1], syms[k - 2]}, combo2));
      }
    } else if (family == 1 || family == 3) {
      // morphological: digit solos, one or two power words, an optional add
      // connective; family 3 renders the compound lines explicitly
      const std::int64_t b = rng.nextInt(4, 10);
      const int digits = static_cast<int>(std::min<std::int64_t>(rng.nextInt(2, 5), b - 1));
      static const char* digitNames[] = {"ka", "lo", "mi", "re", "su"};
      std::vector<std::int64_t> dv;
      std::set<std::int64_t> used;
      for (int i = 0; i < digits; ++i) {
        std::int64_t v;
        do {
          v = rng.nextInt(1, b - 1);
        } while (used.count(v));
        used.insert(v);
        dv.push_back(v);
        eqs.push_back(Equation::withValue({digitNames[i]}, v));
      }
      const bool twoPowers = family == 1 && rng.nextInt(0, 1) && digits >= 3;
      const bool overtAdd = family == 1 && rng.nextInt(0, 1);
      const bool subtractiveTail = family == 1 && !overtAdd && rng.nextInt(0, 2) == 0;
      if (family == 1) {
        auto compound = [&](int hiDigit, int loDigit) {
          if (subtractiveTail) {
            // hi x power, then the sub connective and a subtracted digit
            eqs.push_back(Equation::withValue(
                {digitNames[hiDigit], "pu", "mo", digitNames[loDigit]},
                dv[hiDigit] * b - dv[loDigit]));
            return;
          }
          Tokens t{digitNames[hiDigit], "pu"};
          if (overtAdd) t.push_back("et");
          t.push_back(digitNames[loDigit]);
          eqs.push_back(Equation::withValue(t, dv[hiDigit] * b + dv[loDigit]));
        };
        compound(0, 1);
        compound(1, 0);
        if (twoPowers) {
          Tokens t{digitNames[2], "qo"};
          if (overtAdd) t.push_back("et");
          t.push_back(digitNames[0]);
          t.push_back("pu");
          if (overtAdd) t.push_back("et");
          t.push_back(digitNames[1]);
          eqs.push_back(
              Equation::withValue(t, dv[2] * b * b + dv[0] * b + dv[1]));
        }
      } else {
        instanceSpace.explicitStructure = true;
        instanceSpace.boundOperators = {{"+", OpKind::Add}, {"*", OpKind::Mul}};
        eqs.push_back(Equation::withValue({"(", digitNames[0], "*", "pu", ")", "+", digitNames[1]},
                                          dv[0] * b + dv[1]));
        eqs.push_back(Equation::withValue({"(", digitNames[1], "*", "pu", ")", "+", digitNames[0]},
                                          dv[1] * b + dv[0]));
      }
    } else {
      // substitution over a few symbols
      const int k = static_cast<int>(rng.nextInt(2, 4));
      static const char* words[] = {"mo", "ta", "ri", "ves"};
      Tokens comboL, comboRhs;
      for (int i = 0; i < k; ++i) {
        const std::string sym(1, static_cast<char>('A' + i));
        eqs.push_back(Equation::withText({sym}, words[i]));
        comboL.push_back(sym);
        comboRhs.push_back(words[i]);
      }
      if (rng.nextInt(0, 1)) {
        std::reverse(comboL.begin(), comboL.end());
        std::reverse(comboRhs.begin(), comboRhs.end());
      }
      eqs.push_back(Equation::withText(comboL, joinTokens(comboRhs)));
    }

    for (const Equation& eq : eqs)
      for (const std::string& t : eq.tokens)
        if (t != "(" && t != ")" && t != "+" && t != "*") tokens.insert(t);
    if (tokens.size() > 8) continue;
    tokenCap = std::max(tokenCap, tokens.size());

    SolveStats stats;
    auto fast = solveConsistent(eqs, instanceSpace, stats);
    auto slow = enumerateConsistent(eqs, instanceSpace);
    if (keysOf(fast) == keysOf(slow)) ++equal;
    ++run;
  }
  std::ostringstream detail;
  detail << equal << "/" << run << " instances equal, max tokens " << tokenCap << ", "
         << std::fixed << timer.secs() << "s";
  report(5, "solver oracle equivalence", run == 500 && equal == run, detail.str());
}

// ---------------------------------------------------------------------------

void criterion6Randomizer() {
  Timer timer;
  TokenVocabulary vocab = loadVocabulary(kDataDir + "/vocab.txt");
  std::size_t bad = 0;
  std::string first, second;
  for (int pass = 0; pass < 2; ++pass) {
    Rng rng(977);
    std::string all;
    for (int i = 0; i < 10000; ++i) {
      const std::string w = dummyWord(vocab, rng, static_cast<int>(rng.nextInt(2, 3)));
      bool ok = !w.empty() && w.size() <= 12;
      for (unsigned char c : w)
        ok = ok && ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'));
      if (!ok) ++bad;
      all += w;
      all += '\n';
    }
    (pass == 0 ? first : second) = all;
  }
  std::ostringstream detail;
  detail << "10000 words, " << bad << " violations, bytes "
         << (first == second ? "stable" : "UNSTABLE") << ", " << std::fixed << timer.secs() << "s";
  report(6, "randomizer conformance", bad == 0 && first == second, detail.str());
}

// ---------------------------------------------------------------------------

void criterion7TableGolden() {
  Showcase sc = makeShowcase();
  const std::pair<Explicitness, std::string> files[] = {
      {Explicitness::Implicit, "table_layout_implicit.txt"},
      {Explicitness::ExplicitFamiliar, "table_layout_familiar.txt"},
      {Explicitness::ExplicitUnfamiliarSymbol, "table_layout_unfamiliar_symbol.txt"},
      {Explicitness::ExplicitUnfamiliarWord, "table_layout_unfamiliar_word.txt"},
  };
  std::size_t bad = 0;
  for (const auto& [e, name] : files) {
    const std::string body = showcaseBody(sc, e) + "\n";
    if (body != slurp(kDataDir + "/goldens/" + name)) ++bad;
  }
  const std::string familiar = showcaseBody(sc, Explicitness::ExplicitFamiliar);
  const bool valuesVisible = familiar.find("= 31") != std::string::npos &&
                             familiar.find("= 26") != std::string::npos &&
                             familiar.find("= 50") != std::string::npos &&
                             familiar.find("= ??") != std::string::npos;
  std::ostringstream detail;
  detail << (4 - bad) << "/4 layouts byte-identical";
  report(7, "table layout goldens", bad == 0 && valuesVisible, detail.str());
}

// ---------------------------------------------------------------------------

void criterion8HarnessMath() {
  // SEM fixture
  std::vector<RunRecord> records;
  const bool flags[] = {true, true, false, true, false};
  for (int i = 0; i < 5; ++i) {
    RunRecord r;
    r.puzzleId = "p" + std::to_string(i);
    r.condition = "implicit";
    r.adapter = "internal";
    r.correct = flags[i];
    records.push_back(r);
  }
  auto rows = aggregate(records, "implicit");
  const double expectedSem = std::sqrt(0.3) / std::sqrt(5.0);
  const bool semOk = rows.size() == 1 && std::abs(rows[0].accuracy - 0.6) < 1e-12 &&
                     std::abs(rows[0].sem - expectedSem) < 1e-12;

  // record conservation on a 10 x 1 x 5 run with a replay book that only
  // covers some cells; errored records still count
  GeneratorContext ctx;
  ctx.vocab = loadVocabulary(kDataDir + "/vocab.txt");
  std::vector<SuiteEntry> suite;
  for (int i = 0; i < 10; ++i) {
    SystemTemplate tmpl;
    tmpl.base = 8 + (i % 5);
    Condition cond;
    GeneratedPuzzle g = generateRosetta(tmpl, 5, cond, 9000 + i, ctx);
    suite.push_back({g.puzzle, g.truth});
  }
  const std::string replayPath = "acceptance_replay.jsonl";
  {
    std::ofstream out(replayPath);
    for (int i = 0; i < 10; i += 2)
      out << "{\"puzzle\": \"" << suite[i].puzzle.meta.id
          << "\", \"iteration\": 0, \"response\": \"" << suite[i].truth.answerText << "\"}\n";
  }
  EvalOptions opts;
  opts.iterations = 5;
  opts.seed = 77;
  opts.vocab = ctx.vocab;
  AdapterConfig replay;
  replay.name = "replay";
  replay.kind = AdapterConfig::Kind::Replay;
  replay.replayPath = replayPath;
  auto runRecords = runSuite(suite, {replay}, opts);
  std::size_t errored = 0;
  for (const RunRecord& r : runRecords) errored += r.errored ? 1 : 0;
  const bool conservation = runRecords.size() == 10 * 1 * 5 && errored == 45;
  std::remove(replayPath.c_str());

  std::ostringstream detail;
  detail << "sem |err| < 1e-12: " << (semOk ? "yes" : "no") << "; records "
         << runRecords.size() << "/50 with " << errored << " errored";
  report(8, "harness math", semOk && conservation, detail.str());
}

// ---------------------------------------------------------------------------

void criterion9ConditionInvariance(const std::vector<FourWay>& suite) {
  Timer timer;
  SpaceConfig space;
  std::size_t n = 0, implicitCorrect = 0, familiarCorrect = 0, nodeAdvantage = 0;
  for (const FourWay& fw : suite) {
    ++n;
    const std::string expected = std::to_string(fw.queryValue);
    SolveResult ri = solve(fw.byCondition.at(Explicitness::Implicit), space);
    SolveResult rf = solve(fw.byCondition.at(Explicitness::ExplicitFamiliar), space);
    if (ri.status == SolveStatus::Unique && ri.answerTexts[0] == expected) ++implicitCorrect;
    if (rf.status == SolveStatus::Unique && rf.answerTexts[0] == expected) ++familiarCorrect;
    if (ri.stats.nodesExpanded >= rf.stats.nodesExpanded) ++nodeAdvantage;
  }
  const double ratio = n ? static_cast<double>(nodeAdvantage) / static_cast<double>(n) : 0.0;
  std::ostringstream detail;
  detail << "implicit " << implicitCorrect << "/" << n << ", familiar " << familiarCorrect << "/"
         << n << ", node advantage " << nodeAdvantage << "/" << n << ", " << std::fixed
         << timer.secs() << "s";
  report(9, "solver condition invariance",
         implicitCorrect == n && familiarCorrect == n && ratio >= 0.95, detail.str());
}

}  // namespace

int main() {
  Timer total;
  criterion1RoundTrip();

  Timer suiteTimer;
  std::vector<FourWay> suite = conditionSuite(200);
  std::fprintf(stderr, "[acceptance] condition suite generated in %.1fs\n", suiteTimer.secs());

  criterion2ConditionEquivalence(suite);
  criterion3MinimalPairs();
  criterion4BaseExperiments();
  criterion5OracleEquivalence();
  criterion6Randomizer();
  criterion7TableGolden();
  criterion8HarnessMath();
  criterion9ConditionInvariance(suite);

  std::printf("%s: %d of 9 criteria failed (%.1fs total)\n", failures ? "FAIL" : "OK", failures,
              total.secs());
  return failures ? 1 : 0;
}
