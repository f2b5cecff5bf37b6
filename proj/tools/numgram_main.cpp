// numgram command line: puzzle generation, condition transformation, the
// symbolic solver, and the evaluation harness. Machine-readable output goes
// to stdout or --out files; diagnostics to stderr. Exit codes: 0 success,
// 1 domain error, 2 usage error.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "numgram/english.hpp"
#include "numgram/error.hpp"
#include "numgram/eval.hpp"
#include "numgram/generator.hpp"
#include "numgram/showcase.hpp"

using namespace numgram;
namespace fs = std::filesystem;

namespace {

struct CommonFlags {
  std::string vocabPath = "data/vocab.txt";
  std::string configPath;
  std::uint64_t seed = 0;
};

GeneratorContext loadContext(const CommonFlags& flags) {
  GeneratorContext ctx;
  ctx.vocab = loadVocabulary(flags.vocabPath);
  if (!flags.configPath.empty()) ctx.config = ConditionConfig::fromJsonFile(flags.configPath);
  return ctx;
}

Condition parseCondition(const std::string& cond, const std::string& width,
                         const std::string& hint) {
  Condition c;
  c.explicitness = explicitnessFromName(cond);
  c.variableWidth = widthFromName(width);
  c.contextHint = hintFromName(hint);
  c.validate();
  return c;
}

void writePuzzleFiles(const GeneratedPuzzle& g, const std::string& outDir,
                      const ConditionConfig& config) {
  const fs::path dir(outDir);
  const std::string stem = g.puzzle.meta.id;
  writeFileAtomic((dir / (stem + ".puzzle.json")).string(), g.puzzle.toJson() + "\n");
  writeFileAtomic((dir / (stem + ".sidecar.json")).string(), g.truth.toJson() + "\n");
  writeFileAtomic((dir / (stem + ".prompt.txt")).string(), g.puzzle.promptText(config) + "\n");
  std::cout << (dir / (stem + ".puzzle.json")).string() << "\n";
}

SpaceConfig spaceFromFlags(std::uint64_t nodes, double secs, std::int64_t baseMin,
                           std::int64_t baseMax) {
  SpaceConfig space;
  if (nodes > 0) space.nodeBudget = nodes;
  if (secs > 0) space.timeBudgetSecs = secs;
  space.baseMin = baseMin;
  space.baseMax = baseMax;
  return space;
}

std::vector<SuiteEntry> loadSuite(const std::string& dir) {
  std::vector<SuiteEntry> suite;
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > 12 && name.substr(name.size() - 12) == ".puzzle.json")
      paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  for (const fs::path& p : paths) {
    SuiteEntry e;
    e.puzzle = Puzzle::fromJson(readFile(p.string()));
    std::string sidecar = p.string();
    sidecar.replace(sidecar.size() - 12, 12, ".sidecar.json");
    e.truth = GroundTruth::fromJson(readFile(sidecar));
    suite.push_back(std::move(e));
  }
  if (suite.empty()) raise(Errc::EmptyInput, "no *.puzzle.json files in " + dir);
  return suite;
}

AdapterConfig parseAdapterSpec(const std::string& spec) {
  AdapterConfig a;
  if (spec == "internal") return a;
  if (spec.rfind("replay:", 0) == 0) {
    a.kind = AdapterConfig::Kind::Replay;
    a.replayPath = spec.substr(7);
    a.name = "replay";
    return a;
  }
  if (spec.rfind("http:", 0) == 0) {
    // http:<endpoint>,<model>[,<credential-env>]
    a.kind = AdapterConfig::Kind::Http;
    std::string rest = spec.substr(5);
    const auto c1 = rest.find(',');
    if (c1 == std::string::npos)
      raise(Errc::InvalidArgument, "http adapter needs http:<endpoint>,<model>[,<env>]");
    a.endpoint = rest.substr(0, c1);
    std::string tail = rest.substr(c1 + 1);
    const auto c2 = tail.find(',');
    a.model = tail.substr(0, c2);
    if (c2 != std::string::npos) a.credentialEnv = tail.substr(c2 + 1);
    a.name = "http-" + a.model;
    return a;
  }
  raise(Errc::InvalidArgument, "unknown adapter spec '" + spec + "'");
}

int runGenRosetta(const CommonFlags& flags, std::int64_t base, const std::string& order,
                  std::int64_t subtractive, std::int64_t maxPower, bool noOmitUnit,
                  const std::string& connectives, int count, const Condition& cond,
                  const std::string& outDir) {
  GeneratorContext ctx = loadContext(flags);
  SystemTemplate tmpl;
  tmpl.base = base;
  tmpl.order = orderFromName(order);
  tmpl.subtractiveThreshold = subtractive;
  tmpl.maxPower = maxPower;
  tmpl.omitUnitMultiplier = !noOmitUnit;
  if (connectives == "add") tmpl.overtAdd = true;
  else if (connectives == "add-mul") tmpl.overtAdd = tmpl.overtMul = true;
  else if (connectives != "none")
    raise(Errc::InvalidArgument, "connectives must be none|add|add-mul");
  GeneratedPuzzle g = generateRosetta(tmpl, count, cond, flags.seed, ctx);
  writePuzzleFiles(g, outDir, ctx.config);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numgram: cross-linguistic numeral puzzles, conditions, solver, harness"};
  app.require_subcommand(1);

  CommonFlags flags;
  app.add_option("--vocab", flags.vocabPath, "newline-delimited token vocabulary")
      ->capture_default_str();
  app.add_option("--config", flags.configPath, "condition config JSON (defaults built in)");

  // ---- gen ----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate puzzles with ground-truth sidecars");
  gen->require_subcommand(1);

  std::string outDir = "out";
  std::int64_t base = 10, altBase = 6, subtractive = 0, maxPower = 3;
  std::string order = "most-significant-first";
  bool noOmitUnit = false;
  std::string connectives = "add";
  int count = 6;
  std::string cond = "implicit", width = "multi", hint = "none";
  std::string paradigm = "order", symbolMode = "abcd";
  std::vector<std::int64_t> numbers;

  auto addCondFlags = [&](CLI::App* cmd) {
    cmd->add_option("--cond", cond, "implicit|familiar|unfamiliar-symbol|unfamiliar-word")
        ->capture_default_str();
    cmd->add_option("--width", width, "single|multi")->capture_default_str();
    cmd->add_option("--hint", hint, "none|language|base|implicit-ops")->capture_default_str();
  };

  auto* genRosetta = gen->add_subcommand("rosetta", "olympiad-style equation set");
  genRosetta->add_option("--seed", flags.seed, "generation seed")->required();
  genRosetta->add_option("--base", base, "radix")->capture_default_str();
  genRosetta->add_option("--order", order, "most-significant-first|least-significant-first")
      ->capture_default_str();
  genRosetta->add_option("--subtractive", subtractive, "subtractive threshold")
      ->capture_default_str();
  genRosetta->add_option("--max-power", maxPower, "highest power morpheme")->capture_default_str();
  genRosetta->add_flag("--no-omit-unit", noOmitUnit, "spell the unit multiplier everywhere");
  genRosetta->add_option("--connectives", connectives, "none|add|add-mul")->capture_default_str();
  genRosetta->add_option("--count", count, "equation count")->capture_default_str();
  genRosetta->add_option("--out", outDir, "output directory")->capture_default_str();
  addCondFlags(genRosetta);

  auto* genPair = gen->add_subcommand("minimal-pair", "paired puzzles varying one parameter");
  genPair->add_option("--seed", flags.seed, "generation seed")->required();
  genPair
      ->add_option("--paradigm", paradigm,
                   "numeral-vs-not|typed-vs-glyph|order|additive-vs-subtractive|base")
      ->capture_default_str();
  genPair->add_option("--base", base, "radix")->capture_default_str();
  genPair->add_option("--alt-base", altBase, "second radix for the base paradigm")
      ->capture_default_str();
  genPair->add_option("--out", outDir, "output directory")->capture_default_str();

  auto* genBase = gen->add_subcommand("base-experiment", "digit strings in an unfamiliar base");
  genBase->add_option("--seed", flags.seed, "generation seed")->required();
  genBase->add_option("--base", base, "radix, 4..19")->capture_default_str();
  genBase->add_option("--mode", symbolMode, "abcd|random")->capture_default_str();
  genBase->add_option("--numbers", numbers, "explicit numbers (default: sampled)");
  genBase->add_option("--out", outDir, "output directory")->capture_default_str();

  // ---- transform ----------------------------------------------------------
  auto* transform = app.add_subcommand("transform", "re-render a puzzle under another condition");
  std::string puzzlePath, sidecarPath;
  transform->add_option("--puzzle", puzzlePath, "*.puzzle.json")->required();
  transform->add_option("--sidecar", sidecarPath, "*.sidecar.json")->required();
  transform->add_option("--out", outDir, "output directory")->capture_default_str();
  addCondFlags(transform);

  // ---- solve --------------------------------------------------------------
  auto* solveCmd = app.add_subcommand("solve", "run the induction solver on a puzzle file");
  std::string solvePath;
  std::uint64_t budgetNodes = 0;
  double budgetSecs = 0;
  std::int64_t baseMin = 2, baseMax = 30;
  solveCmd->add_option("puzzle", solvePath, "*.puzzle.json")->required();
  solveCmd->add_option("--budget-nodes", budgetNodes, "node budget (default 10^7)");
  solveCmd->add_option("--budget-secs", budgetSecs, "time budget (default 30)");
  solveCmd->add_option("--base-min", baseMin, "smallest base in the space")
      ->capture_default_str();
  solveCmd->add_option("--base-max", baseMax, "largest base in the space")
      ->capture_default_str();

  // ---- eval ---------------------------------------------------------------
  auto* eval = app.add_subcommand("eval", "score adapters over a puzzle directory");
  std::string puzzleDir;
  std::vector<std::string> adapterSpecs{"internal"};
  int iterations = 1, parallelism = 1;
  std::string baseline = "implicit";
  eval->add_option("--puzzles", puzzleDir, "directory of *.puzzle.json + *.sidecar.json")
      ->required();
  eval->add_option("--adapter", adapterSpecs,
                   "internal | replay:<path> | http:<endpoint>,<model>[,<env>]")
      ->capture_default_str();
  eval->add_option("--iterations", iterations, "iterations per puzzle")->capture_default_str();
  eval->add_option("--seed", flags.seed, "relabeling seed")->capture_default_str();
  eval->add_option("--parallelism", parallelism, "concurrent tasks")->capture_default_str();
  eval->add_option("--baseline", baseline, "baseline condition for deltas")
      ->capture_default_str();
  eval->add_option("--budget-nodes", budgetNodes, "solver node budget");
  eval->add_option("--budget-secs", budgetSecs, "solver time budget");
  eval->add_option("--out", outDir, "output directory")->capture_default_str();

  // ---- goldens ------------------------------------------------------------
  auto* goldens = app.add_subcommand("goldens", "regenerate checked-in golden files");
  std::string goldenDir = "data";
  goldens->add_option("--out", goldenDir, "data directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help and version exit 0, usage errors 2
  }

  try {
    if (genRosetta->parsed()) {
      return runGenRosetta(flags, base, order, subtractive, maxPower, noOmitUnit, connectives,
                           count, parseCondition(cond, width, hint), outDir);
    }

    if (genPair->parsed()) {
      GeneratorContext ctx = loadContext(flags);
      MinimalPairSpec spec;
      spec.parameter = minimalPairParameterFromName(paradigm);
      spec.base = base;
      spec.altBase = altBase;
      auto [a, b] = generateMinimalPair(spec, flags.seed, ctx);
      writePuzzleFiles(a, outDir, ctx.config);
      writePuzzleFiles(b, outDir, ctx.config);
      return 0;
    }

    if (genBase->parsed()) {
      GeneratorContext ctx = loadContext(flags);
      BaseExperimentSpec spec;
      spec.base = base;
      spec.symbolMode = symbolModeFromName(symbolMode);
      spec.numbers = numbers;
      GeneratedPuzzle g = generateBaseExperiment(spec, flags.seed, ctx);
      writePuzzleFiles(g, outDir, ctx.config);
      return 0;
    }

    if (transform->parsed()) {
      GeneratorContext ctx = loadContext(flags);
      Puzzle src = Puzzle::fromJson(readFile(puzzlePath));
      GroundTruth truth = GroundTruth::fromJson(readFile(sidecarPath));
      if (!truth.system)
        raise(Errc::InvalidArgument, "transform needs a morphological sidecar system");
      Condition target = parseCondition(cond, width, hint);

      std::vector<OpKind> ops{OpKind::Add, OpKind::Mul};
      if (truth.system->subtractiveThreshold > 0) ops.push_back(OpKind::Sub);
      RandomAssignment opDraw = assign(
          {}, ops, ctx.vocab,
          deriveSeed(src.seed, std::string("transform-") + explicitnessName(target.explicitness)),
          target, ctx.config);
      OperatorStyle style = OperatorStyle::familiar();
      if (target.explicitness == Explicitness::ExplicitUnfamiliarSymbol ||
          target.explicitness == Explicitness::ExplicitUnfamiliarWord) {
        style.addSurface = opDraw.operatorWords.at(OpKind::Add);
        style.mulSurface = opDraw.operatorWords.at(OpKind::Mul);
        if (opDraw.operatorWords.count(OpKind::Sub))
          style.subSurface = opDraw.operatorWords.at(OpKind::Sub);
      }

      GeneratedPuzzle g;
      g.puzzle = src;
      g.puzzle.condition = target;
      g.puzzle.equations.clear();
      for (const Equation& eq : src.equations) {
        if (!eq.value) raise(Errc::InvalidArgument, "transform expects numeric equations");
        g.puzzle.equations.push_back(Equation::withValue(
            applyCondition(render(*eq.value, *truth.system), *truth.system, target, style),
            *eq.value));
      }
      g.puzzle.query = applyCondition(render(*truth.answerValue, *truth.system), *truth.system,
                                      target, style);
      g.puzzle.meta.operators.clear();
      if (target.explicitness != Explicitness::Implicit) {
        g.puzzle.meta.operators[OpKind::Add] = style.addSurface;
        g.puzzle.meta.operators[OpKind::Sub] = style.subSurface;
        g.puzzle.meta.operators[OpKind::Mul] = style.mulSurface;
      }
      auto pos = g.puzzle.meta.id.rfind('-');
      g.puzzle.meta.id = g.puzzle.meta.id.substr(0, pos) + "-" +
                         explicitnessName(target.explicitness);
      g.truth = truth;
      writePuzzleFiles(g, outDir, ctx.config);
      return 0;
    }

    if (solveCmd->parsed()) {
      Puzzle p = Puzzle::fromJson(readFile(solvePath));
      SolveResult r = solve(p, spaceFromFlags(budgetNodes, budgetSecs, baseMin, baseMax));
      std::cout << r.toJson() << "\n";
      return (r.status == SolveStatus::Unique || r.status == SolveStatus::Ambiguous) ? 0 : 1;
    }

    if (eval->parsed()) {
      GeneratorContext ctx = loadContext(flags);
      EvalOptions opts;
      opts.iterations = iterations;
      opts.seed = flags.seed;
      opts.parallelism = parallelism;
      opts.space = spaceFromFlags(budgetNodes, budgetSecs, baseMin, baseMax);
      opts.config = ctx.config;
      opts.vocab = ctx.vocab;
      std::vector<AdapterConfig> adapters;
      for (const std::string& spec : adapterSpecs) adapters.push_back(parseAdapterSpec(spec));

      auto suite = loadSuite(puzzleDir);
      auto records = runSuite(suite, adapters, opts);
      std::string jsonl;
      for (const RunRecord& r : records) jsonl += r.toJsonLine() + "\n";
      const fs::path dir(outDir);
      writeFileAtomic((dir / "records.jsonl").string(), jsonl);
      writeFileAtomic((dir / "aggregate.csv").string(),
                      aggregateCsv(aggregate(records, baseline)));
      writeFileAtomic((dir / "by_puzzle.csv").string(),
                      puzzleBreakdownCsv(aggregateByPuzzle(records)));
      std::cout << aggregateCsv(aggregate(records, baseline));
      return 0;
    }

    if (goldens->parsed()) {
      Showcase sc = makeShowcase();
      const fs::path dir(goldenDir);
      const std::pair<Explicitness, const char*> files[] = {
          {Explicitness::Implicit, "table_layout_implicit.txt"},
          {Explicitness::ExplicitFamiliar, "table_layout_familiar.txt"},
          {Explicitness::ExplicitUnfamiliarSymbol, "table_layout_unfamiliar_symbol.txt"},
          {Explicitness::ExplicitUnfamiliarWord, "table_layout_unfamiliar_word.txt"},
      };
      for (auto [e, name] : files)
        writeFileAtomic((dir / "goldens" / name).string(), showcaseBody(sc, e) + "\n");
      writeFileAtomic((dir / "condition_config.json").string(),
                      ConditionConfig::defaults().toJson(2) + "\n");
      TokenVocabulary vocab = loadVocabulary(flags.vocabPath);
      Condition multi;
      RandomAssignment a =
          assign({"ma", "mb", "mc", "md", "me", "mf", "mg", "mh"},
                 {OpKind::Add, OpKind::Mul}, vocab, 42, multi, ConditionConfig::defaults());
      writeFileAtomic((dir / "fixtures" / "assignment_seed42.json").string(), a.toJson(2) + "\n");
      std::cerr << "goldens written under " << goldenDir << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
