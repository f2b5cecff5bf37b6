#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "numgram/generator.hpp"
#include "numgram/puzzle.hpp"
#include "numgram/randomizer.hpp"
#include "numgram/solver.hpp"

namespace numgram {

struct AdapterConfig {
  enum class Kind { Internal, Http, Replay };
  std::string name = "internal";
  Kind kind = Kind::Internal;
  std::string endpoint;       // Http: e.g. http://host:port
  std::string path = "/v1/chat/completions";
  std::string model;          // Http request field
  std::string credentialEnv;  // env var holding the bearer token; never logged
  int maxRetries = 3;
  int backoffMs = 100;        // doubled per retry
  std::string replayPath;     // Replay transcript (JSON lines)
};

struct SuiteEntry {
  Puzzle puzzle;
  GroundTruth truth;
};

struct RunRecord {
  std::string puzzleId;
  std::string condition;
  std::string adapter;
  int iteration = 0;
  std::string response;
  std::string parsedAnswer;
  bool correct = false;
  bool errored = false;
  std::string error;
  std::int64_t latencyMs = 0;

  std::string toJsonLine() const;
  static RunRecord fromJsonLine(const std::string& line);
};

struct EvalOptions {
  int iterations = 1;
  std::uint64_t seed = 0;
  int parallelism = 1;
  SpaceConfig space;
  ConditionConfig config = ConditionConfig::defaults();
  TokenVocabulary vocab;  // fresh dummy-word assignments per iteration
};

/// Deterministic normalization applied to both sides of the comparison:
/// trim, drop one trailing period, collapse inner whitespace, ASCII
/// case-fold.
std::string normalizeAnswer(const std::string& raw);

/// Fresh surface relabeling for one iteration: morpheme tokens (and
/// substitution answer words) get new dummy words or capitals per the
/// puzzle's width; unfamiliar operator tokens are redrawn within their
/// class; familiar operators, parentheses and revealed values stay. Blind:
/// uses only the puzzle file. Returns the applied token map.
Puzzle relabelPuzzle(const Puzzle& puzzle, int iteration, std::uint64_t seed,
                     const TokenVocabulary& vocab, const ConditionConfig& config,
                     std::map<std::string, std::string>* tokenMap);

/// Runs every (puzzle, adapter, iteration) cell exactly once; adapter
/// failures become errored records. Records come back sorted by
/// (puzzle, adapter, iteration) regardless of execution interleaving.
std::vector<RunRecord> runSuite(const std::vector<SuiteEntry>& suite,
                                const std::vector<AdapterConfig>& adapters,
                                const EvalOptions& options);

struct AggregateRow {
  std::string condition;
  std::string adapter;
  std::size_t n = 0;
  double accuracy = 0.0;
  double sem = 0.0;
  double deltaVsBaseline = 0.0;
};

/// Per-(condition, adapter) accuracy with SEM = sample sd / sqrt(n); empty
/// cells are absent rows. Deltas are against the named baseline condition
/// for the same adapter.
std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& records,
                                    const std::string& baselineCondition);

std::string aggregateCsv(const std::vector<AggregateRow>& rows);

struct PuzzleRow {
  std::string puzzleId;
  std::string condition;
  std::string adapter;
  std::size_t n = 0;
  double accuracy = 0.0;
};

std::vector<PuzzleRow> aggregateByPuzzle(const std::vector<RunRecord>& records);
std::string puzzleBreakdownCsv(const std::vector<PuzzleRow>& rows);

}  // namespace numgram
