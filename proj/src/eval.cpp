#include "numgram/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "numgram/error.hpp"

namespace numgram {

using nlohmann::json;

std::string normalizeAnswer(const std::string& raw) {
  std::string s = raw;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  std::string out;
  bool pendingSpace = false;
  for (unsigned char c : s) {
    if (std::isspace(c)) {
      if (!out.empty()) pendingSpace = true;
      continue;
    }
    if (pendingSpace) {
      out += ' ';
      pendingSpace = false;
    }
    out += static_cast<char>(std::tolower(c));
  }
  return out;
}

std::string RunRecord::toJsonLine() const {
  json j = {{"puzzle", puzzleId},   {"condition", condition}, {"adapter", adapter},
            {"iteration", iteration}, {"response", response},   {"parsedAnswer", parsedAnswer},
            {"correct", correct},   {"errored", errored},     {"error", error},
            {"latencyMs", latencyMs}};
  return j.dump();
}

RunRecord RunRecord::fromJsonLine(const std::string& line) {
  RunRecord r;
  try {
    json j = json::parse(line);
    r.puzzleId = j.at("puzzle").get<std::string>();
    r.condition = j.at("condition").get<std::string>();
    r.adapter = j.at("adapter").get<std::string>();
    r.iteration = j.at("iteration").get<int>();
    r.response = j.at("response").get<std::string>();
    r.parsedAnswer = j.at("parsedAnswer").get<std::string>();
    r.correct = j.at("correct").get<bool>();
    r.errored = j.at("errored").get<bool>();
    r.error = j.at("error").get<std::string>();
    r.latencyMs = j.at("latencyMs").get<std::int64_t>();
  } catch (const json::exception& e) {
    raise(Errc::IoFailure, std::string("bad record line: ") + e.what());
  }
  return r;
}

// ---------------------------------------------------------------------------
// Iteration relabeling
// ---------------------------------------------------------------------------

Puzzle relabelPuzzle(const Puzzle& puzzle, int iteration, std::uint64_t seed,
                     const TokenVocabulary& vocab, const ConditionConfig& config,
                     std::map<std::string, std::string>* tokenMap) {
  Rng rng(deriveSeed(seed, puzzle.meta.id + "#iter" + std::to_string(iteration)));

  std::set<std::string> operatorTokens;
  for (const auto& [op, word] : puzzle.meta.operators) operatorTokens.insert(word);

  // Morpheme-class tokens in stable first-appearance order.
  std::vector<std::string> morphs;
  std::set<std::string> seen;
  auto collect = [&](const std::string& t) {
    if (t == "(" || t == ")" || t == "??") return;
    if (operatorTokens.count(t)) return;
    if (seen.insert(t).second) morphs.push_back(t);
  };
  for (const Equation& eq : puzzle.equations)
    for (const std::string& t : eq.tokens) collect(t);
  for (const std::string& t : puzzle.query) collect(t);
  std::vector<std::string> answerWords;
  for (const Equation& eq : puzzle.equations)
    if (eq.text)
      for (const std::string& w : splitTokens(*eq.text)) {
        if (seen.insert(w).second) answerWords.push_back(w);
      }

  std::map<std::string, std::string> map;
  std::set<std::string> used;
  if (puzzle.condition.variableWidth == VariableWidth::SingleCharacter) {
    std::vector<std::string> capitals;
    for (char c = 'A'; c <= 'Z'; ++c) capitals.emplace_back(1, c);
    if (morphs.size() > capitals.size())
      raise(Errc::ConstraintUnsatisfiable, "too many tokens for single-character relabeling");
    rng.shuffle(capitals);
    for (std::size_t i = 0; i < morphs.size(); ++i) {
      map[morphs[i]] = capitals[i];
      used.insert(capitals[i]);
    }
  } else {
    for (const std::string& m : morphs) {
      std::string w;
      do {
        w = dummyWord(vocab, rng, static_cast<int>(rng.nextInt(2, 3)));
      } while (!used.insert(w).second);
      map[m] = w;
    }
  }
  // Substitution answer words are multi-character dummy words in any width.
  for (const std::string& m : answerWords) {
    std::string w;
    do {
      w = dummyWord(vocab, rng, static_cast<int>(rng.nextInt(2, 3)));
    } while (!used.insert(w).second);
    map[m] = w;
  }

  // Unfamiliar operators are redrawn within their class; familiar symbols
  // stay recognizable.
  std::map<OpKind, std::string> newOps = puzzle.meta.operators;
  if (puzzle.condition.explicitness == Explicitness::ExplicitUnfamiliarSymbol) {
    std::vector<std::string> pool = config.operatorSymbols;
    rng.shuffle(pool);
    std::size_t i = 0;
    for (auto& [op, word] : newOps) {
      map[word] = pool[i];
      word = pool[i++];
    }
  } else if (puzzle.condition.explicitness == Explicitness::ExplicitUnfamiliarWord) {
    for (auto& [op, word] : newOps) {
      std::string w;
      do {
        w = dummyWord(vocab, rng, static_cast<int>(rng.nextInt(2, 3)));
      } while (!used.insert(w).second);
      map[word] = w;
      word = w;
    }
  }

  auto mapToken = [&](const std::string& t) {
    auto it = map.find(t);
    return it == map.end() ? t : it->second;
  };

  Puzzle out = puzzle;
  out.meta.operators = newOps;
  for (Equation& eq : out.equations) {
    for (std::string& t : eq.tokens) t = mapToken(t);
    if (eq.text) {
      Tokens words = splitTokens(*eq.text);
      for (std::string& w : words) w = mapToken(w);
      eq.text = joinTokens(words);
    }
  }
  for (std::string& t : out.query) t = mapToken(t);
  if (tokenMap) *tokenMap = map;
  return out;
}

// ---------------------------------------------------------------------------
// Adapters
// ---------------------------------------------------------------------------

namespace {

struct AdapterOutcome {
  std::string response;
  bool errored = false;
  std::string error;
};

AdapterOutcome runInternal(const Puzzle& puzzle, const SpaceConfig& space) {
  try {
    SolveResult r = solve(puzzle, space);
    if (r.status == SolveStatus::Unique) return {r.answerTexts[0], false, ""};
    if (r.status == SolveStatus::ResourceBudgetExceeded)
      return {"", true, "resource budget exceeded"};
    return {"", false, statusName(r.status)};
  } catch (const Error& e) {
    return {"", true, e.what()};
  }
}

AdapterOutcome runHttp(const AdapterConfig& cfg, const std::string& prompt) {
  std::string token;
  if (!cfg.credentialEnv.empty()) {
    const char* v = std::getenv(cfg.credentialEnv.c_str());
    if (v) token = v;
  }
  json body = {{"model", cfg.model},
               {"messages", json::array({json{{"role", "user"}, {"content", prompt}}})}};
  std::string lastError = "unreachable";
  for (int attempt = 0; attempt <= cfg.maxRetries; ++attempt) {
    if (attempt > 0)
      std::this_thread::sleep_for(std::chrono::milliseconds(cfg.backoffMs << (attempt - 1)));
    httplib::Client client(cfg.endpoint);
    client.set_connection_timeout(5, 0);
    client.set_read_timeout(30, 0);
    httplib::Headers headers;
    if (!token.empty()) headers.emplace("Authorization", "Bearer " + token);
    auto res = client.Post(cfg.path, headers, body.dump(), "application/json");
    if (!res) {
      lastError = "no response";
      continue;
    }
    if (res->status != 200) {
      lastError = "status " + std::to_string(res->status);
      continue;
    }
    try {
      json reply = json::parse(res->body);
      return {reply.at("choices").at(0).at("message").at("content").get<std::string>(), false, ""};
    } catch (const json::exception& e) {
      lastError = std::string("bad reply: ") + e.what();
    }
  }
  return {"", true, lastError};
}

class ReplayBook {
 public:
  explicit ReplayBook(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::IoFailure, "cannot open replay file '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      try {
        json j = json::parse(line);
        entries_[key(j.at("puzzle").get<std::string>(), j.at("iteration").get<int>())] =
            j.at("response").get<std::string>();
      } catch (const json::exception& e) {
        raise(Errc::IoFailure, std::string("bad replay line: ") + e.what());
      }
    }
  }

  AdapterOutcome lookup(const std::string& puzzleId, int iteration) const {
    auto it = entries_.find(key(puzzleId, iteration));
    if (it == entries_.end()) return {"", true, "no replay entry"};
    return {it->second, false, ""};
  }

 private:
  static std::string key(const std::string& id, int iter) {
    return id + "#" + std::to_string(iter);
  }
  std::map<std::string, std::string> entries_;
};

}  // namespace

std::vector<RunRecord> runSuite(const std::vector<SuiteEntry>& suite,
                                const std::vector<AdapterConfig>& adapters,
                                const EvalOptions& options) {
  std::vector<std::unique_ptr<ReplayBook>> replays(adapters.size());
  for (std::size_t a = 0; a < adapters.size(); ++a)
    if (adapters[a].kind == AdapterConfig::Kind::Replay)
      replays[a] = std::make_unique<ReplayBook>(adapters[a].replayPath);

  struct Task {
    std::size_t puzzleIndex;
    std::size_t adapterIndex;
    int iteration;
  };
  std::vector<Task> tasks;
  for (std::size_t p = 0; p < suite.size(); ++p)
    for (std::size_t a = 0; a < adapters.size(); ++a)
      for (int i = 0; i < options.iterations; ++i) tasks.push_back({p, a, i});

  auto runTask = [&](const Task& task) {
    const SuiteEntry& entry = suite[task.puzzleIndex];
    const AdapterConfig& adapter = adapters[task.adapterIndex];

    std::map<std::string, std::string> tokenMap;
    Puzzle relabeled = relabelPuzzle(entry.puzzle, task.iteration, options.seed, options.vocab,
                                     options.config, &tokenMap);

    // Ground truth is consulted only here, for scoring.
    Tokens expectedWords = splitTokens(entry.truth.answerText);
    for (std::string& w : expectedWords) {
      auto it = tokenMap.find(w);
      if (it != tokenMap.end()) w = it->second;
    }
    const std::string expected = joinTokens(expectedWords);

    const auto start = std::chrono::steady_clock::now();
    AdapterOutcome outcome;
    switch (adapter.kind) {
      case AdapterConfig::Kind::Internal:
        outcome = runInternal(relabeled, options.space);
        break;
      case AdapterConfig::Kind::Http:
        outcome = runHttp(adapter, relabeled.promptText(options.config));
        break;
      case AdapterConfig::Kind::Replay:
        outcome = replays[task.adapterIndex]->lookup(entry.puzzle.meta.id, task.iteration);
        break;
    }
    const auto stop = std::chrono::steady_clock::now();

    RunRecord r;
    r.puzzleId = entry.puzzle.meta.id;
    r.condition = explicitnessName(entry.puzzle.condition.explicitness);
    r.adapter = adapter.name;
    r.iteration = task.iteration;
    r.response = outcome.response;
    r.parsedAnswer = normalizeAnswer(outcome.response);
    r.errored = outcome.errored;
    r.error = outcome.error;
    r.correct = !outcome.errored && !r.parsedAnswer.empty() &&
                r.parsedAnswer == normalizeAnswer(expected);
    r.latencyMs =
        std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
    return r;
  };

  std::vector<RunRecord> records(tasks.size());
  const int workers = std::max(1, options.parallelism);
  if (workers == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) records[i] = runTask(tasks[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= tasks.size()) return;
          records[i] = runTask(tasks[i]);
        }
      });
    for (std::thread& t : pool) t.join();
  }

  std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
    return std::tie(a.puzzleId, a.adapter, a.iteration) <
           std::tie(b.puzzleId, b.adapter, b.iteration);
  });
  return records;
}

// ---------------------------------------------------------------------------
// Aggregation
// ---------------------------------------------------------------------------

std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& records,
                                    const std::string& baselineCondition) {
  if (records.empty()) raise(Errc::EmptyInput, "no records");
  std::map<std::pair<std::string, std::string>, std::vector<double>> cells;
  for (const RunRecord& r : records)
    cells[{r.condition, r.adapter}].push_back(r.correct ? 1.0 : 0.0);

  std::map<std::string, double> baselineAcc;
  for (const auto& [key, xs] : cells) {
    if (key.first != baselineCondition) continue;
    double mean = 0;
    for (double x : xs) mean += x;
    baselineAcc[key.second] = mean / static_cast<double>(xs.size());
  }

  std::vector<AggregateRow> rows;
  for (const auto& [key, xs] : cells) {
    AggregateRow row;
    row.condition = key.first;
    row.adapter = key.second;
    row.n = xs.size();
    double mean = 0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    row.accuracy = mean;
    if (xs.size() >= 2) {
      double ss = 0;
      for (double x : xs) ss += (x - mean) * (x - mean);
      const double sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
      row.sem = sd / std::sqrt(static_cast<double>(xs.size()));
    }
    auto it = baselineAcc.find(row.adapter);
    row.deltaVsBaseline = it == baselineAcc.end() ? 0.0 : mean - it->second;
    rows.push_back(row);
  }
  return rows;
}

namespace {

std::string formatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string aggregateCsv(const std::vector<AggregateRow>& rows) {
  std::string out = "condition,adapter,n,accuracy,sem,delta_vs_baseline\n";
  for (const AggregateRow& r : rows) {
    out += r.condition + "," + r.adapter + "," + std::to_string(r.n) + "," +
           formatDouble(r.accuracy) + "," + formatDouble(r.sem) + "," +
           formatDouble(r.deltaVsBaseline) + "\n";
  }
  return out;
}

std::vector<PuzzleRow> aggregateByPuzzle(const std::vector<RunRecord>& records) {
  std::map<std::tuple<std::string, std::string, std::string>, std::pair<std::size_t, std::size_t>>
      cells;  // -> (n, correct)
  for (const RunRecord& r : records) {
    auto& cell = cells[{r.puzzleId, r.condition, r.adapter}];
    ++cell.first;
    if (r.correct) ++cell.second;
  }
  std::vector<PuzzleRow> rows;
  for (const auto& [key, cell] : cells) {
    PuzzleRow row;
    row.puzzleId = std::get<0>(key);
    row.condition = std::get<1>(key);
    row.adapter = std::get<2>(key);
    row.n = cell.first;
    row.accuracy = static_cast<double>(cell.second) / static_cast<double>(cell.first);
    rows.push_back(row);
  }
  return rows;
}

std::string puzzleBreakdownCsv(const std::vector<PuzzleRow>& rows) {
  std::string out = "puzzle,condition,adapter,n,accuracy\n";
  for (const PuzzleRow& r : rows)
    out += r.puzzleId + "," + r.condition + "," + r.adapter + "," + std::to_string(r.n) + "," +
           formatDouble(r.accuracy) + "\n";
  return out;
}

}  // namespace numgram
