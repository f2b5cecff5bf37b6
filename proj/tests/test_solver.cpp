#include <doctest.h>

#include <set>

#include "numgram/error.hpp"
#include "numgram/rng.hpp"
#include "numgram/solver.hpp"

using namespace numgram;

namespace {

Puzzle implicitPuzzle(std::vector<Equation> eqs, Tokens query) {
  Puzzle p;
  p.equations = std::move(eqs);
  p.query = std::move(query);
  p.meta.id = "test";
  p.meta.kind = "test";
  p.meta.language = "Test";
  return p;
}

std::vector<std::string> keysOf(const std::vector<Hypothesis>& hs) {
  std::vector<std::string> keys;
  for (const Hypothesis& h : hs) keys.push_back(h.canonicalKey());
  return keys;
}

void checkOracleEquivalence(const std::vector<Equation>& eqs, const SpaceConfig& space) {
  SolveStats stats;
  auto fast = solveConsistent(eqs, space, stats);
  auto slow = enumerateConsistent(eqs, space);
  CHECK(!stats.budgetExceeded);
  CHECK(keysOf(fast) == keysOf(slow));
}

SpaceConfig smallSpace() {
  SpaceConfig s;
  s.baseMax = 12;
  return s;
}

}  // namespace

TEST_CASE("single-token identity equation") {
  Puzzle p = implicitPuzzle({Equation::withValue({"X"}, 7)}, {"X"});
  SolveResult r = solve(p, smallSpace());
  CHECK(r.status == SolveStatus::Unique);
  REQUIRE(r.answerTexts.size() == 1);
  CHECK(r.answerTexts[0] == "7");
  CHECK(r.consistentCount > 1);  // many bases fit; they agree on the answer
  checkOracleEquivalence(p.equations, smallSpace());
}

TEST_CASE("underdetermined two-token equation is ambiguous") {
  Puzzle p = implicitPuzzle({Equation::withValue({"A", "B"}, 12)}, {"A"});
  SolveResult r = solve(p, smallSpace());
  CHECK(r.status == SolveStatus::Ambiguous);
  CHECK(r.answerTexts.size() >= 2);

  // cross-check the surviving answers against the reference enumeration
  auto all = enumerateConsistent(p.equations, smallSpace());
  auto key = all.front().mdlKey();
  for (const Hypothesis& h : all) key = std::min(key, h.mdlKey());
  std::set<std::int64_t> expect;
  for (const Hypothesis& h : all) {
    if (h.mdlKey() != key) continue;
    auto it = h.bindings.find("A");
    REQUIRE(it != h.bindings.end());
    if (it->second.kind == TokenBinding::Kind::Digit) expect.insert(it->second.value);
    else {
      std::int64_t v = 1;
      for (std::int64_t i = 0; i < it->second.value; ++i) v *= h.base;
      expect.insert(v);
    }
  }
  CHECK(std::set<std::int64_t>(r.answers.begin(), r.answers.end()) == expect);
  checkOracleEquivalence(p.equations, smallSpace());
}

TEST_CASE("inconsistent equations are unsatisfiable") {
  Puzzle p = implicitPuzzle({Equation::withValue({"A"}, 50)}, {"A"});
  SolveResult r = solve(p, smallSpace());
  CHECK(r.status == SolveStatus::Unsatisfiable);
  CHECK(enumerateConsistent(p.equations, smallSpace()).empty());
}

TEST_CASE("positional puzzle with pinned base and order") {
  // solos pin the digits, the combo pins base and order
  Puzzle p = implicitPuzzle({Equation::withValue({"A"}, 5), Equation::withValue({"B"}, 1),
                             Equation::withValue({"A", "B"}, 51)},
                            {"B", "A"});
  SolveResult r = solve(p, smallSpace());
  CHECK(r.status == SolveStatus::Unique);
  CHECK(r.answerTexts[0] == "15");
  checkOracleEquivalence(p.equations, smallSpace());
}

TEST_CASE("subtractive positional reading") {
  // 10*3 - 3 = 27 with a repeated symbol
  Puzzle p = implicitPuzzle({Equation::withValue({"A"}, 3), Equation::withValue({"B"}, 6),
                             Equation::withValue({"A", "A"}, 27),
                             Equation::withValue({"A", "B"}, 24)},
                            {"B", "A"});
  SolveResult r = solve(p, smallSpace());
  CHECK(r.status == SolveStatus::Unique);
  CHECK(r.answerTexts[0] == "57");  // 10*6 - 3
  checkOracleEquivalence(p.equations, smallSpace());
}

TEST_CASE("substitution control puzzle") {
  Puzzle p = implicitPuzzle({Equation::withText({"A"}, "gba"), Equation::withText({"B"}, "fip"),
                             Equation::withText({"A", "B"}, "gba fip")},
                            {"B", "A"});
  SolveResult r = solve(p, smallSpace());
  CHECK(r.status == SolveStatus::Unique);
  CHECK(r.answerTexts[0] == "fip gba");
  CHECK(r.answers.empty());  // no numeric reading
  checkOracleEquivalence(p.equations, smallSpace());
}

TEST_CASE("morphological puzzle with connective and power words") {
  // base 10, q = power word, c = add connective:
  //   2 q c 9 = 29, 5 q c 1 = 51, 7 q = 70
  Puzzle p = implicitPuzzle(
      {Equation::withValue({"two", "ten", "and", "nine"}, 29),
       Equation::withValue({"five", "ten", "and", "one"}, 51),
       Equation::withValue({"seven", "ten"}, 70),
       Equation::withValue({"nine"}, 9), Equation::withValue({"one"}, 1),
       Equation::withValue({"two"}, 2), Equation::withValue({"five"}, 5),
       Equation::withValue({"seven"}, 7)},
      {"nine", "ten", "and", "two"});
  SolveResult r = solve(p, smallSpace());
  CHECK(r.status == SolveStatus::Unique);
  CHECK(r.answerTexts[0] == "92");
  checkOracleEquivalence(p.equations, smallSpace());
}

TEST_CASE("explicit operators prune the search") {
  // same underlying system, implicit vs familiar
  Puzzle imp = implicitPuzzle(
      {Equation::withValue({"two", "ten", "nine"}, 29),
       Equation::withValue({"five", "ten", "one"}, 51),
       Equation::withValue({"nine"}, 9), Equation::withValue({"one"}, 1),
       Equation::withValue({"two"}, 2), Equation::withValue({"five"}, 5)},
      {"nine", "ten", "two"});

  Puzzle fam = imp;
  fam.condition.explicitness = Explicitness::ExplicitFamiliar;
  fam.meta.operators = {{OpKind::Add, "+"}, {OpKind::Sub, "-"}, {OpKind::Mul, "*"}};
  fam.equations = {
      Equation::withValue({"(", "two", "*", "ten", ")", "+", "nine"}, 29),
      Equation::withValue({"(", "five", "*", "ten", ")", "+", "one"}, 51),
      Equation::withValue({"nine"}, 9), Equation::withValue({"one"}, 1),
      Equation::withValue({"two"}, 2), Equation::withValue({"five"}, 5)};
  fam.query = {"(", "nine", "*", "ten", ")", "+", "two"};

  SolveResult ri = solve(imp, smallSpace());
  SolveResult rf = solve(fam, smallSpace());
  CHECK(ri.status == SolveStatus::Unique);
  CHECK(rf.status == SolveStatus::Unique);
  CHECK(ri.answerTexts[0] == "92");
  CHECK(rf.answerTexts[0] == "92");
  CHECK(rf.stats.nodesExpanded <= ri.stats.nodesExpanded);

  SpaceConfig exSpace = spaceForPuzzle(fam, smallSpace());
  checkOracleEquivalence(fam.equations, exSpace);
}

TEST_CASE("node budget surfaces as a status") {
  Puzzle p = implicitPuzzle({Equation::withValue({"A", "B", "C"}, 123),
                             Equation::withValue({"B", "C", "A"}, 231)},
                            {"A"});
  SpaceConfig tiny = smallSpace();
  tiny.nodeBudget = 5;
  SolveResult r = solve(p, tiny);
  CHECK(r.status == SolveStatus::ResourceBudgetExceeded);
  CHECK(r.stats.budgetExceeded);
}

TEST_CASE("empty equation set is rejected") {
  CHECK_THROWS_AS(enumerateConsistent({}, smallSpace()), Error);
  SolveStats stats;
  CHECK_THROWS_AS(solveConsistent({}, smallSpace(), stats), Error);
}

TEST_CASE("oracle equivalence across random small instances") {
  // a quick slice here; the acceptance suite runs the full 500
  Rng rng(99);
  SpaceConfig space = smallSpace();
  int done = 0;
  for (int trial = 0; trial < 200 && done < 40; ++trial) {
    const std::int64_t base = rng.nextInt(3, 10);
    const std::int64_t vA = rng.nextInt(1, base - 1);
    std::int64_t vB = rng.nextInt(1, base - 1);
    if (vA == vB) continue;
    std::vector<Equation> eqs{Equation::withValue({"A"}, vA), Equation::withValue({"B"}, vB),
                              Equation::withValue({"A", "B"}, base * vA + vB)};
    checkOracleEquivalence(eqs, space);
    ++done;
  }
  CHECK(done == 40);
}
