#pragma once

#include "numgram/condition.hpp"
#include "numgram/puzzle.hpp"

namespace numgram {

/// Hand-built vigesimal showcase puzzle (values 31, 26, 50, query 52) whose
/// four condition renderings are the checked-in layout goldens. Its grammar
/// is richer than the canonical positional form (a sub-base product and a
/// bare interior addend), so it exercises the condition transformer rather
/// than the generator; the token valuation lives in the sidecar.
struct Showcase {
  NumeralSystem system;      // raw lexicon for rendering; not validate()-able
  std::vector<ExprPtr> equationExprs;
  std::vector<std::int64_t> values;
  ExprPtr queryExpr;
  std::int64_t answer = 0;
  OperatorStyle symbolStyle;  // unfamiliar-symbol operators
  OperatorStyle wordStyle;    // unfamiliar-word operators
};

Showcase makeShowcase();

/// The puzzle body (equation lines + query line) under one condition.
std::string showcaseBody(const Showcase& sc, Explicitness explicitness);

/// Blind puzzle + sidecar for one condition.
std::pair<Puzzle, GroundTruth> showcasePuzzle(const Showcase& sc, Explicitness explicitness);

}  // namespace numgram
