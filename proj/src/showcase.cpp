#include "numgram/showcase.hpp"

#include "numgram/error.hpp"

namespace numgram {

namespace {

ExprPtr atomOf(const NumeralSystem& sys, const std::string& surface) {
  const Morpheme* m = sys.bySurface(surface);
  std::int64_t value = m->role.value;
  if (m->role.kind == RoleKind::Power) {
    value = 1;
    for (std::int64_t i = 0; i < m->role.value; ++i) value *= sys.base;
  }
  return NumExpr::atom(*m, value);
}

}  // namespace

Showcase makeShowcase() {
  Showcase sc;
  NumeralSystem& sys = sc.system;
  sys.base = 20;
  sys.order = Order::MostSignificantFirst;
  sys.maxPower = 1;
  sys.omitUnitMultiplier = true;
  // Two words share the value five and two share the value two, the way a
  // sub-base-five vigesimal language reuses its small numerals inside
  // products. The struct is built raw; validate() would reject the
  // duplicates, which is exactly why this fixture is hand-authored.
  sys.lexicon = {
      {"ralvo", MorphemeRole::digit(1), false},   {"sunek", MorphemeRole::power(1), false},
      {"bilgam", MorphemeRole::digit(10), false}, {"dorvin", MorphemeRole::digit(5), false},
      {"fermol", MorphemeRole::digit(2), false},  {"hatrel", MorphemeRole::digit(5), false},
      {"weldru", MorphemeRole::digit(2), false},
  };
  sys.connectives[OpKind::Add] = "pel";

  auto a = [&](const std::string& s) { return atomOf(sys, s); };
  // (1 x 20) + 1 + 10 = 31 ; (1 x 20) + 1 + 5 = 26 ; (2 x 20) + (2 x 5) = 50
  sc.equationExprs = {
      NumExpr::add(NumExpr::add(NumExpr::mul(a("ralvo"), a("sunek")), a("ralvo")), a("bilgam")),
      NumExpr::add(NumExpr::add(NumExpr::mul(a("ralvo"), a("sunek")), a("ralvo")), a("dorvin")),
      NumExpr::add(NumExpr::mul(a("fermol"), a("sunek")), NumExpr::mul(a("fermol"), a("hatrel"))),
  };
  sc.values = {31, 26, 50};
  sc.queryExpr =
      NumExpr::add(NumExpr::add(NumExpr::mul(a("weldru"), a("sunek")), a("weldru")), a("bilgam"));
  sc.answer = 52;

  sc.symbolStyle.addSurface = "\xce\xb1";  // alpha
  sc.symbolStyle.mulSurface = "\xce\xb2";  // beta
  sc.symbolStyle.subSurface = "\xce\xb3";  // gamma
  sc.symbolStyle.parenthesize = true;

  sc.wordStyle.addSurface = "torbex";
  sc.wordStyle.mulSurface = "hilcad";
  sc.wordStyle.subSurface = "gaprun";
  sc.wordStyle.parenthesize = true;
  return sc;
}

namespace {

const OperatorStyle& styleOf(const Showcase& sc, Explicitness e) {
  static const OperatorStyle familiar = OperatorStyle::familiar();
  switch (e) {
    case Explicitness::ExplicitUnfamiliarSymbol: return sc.symbolStyle;
    case Explicitness::ExplicitUnfamiliarWord: return sc.wordStyle;
    default: return familiar;
  }
}

}  // namespace

std::string showcaseBody(const Showcase& sc, Explicitness explicitness) {
  Condition cond;
  cond.explicitness = explicitness;
  const OperatorStyle& style = styleOf(sc, explicitness);
  std::string out;
  for (std::size_t i = 0; i < sc.equationExprs.size(); ++i) {
    out += joinTokens(applyCondition(sc.equationExprs[i], sc.system, cond, style));
    out += " = " + std::to_string(sc.values[i]) + "\n";
  }
  out += joinTokens(applyCondition(sc.queryExpr, sc.system, cond, style));
  out += " = ??";
  return out;
}

std::pair<Puzzle, GroundTruth> showcasePuzzle(const Showcase& sc, Explicitness explicitness) {
  Condition cond;
  cond.explicitness = explicitness;
  const OperatorStyle& style = styleOf(sc, explicitness);
  Puzzle p;
  for (std::size_t i = 0; i < sc.equationExprs.size(); ++i)
    p.equations.push_back(Equation::withValue(
        applyCondition(sc.equationExprs[i], sc.system, cond, style), sc.values[i]));
  p.query = applyCondition(sc.queryExpr, sc.system, cond, style);
  p.condition = cond;
  p.seed = 2010;
  p.meta.id = std::string("showcase-") + explicitnessName(explicitness);
  p.meta.kind = "fixture";
  p.meta.language = "Vigesimal";
  p.meta.base = 20;
  p.meta.seed = 2010;
  if (explicitness != Explicitness::Implicit) {
    p.meta.operators[OpKind::Add] = style.addSurface;
    p.meta.operators[OpKind::Sub] = style.subSurface;
    p.meta.operators[OpKind::Mul] = style.mulSurface;
  }

  GroundTruth t;
  t.system = sc.system;
  t.answerValue = sc.answer;
  t.answerText = std::to_string(sc.answer);
  return {std::move(p), std::move(t)};
}

}  // namespace numgram
