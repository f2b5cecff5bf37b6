#include <doctest.h>

#include <algorithm>
#include <set>

#include "numgram/error.hpp"
#include "numgram/grammar.hpp"

using namespace numgram;

namespace {

NumeralSystem vigesimal(std::int64_t t = 0, bool overtAdd = false) {
  SystemTemplate tmpl;
  tmpl.base = 20;
  tmpl.subtractiveThreshold = t;
  tmpl.overtAdd = overtAdd;
  return makeSystem(tmpl);
}

NumeralSystem decimal(std::int64_t t = 0) {
  SystemTemplate tmpl;
  tmpl.base = 10;
  tmpl.subtractiveThreshold = t;
  return makeSystem(tmpl);
}

// Test-only oracle: every AST whose surface equals the token string, found
// by splitting spans every possible way, filtered to canonical form via the
// render identity (t is canonical iff t == render(evaluate(t))). Independent
// of the production parser's control flow.
void preimageAsts(const Tokens& tokens, std::size_t lo, std::size_t hi, const NumeralSystem& sys,
                  std::vector<ExprPtr>& out) {
  if (lo >= hi) return;
  if (hi - lo == 1) {
    if (const Morpheme* m = sys.bySurface(tokens[lo])) {
      if (m->role.kind == RoleKind::Digit) out.push_back(NumExpr::atom(*m, m->role.value));
      else if (m->role.kind == RoleKind::Power) {
        std::int64_t v = 1;
        for (std::int64_t i = 0; i < m->role.value; ++i) v *= sys.base;
        out.push_back(NumExpr::atom(*m, v));
      } else if (m->role.kind == RoleKind::Zero) {
        out.push_back(NumExpr::atom(*m, 0));
      }
    }
    return;
  }
  auto combine = [&](NumExpr::Kind kind, std::size_t lmid, std::size_t rmid) {
    std::vector<ExprPtr> ls, rs;
    preimageAsts(tokens, lo, lmid, sys, ls);
    preimageAsts(tokens, rmid, hi, sys, rs);
    for (const ExprPtr& l : ls)
      for (const ExprPtr& r : rs) {
        if (kind == NumExpr::Kind::Add) out.push_back(NumExpr::add(l, r));
        if (kind == NumExpr::Kind::Mul) out.push_back(NumExpr::mul(l, r));
        if (kind == NumExpr::Kind::Sub && evaluate(l) > evaluate(r))
          out.push_back(NumExpr::sub(l, r));
      }
  };
  for (std::size_t mid = lo + 1; mid < hi; ++mid) {
    for (auto [op, kind] : std::initializer_list<std::pair<OpKind, NumExpr::Kind>>{
             {OpKind::Add, NumExpr::Kind::Add},
             {OpKind::Sub, NumExpr::Kind::Sub},
             {OpKind::Mul, NumExpr::Kind::Mul}}) {
      auto it = sys.connectives.find(op);
      if (it == sys.connectives.end()) {
        combine(kind, mid, mid);
      } else if (tokens[mid] == it->second && mid + 1 < hi) {
        combine(kind, mid, mid + 1);
      }
    }
  }
}

std::vector<ExprPtr> oracleParses(const Tokens& tokens, const NumeralSystem& sys) {
  Tokens ordered = tokens;
  if (sys.order == Order::LeastSignificantFirst) std::reverse(ordered.begin(), ordered.end());
  std::vector<ExprPtr> all;
  preimageAsts(ordered, 0, ordered.size(), sys, all);
  std::vector<ExprPtr> canonical;
  for (const ExprPtr& t : all) {
    std::int64_t v;
    try {
      v = evaluate(t);
    } catch (const Error&) {
      continue;
    }
    try {
      if (v >= 1 && v <= sys.maxValue() && structurallyEqual(t, render(v, sys)))
        canonical.push_back(t);
    } catch (const Error&) {
    }
  }
  return canonical;
}

}  // namespace

TEST_CASE("evaluate folds arithmetic") {
  NumeralSystem duo = makeSystem({12, Order::MostSignificantFirst, 3, 0, true, false, false});
  // 2 x 12 + 5 = 29
  ExprPtr birom = render(29, duo);
  CHECK(evaluate(birom) == 29);
  CHECK(exprToString(birom) == "(add (mul 2[db] 12[qa]) 5[de])");

  ExprPtr atom = render(7, decimal());
  CHECK(evaluate(atom) == 7);

  NumeralSystem dec1 = decimal(1);
  ExprPtr sub = render(29, dec1);  // 30 - 1
  CHECK(evaluate(sub) == 29);
  CHECK(sub->kind == NumExpr::Kind::Sub);

  ExprPtr bad = NumExpr::sub(render(5, decimal()), render(9, decimal()));
  CHECK_THROWS_AS(evaluate(bad), Error);
}

TEST_CASE("render shapes match the cross-linguistic patterns") {
  // vigesimal 29 = 20 + 9, unit multiplier omitted at the top term
  ExprPtr v29 = render(29, vigesimal());
  CHECK(v29->kind == NumExpr::Kind::Add);
  CHECK(v29->left->kind == NumExpr::Kind::Atom);
  CHECK(v29->left->value == 20);
  CHECK(v29->right->value == 9);

  // decimal with threshold 1: 29 = 30 - 1
  ExprPtr u29 = render(29, decimal(1));
  REQUIRE(u29->kind == NumExpr::Kind::Sub);
  CHECK(u29->left->kind == NumExpr::Kind::Mul);
  CHECK(evaluate(u29->left) == 30);
  CHECK(u29->right->value == 1);

  // single morpheme atom
  ExprPtr five = render(5, vigesimal());
  CHECK(five->kind == NumExpr::Kind::Atom);
  CHECK(five->value == 5);

  // duodecimal 29 = 2 x 12 + 5
  NumeralSystem duo = makeSystem({12, Order::MostSignificantFirst, 3, 0, true, false, false});
  ExprPtr b29 = render(29, duo);
  REQUIRE(b29->kind == NumExpr::Kind::Add);
  CHECK(b29->left->kind == NumExpr::Kind::Mul);
}

TEST_CASE("render rejects out-of-range and zero without a zero morpheme") {
  NumeralSystem dec = decimal();
  CHECK_THROWS_AS(render(0, dec), Error);
  CHECK_THROWS_AS(render(-3, dec), Error);
  CHECK_THROWS_AS(render(dec.maxValue() + 1, dec), Error);
  // subtractive carry past the top power
  NumeralSystem dec5 = decimal(5);
  CHECK_THROWS_AS(render(dec5.maxValue(), dec5), Error);  // 9999 -> 10000 - 1
}

TEST_CASE("surface emits overt connectives and honors order") {
  NumeralSystem sys = vigesimal(0, /*overtAdd=*/true);
  ExprPtr e = render(30, sys);  // 20 + 10
  Tokens msf = surface(e, sys);
  REQUIRE(msf.size() == 3);
  CHECK(msf[1] == "ca");

  NumeralSystem lsf = sys;
  lsf.order = Order::LeastSignificantFirst;
  Tokens rev = surface(e, lsf);
  Tokens expect = msf;
  std::reverse(expect.begin(), expect.end());
  CHECK(rev == expect);
}

TEST_CASE("parse matches the independent preimage oracle") {
  for (const NumeralSystem& sys : {vigesimal(0, true), vigesimal(9), decimal(1), decimal(5)}) {
    for (std::int64_t n : {1, 5, 19, 20, 29, 30, 59, 100, 399, 401, 493}) {
      if (n >= sys.maxValue()) continue;
      ExprPtr e;
      try {
        e = render(n, sys);
      } catch (const Error&) {
        continue;  // subtractive carry at the top of the range
      }
      Tokens toks = surface(e, sys);
      auto mine = parseAll(toks, sys);
      auto oracle = oracleParses(toks, sys);
      REQUIRE(oracle.size() == 1);
      REQUIRE(mine.size() == 1);
      CHECK(structurallyEqual(mine[0], oracle[0]));
      CHECK(structurallyEqual(mine[0], e));
    }
  }
}

TEST_CASE("parse errors") {
  NumeralSystem dec = decimal();
  CHECK_THROWS_AS(parseAll({}, dec), Error);
  CHECK_THROWS_AS(parseAll({"zork"}, dec), Error);
  // two bare digits never parse
  CHECK(parseAll({"db", "dc"}, dec).empty());
  CHECK_THROWS_AS(parseUnique({"db", "dc"}, dec), Error);
}

TEST_CASE("round trip across a small grid") {
  for (std::int64_t base : {4, 7, 10, 13, 20}) {
    for (Order order : {Order::MostSignificantFirst, Order::LeastSignificantFirst}) {
      for (std::int64_t t : {std::int64_t{0}, base / 2}) {
        SystemTemplate tmpl;
        tmpl.base = base;
        tmpl.order = order;
        tmpl.subtractiveThreshold = t;
        NumeralSystem sys = makeSystem(tmpl);
        const std::int64_t hi = std::min<std::int64_t>(2 * base * base, 1500);
        for (std::int64_t n = 1; n <= hi; ++n) {
          ExprPtr e = render(n, sys);
          auto parses = parseAll(surface(e, sys), sys);
          REQUIRE(parses.size() == 1);
          CHECK(structurallyEqual(parses[0], e));
          CHECK(evaluate(parses[0]) == n);
        }
      }
    }
  }
}

TEST_CASE("subtractive threshold changes the tree, never the value") {
  NumeralSystem plain = decimal(0);
  NumeralSystem subby = decimal(5);
  for (std::int64_t n = 1; n <= 500; ++n) {
    CHECK(evaluate(render(n, plain)) == n);
    CHECK(evaluate(render(n, subby)) == n);
  }
  // 25 -> 30 - 5 under threshold 5, plain 2x10+5 otherwise
  CHECK(render(25, subby)->kind == NumExpr::Kind::Sub);
  CHECK(render(25, plain)->kind == NumExpr::Kind::Add);
}

TEST_CASE("no two integers share a surface") {
  for (const NumeralSystem& sys : {vigesimal(0, true), decimal(3)}) {
    std::set<std::string> seen;
    const std::int64_t hi = 2 * sys.base * sys.base;
    for (std::int64_t n = 1; n <= hi; ++n)
      CHECK(seen.insert(joinTokens(surface(render(n, sys), sys))).second);
  }
}

TEST_CASE("system validation and json schema") {
  NumeralSystem sys = vigesimal(5, true);
  NumeralSystem back = NumeralSystem::fromJson(sys.toJson());
  CHECK(back.toJson() == sys.toJson());
  CHECK(back.base == 20);
  CHECK(back.subtractiveThreshold == 5);
  CHECK(back.connectives.at(OpKind::Add) == "ca");

  // the schema uses exactly these field names
  const std::string j = sys.toJson();
  for (const char* field : {"\"base\"", "\"order\"", "\"lexicon\"", "\"subtractiveThreshold\"",
                            "\"connectives\"", "\"maxPower\"", "\"omitUnitMultiplier\""})
    CHECK(j.find(field) != std::string::npos);

  NumeralSystem broken = sys;
  broken.lexicon.pop_back();  // drops a power morpheme
  CHECK_THROWS_AS(broken.validate(), Error);

  NumeralSystem dup = sys;
  dup.lexicon[1].surface = dup.lexicon[0].surface;
  CHECK_THROWS_AS(dup.validate(), Error);

  NumeralSystem badT = sys;
  badT.subtractiveThreshold = 20;
  CHECK_THROWS_AS(badT.validate(), Error);

  NumeralSystem noSubWord = sys;
  noSubWord.connectives.erase(OpKind::Sub);
  CHECK_THROWS_AS(noSubWord.validate(), Error);

  // digit characters only on single-character glyph morphemes
  Morpheme glyph{"5", MorphemeRole::digit(5), true};
  validateMorpheme(glyph);
  Morpheme badGlyph{"51", MorphemeRole::digit(5), true};
  CHECK_THROWS_AS(validateMorpheme(badGlyph), Error);
  Morpheme sneaky{"a5", MorphemeRole::digit(5), false};
  CHECK_THROWS_AS(validateMorpheme(sneaky), Error);
}

TEST_CASE("zero renders only with a zero morpheme") {
  NumeralSystem sys = decimal();
  sys.lexicon.push_back({"nil", MorphemeRole::zero(), false});
  sys.validate();
  ExprPtr z = render(0, sys);
  CHECK(evaluate(z) == 0);
  auto parses = parseAll(surface(z, sys), sys);
  REQUIRE(parses.size() == 1);
  CHECK(evaluate(parses[0]) == 0);
}

TEST_CASE("omitted unit multiplier only at the top term") {
  NumeralSystem omit = decimal();
  ExprPtr e110 = render(110, omit);  // qb + (da x qa)
  REQUIRE(e110->kind == NumExpr::Kind::Add);
  CHECK(e110->left->kind == NumExpr::Kind::Atom);   // bare hundred
  CHECK(e110->right->kind == NumExpr::Kind::Mul);   // 1 x 10 keeps its digit

  NumeralSystem keep = omit;
  keep.omitUnitMultiplier = false;
  ExprPtr k110 = render(110, keep);
  CHECK(k110->left->kind == NumExpr::Kind::Mul);
  auto parses = parseAll(surface(k110, keep), keep);
  REQUIRE(parses.size() == 1);
  CHECK(structurallyEqual(parses[0], k110));
}
