#include <doctest.h>

#include <fstream>

#include "numgram/error.hpp"
#include "numgram/puzzle.hpp"
#include "numgram/showcase.hpp"

using namespace numgram;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

NumeralSystem testSystem(Order order = Order::MostSignificantFirst) {
  SystemTemplate tmpl;
  tmpl.base = 10;
  tmpl.order = order;
  tmpl.subtractiveThreshold = 2;
  tmpl.overtAdd = true;
  return makeSystem(tmpl);
}

}  // namespace

TEST_CASE("operator styles validate") {
  OperatorStyle fam = OperatorStyle::familiar();
  fam.validate();
  CHECK(fam.addSurface == "+");
  CHECK(fam.subSurface == "-");
  CHECK(OperatorStyle::familiar(true).mulSurface == "*");
  CHECK(OperatorStyle::familiar(false, true).subSurface == "\xe2\x88\x92");

  OperatorStyle broken = fam;
  broken.mulSurface = "+";
  CHECK_THROWS_AS(broken.validate(), Error);
}

TEST_CASE("condition combinations validate") {
  Condition ok;
  ok.contextHint = ContextHint::ImplicitOps;
  ok.explicitness = Explicitness::Implicit;
  ok.validate();
  ok.explicitness = Explicitness::ExplicitFamiliar;
  CHECK_THROWS_AS(ok.validate(), Error);
}

TEST_CASE("explicit rendering replaces connectives and parenthesizes products") {
  NumeralSystem sys = testSystem();
  ExprPtr e = render(234, sys);  // (2 x 100) + (3 x 10) + 4
  Condition fam;
  fam.explicitness = Explicitness::ExplicitFamiliar;
  Tokens out = applyCondition(e, sys, fam, OperatorStyle::familiar());
  CHECK(joinTokens(out) == "( db \xc3\x97 qb ) + ( dc \xc3\x97 qa ) + dd");

  Condition imp;
  Tokens implicit = applyCondition(e, sys, imp, OperatorStyle::familiar());
  CHECK(joinTokens(implicit) == "db qb ca dc qa ca dd");

  // strip law: explicit minus operators equals implicit minus connectives
  CHECK(stripOperators(out, OperatorStyle::familiar()) == stripConnectives(implicit, sys));
}

TEST_CASE("condition outputs parse back to the same tree") {
  for (Order order : {Order::MostSignificantFirst, Order::LeastSignificantFirst}) {
    NumeralSystem sys = testSystem(order);
    for (std::int64_t n : {7, 19, 28, 70, 234, 508, 999}) {
      ExprPtr e = render(n, sys);
      for (Explicitness ex :
           {Explicitness::Implicit, Explicitness::ExplicitFamiliar,
            Explicitness::ExplicitUnfamiliarSymbol, Explicitness::ExplicitUnfamiliarWord}) {
        Condition cond;
        cond.explicitness = ex;
        OperatorStyle style = OperatorStyle::familiar();
        if (ex == Explicitness::ExplicitUnfamiliarSymbol) style = {"\xce\xb1", "\xce\xb3", "\xce\xb2", true};
        if (ex == Explicitness::ExplicitUnfamiliarWord) style = {"torbex", "gaprun", "hilcad", true};
        Tokens out = applyCondition(e, sys, cond, style);
        ExprPtr back = parseConditioned(out, sys, cond, style);
        CHECK(structurallyEqual(back, e));
        CHECK(evaluate(back) == n);
      }
    }
  }
}

TEST_CASE("subtractive explicit rendering uses the minus surface") {
  NumeralSystem sys = testSystem();
  ExprPtr e = render(29, sys);  // 30 - 1 under threshold 2
  REQUIRE(e->kind == NumExpr::Kind::Sub);
  Condition fam;
  fam.explicitness = Explicitness::ExplicitFamiliar;
  Tokens out = applyCondition(e, sys, fam, OperatorStyle::familiar());
  CHECK(joinTokens(out) == "( dc \xc3\x97 qa ) - da");
  CHECK(structurallyEqual(parseConditioned(out, sys, fam, OperatorStyle::familiar()), e));
}

TEST_CASE("prompt decoration") {
  ConditionConfig config = ConditionConfig::defaults();
  Condition cond;
  PromptMeta meta;
  meta.language = "Vigesimal";
  meta.base = 20;

  SUBCASE("neutral") {
    std::string p = decoratePrompt("BODY", cond, meta, config);
    CHECK(p ==
          "Here is a puzzle. Can you solve it? Please output only the answer (in place of the "
          "?\?) and nothing else!\n\nBODY");
  }
  SUBCASE("base hint") {
    cond.contextHint = ContextHint::Base;
    std::string p = decoratePrompt("BODY", cond, meta, config);
    CHECK(p.find("a base-20 numeral system") != std::string::npos);
  }
  SUBCASE("language hint") {
    cond.contextHint = ContextHint::Language;
    std::string p = decoratePrompt("BODY", cond, meta, config);
    CHECK(p.find("in the Vigesimal language") != std::string::npos);
  }
  SUBCASE("implicit-ops hint") {
    cond.contextHint = ContextHint::ImplicitOps;
    std::string p = decoratePrompt("BODY", cond, meta, config);
    CHECK(p.find("twenty-nine = 20 + 9") != std::string::npos);
  }
  SUBCASE("missing metadata") {
    cond.contextHint = ContextHint::Language;
    PromptMeta none;
    CHECK_THROWS_AS(decoratePrompt("BODY", cond, none, config), Error);
  }
}

TEST_CASE("config file round-trips the built-in defaults") {
  ConditionConfig fromFile = ConditionConfig::fromJsonFile(std::string(DATA_DIR) + "/condition_config.json");
  ConditionConfig def = ConditionConfig::defaults();
  CHECK(fromFile.toJson() == def.toJson());
}

TEST_CASE("showcase layouts match the checked-in goldens") {
  Showcase sc = makeShowcase();
  CHECK(evaluate(sc.equationExprs[0]) == 31);
  CHECK(evaluate(sc.equationExprs[1]) == 26);
  CHECK(evaluate(sc.equationExprs[2]) == 50);
  CHECK(evaluate(sc.queryExpr) == 52);

  const std::pair<Explicitness, std::string> files[] = {
      {Explicitness::Implicit, "table_layout_implicit.txt"},
      {Explicitness::ExplicitFamiliar, "table_layout_familiar.txt"},
      {Explicitness::ExplicitUnfamiliarSymbol, "table_layout_unfamiliar_symbol.txt"},
      {Explicitness::ExplicitUnfamiliarWord, "table_layout_unfamiliar_word.txt"},
  };
  for (const auto& [ex, file] : files) {
    const std::string golden = slurp(std::string(DATA_DIR) + "/goldens/" + file);
    CHECK(showcaseBody(sc, ex) + "\n" == golden);
  }
}

TEST_CASE("showcase strip law") {
  Showcase sc = makeShowcase();
  Condition fam;
  fam.explicitness = Explicitness::ExplicitFamiliar;
  Condition imp;
  for (std::size_t i = 0; i < sc.equationExprs.size(); ++i) {
    Tokens ex = applyCondition(sc.equationExprs[i], sc.system, fam, OperatorStyle::familiar());
    Tokens im = applyCondition(sc.equationExprs[i], sc.system, imp, OperatorStyle::familiar());
    CHECK(stripOperators(ex, OperatorStyle::familiar()) == stripConnectives(im, sc.system));
  }
}
