#include "numgram/condition.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "numgram/error.hpp"

namespace numgram {

using nlohmann::json;

const char* explicitnessName(Explicitness e) {
  switch (e) {
    case Explicitness::Implicit: return "implicit";
    case Explicitness::ExplicitFamiliar: return "familiar";
    case Explicitness::ExplicitUnfamiliarSymbol: return "unfamiliar-symbol";
    case Explicitness::ExplicitUnfamiliarWord: return "unfamiliar-word";
  }
  return "?";
}

Explicitness explicitnessFromName(const std::string& name) {
  if (name == "implicit") return Explicitness::Implicit;
  if (name == "familiar") return Explicitness::ExplicitFamiliar;
  if (name == "unfamiliar-symbol") return Explicitness::ExplicitUnfamiliarSymbol;
  if (name == "unfamiliar-word") return Explicitness::ExplicitUnfamiliarWord;
  raise(Errc::InvalidCondition, "unknown explicitness '" + name + "'");
}

const char* widthName(VariableWidth w) {
  return w == VariableWidth::SingleCharacter ? "single" : "multi";
}

VariableWidth widthFromName(const std::string& name) {
  if (name == "single") return VariableWidth::SingleCharacter;
  if (name == "multi") return VariableWidth::MultiCharacter;
  raise(Errc::InvalidCondition, "unknown width '" + name + "'");
}

const char* hintName(ContextHint h) {
  switch (h) {
    case ContextHint::None: return "none";
    case ContextHint::Language: return "language";
    case ContextHint::Base: return "base";
    case ContextHint::ImplicitOps: return "implicit-ops";
  }
  return "?";
}

ContextHint hintFromName(const std::string& name) {
  if (name == "none") return ContextHint::None;
  if (name == "language") return ContextHint::Language;
  if (name == "base") return ContextHint::Base;
  if (name == "implicit-ops") return ContextHint::ImplicitOps;
  raise(Errc::InvalidCondition, "unknown hint '" + name + "'");
}

void Condition::validate() const {
  if (contextHint == ContextHint::ImplicitOps && explicitness != Explicitness::Implicit)
    raise(Errc::InvalidCondition, "implicit-ops hint only combines with the implicit condition");
}

OperatorStyle OperatorStyle::familiar(bool asciiMul, bool unicodeMinus) {
  OperatorStyle s;
  s.addSurface = "+";
  s.subSurface = unicodeMinus ? "\xe2\x88\x92" : "-";
  s.mulSurface = asciiMul ? "*" : "\xc3\x97";
  return s;
}

void OperatorStyle::validate() const {
  if (addSurface.empty() || subSurface.empty() || mulSurface.empty())
    raise(Errc::MissingOperatorSurface, "operator surface is empty");
  if (addSurface == subSurface || addSurface == mulSurface || subSurface == mulSurface)
    raise(Errc::InvalidCondition, "operator surfaces must be pairwise distinct");
}

const std::string& OperatorStyle::surfaceFor(OpKind op) const {
  switch (op) {
    case OpKind::Add: return addSurface;
    case OpKind::Sub: return subSurface;
    case OpKind::Mul: return mulSurface;
  }
  return addSurface;
}

ConditionConfig ConditionConfig::defaults() {
  ConditionConfig c;
  c.neutralOpening = "Here is a puzzle.";
  c.languageOpening = "Here is a puzzle based on numbers in the {language} language.";
  c.baseOpening =
      "Here is a puzzle based on numbers in a language that uses a base-{n} numeral system.";
  c.implicitOpsOpening =
      "Here is a puzzle based on numbers in a language. In this language, numbers may be "
      "constructed through implicit operations like addition (twenty-nine = 20 + 9) or "
      "multiplication (five hundred = 5 \xc3\x97 100).";
  c.question = "Can you solve it?";
  c.answerInstruction = "Please output only the answer (in place of the ?\?) and nothing else!";
  c.operatorSymbols = {"\xce\xb1", "\xce\xb2", "\xce\xb3", "\xce\xb4",
                       "\xce\xb5", "\xce\xb6", "\xce\xb7", "\xce\xb8"};
  return c;
}

std::string ConditionConfig::toJson(int indent) const {
  json j = {{"neutralOpening", neutralOpening},
            {"languageOpening", languageOpening},
            {"baseOpening", baseOpening},
            {"implicitOpsOpening", implicitOpsOpening},
            {"question", question},
            {"answerInstruction", answerInstruction},
            {"operatorSymbols", operatorSymbols}};
  return j.dump(indent);
}

ConditionConfig ConditionConfig::fromJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::IoFailure, "cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
    ConditionConfig c;
    c.neutralOpening = j.at("neutralOpening").get<std::string>();
    c.languageOpening = j.at("languageOpening").get<std::string>();
    c.baseOpening = j.at("baseOpening").get<std::string>();
    c.implicitOpsOpening = j.at("implicitOpsOpening").get<std::string>();
    c.question = j.at("question").get<std::string>();
    c.answerInstruction = j.at("answerInstruction").get<std::string>();
    c.operatorSymbols = j.at("operatorSymbols").get<std::vector<std::string>>();
    return c;
  } catch (const json::exception& e) {
    raise(Errc::IoFailure, std::string("bad condition config: ") + e.what());
  }
}

namespace {

// Explicit emission walks children in surface order (right first under
// LeastSignificantFirst) so parentheses stay well formed in both orders.
void emitExplicit(const NumExpr& expr, const NumeralSystem& sys, const OperatorStyle& style,
                  Tokens& out) {
  const bool lsf = sys.order == Order::LeastSignificantFirst;
  switch (expr.kind) {
    case NumExpr::Kind::Atom:
      if (!sys.bySurface(expr.morpheme.surface))
        raise(Errc::UnknownMorpheme, "morpheme '" + expr.morpheme.surface + "' not in lexicon");
      out.push_back(expr.morpheme.surface);
      return;
    case NumExpr::Kind::Add:
    case NumExpr::Kind::Sub: {
      const OpKind op = expr.kind == NumExpr::Kind::Add ? OpKind::Add : OpKind::Sub;
      const NumExpr& first = lsf ? *expr.right : *expr.left;
      const NumExpr& second = lsf ? *expr.left : *expr.right;
      emitExplicit(first, sys, style, out);
      out.push_back(style.surfaceFor(op));
      emitExplicit(second, sys, style, out);
      return;
    }
    case NumExpr::Kind::Mul: {
      const NumExpr& first = lsf ? *expr.right : *expr.left;
      const NumExpr& second = lsf ? *expr.left : *expr.right;
      if (style.parenthesize) out.push_back("(");
      emitExplicit(first, sys, style, out);
      out.push_back(style.surfaceFor(OpKind::Mul));
      emitExplicit(second, sys, style, out);
      if (style.parenthesize) out.push_back(")");
      return;
    }
  }
}

}  // namespace

Tokens applyCondition(const NumExpr& expr, const NumeralSystem& sys, const Condition& cond,
                      const OperatorStyle& style) {
  cond.validate();
  if (cond.explicitness == Explicitness::Implicit) return surface(expr, sys);
  style.validate();
  Tokens out;
  emitExplicit(expr, sys, style, out);
  return out;
}

namespace {

// Minimal infix parser for explicit renderings: Mul binds tighter than
// Add/Sub, parentheses group. A least-significant-first emission is the
// mirror image of the tree, so it reads back right-associative and gets
// mirrored afterwards; most-significant-first reads left-associative.
class ExplicitParser {
 public:
  ExplicitParser(const Tokens& tokens, const NumeralSystem& sys, const OperatorStyle& style,
                 bool rightAssoc)
      : tokens_(tokens), sys_(sys), style_(style), rightAssoc_(rightAssoc) {}

  ExprPtr run() {
    ExprPtr e = parseAddSub();
    if (pos_ != tokens_.size()) raise(Errc::NoParse, "trailing tokens in explicit expression");
    return e;
  }

 private:
  ExprPtr parseAddSub() {
    ExprPtr left = parseMul();
    if (rightAssoc_) {
      if (pos_ < tokens_.size() &&
          (tokens_[pos_] == style_.addSurface || tokens_[pos_] == style_.subSurface)) {
        const bool isAdd = tokens_[pos_] == style_.addSurface;
        ++pos_;
        ExprPtr right = parseAddSub();
        return isAdd ? NumExpr::add(left, right) : NumExpr::sub(left, right);
      }
      return left;
    }
    while (pos_ < tokens_.size() &&
           (tokens_[pos_] == style_.addSurface || tokens_[pos_] == style_.subSurface)) {
      const bool isAdd = tokens_[pos_] == style_.addSurface;
      ++pos_;
      ExprPtr right = parseMul();
      left = isAdd ? NumExpr::add(left, right) : NumExpr::sub(left, right);
    }
    return left;
  }

  ExprPtr parseMul() {
    ExprPtr left = parseFactor();
    while (pos_ < tokens_.size() && tokens_[pos_] == style_.mulSurface) {
      ++pos_;
      left = NumExpr::mul(left, parseFactor());
    }
    return left;
  }

  ExprPtr parseFactor() {
    if (pos_ >= tokens_.size()) raise(Errc::NoParse, "unexpected end of explicit expression");
    if (tokens_[pos_] == "(") {
      ++pos_;
      ExprPtr e = parseAddSub();
      if (pos_ >= tokens_.size() || tokens_[pos_] != ")")
        raise(Errc::NoParse, "missing closing parenthesis");
      ++pos_;
      return e;
    }
    const Morpheme* m = sys_.bySurface(tokens_[pos_]);
    if (!m) raise(Errc::UnknownToken, "token '" + tokens_[pos_] + "' not in system");
    std::int64_t value = 0;
    if (m->role.kind == RoleKind::Digit) value = m->role.value;
    else if (m->role.kind == RoleKind::Power) {
      value = 1;
      for (std::int64_t i = 0; i < m->role.value; ++i) value *= sys_.base;
    }
    ++pos_;
    return NumExpr::atom(*m, value);
  }

  const Tokens& tokens_;
  const NumeralSystem& sys_;
  const OperatorStyle& style_;
  bool rightAssoc_;
  std::size_t pos_ = 0;
};

ExprPtr mirror(const ExprPtr& e) {
  if (e->kind == NumExpr::Kind::Atom) return e;
  auto node = std::make_shared<NumExpr>();
  node->kind = e->kind;
  node->left = mirror(e->right);
  node->right = mirror(e->left);
  return node;
}

void flattenAdds(const ExprPtr& e, std::vector<ExprPtr>& terms) {
  if (e->kind == NumExpr::Kind::Add) {
    flattenAdds(e->left, terms);
    flattenAdds(e->right, terms);
  } else {
    terms.push_back(e);
  }
}

// Refolds additive chains left-associated, the shape render() produces, so
// parses agree across conditions regardless of how association fell out.
ExprPtr normalizeAdds(const ExprPtr& e) {
  if (e->kind == NumExpr::Kind::Atom || e->kind == NumExpr::Kind::Mul) return e;
  if (e->kind == NumExpr::Kind::Sub)
    return NumExpr::sub(normalizeAdds(e->left), normalizeAdds(e->right));
  std::vector<ExprPtr> terms;
  flattenAdds(e, terms);
  ExprPtr acc = terms[0];
  for (std::size_t i = 1; i < terms.size(); ++i) acc = NumExpr::add(acc, terms[i]);
  return acc;
}

}  // namespace

ExprPtr parseConditioned(const Tokens& tokens, const NumeralSystem& sys, const Condition& cond,
                         const OperatorStyle& style) {
  if (tokens.empty()) raise(Errc::EmptyInput, "no tokens");
  if (cond.explicitness == Explicitness::Implicit) return parseUnique(tokens, sys);
  const bool lsf = sys.order == Order::LeastSignificantFirst;
  ExprPtr e = ExplicitParser(tokens, sys, style, lsf).run();
  if (lsf) e = mirror(e);
  return normalizeAdds(e);
}

Tokens stripOperators(const Tokens& tokens, const OperatorStyle& style) {
  Tokens out;
  for (const auto& t : tokens) {
    if (t == "(" || t == ")" || t == style.addSurface || t == style.subSurface ||
        t == style.mulSurface)
      continue;
    out.push_back(t);
  }
  return out;
}

Tokens stripConnectives(const Tokens& tokens, const NumeralSystem& sys) {
  Tokens out;
  for (const auto& t : tokens)
    if (!sys.connectiveFor(t)) out.push_back(t);
  return out;
}

std::string decoratePrompt(const std::string& puzzleText, const Condition& cond,
                           const PromptMeta& meta, const ConditionConfig& config) {
  cond.validate();
  std::string opening;
  switch (cond.contextHint) {
    case ContextHint::None:
      opening = config.neutralOpening;
      break;
    case ContextHint::Language: {
      if (meta.language.empty()) raise(Errc::MissingMetadata, "language hint needs a language name");
      opening = config.languageOpening;
      const std::string key = "{language}";
      opening.replace(opening.find(key), key.size(), meta.language);
      break;
    }
    case ContextHint::Base: {
      if (meta.base < 2) raise(Errc::MissingMetadata, "base hint needs the base");
      opening = config.baseOpening;
      const std::string key = "{n}";
      opening.replace(opening.find(key), key.size(), std::to_string(meta.base));
      break;
    }
    case ContextHint::ImplicitOps:
      opening = config.implicitOpsOpening;
      break;
  }
  return opening + " " + config.question + " " + config.answerInstruction + "\n\n" + puzzleText;
}

}  // namespace numgram
