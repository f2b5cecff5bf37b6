#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "numgram/grammar.hpp"

namespace numgram {

enum class Explicitness { Implicit, ExplicitFamiliar, ExplicitUnfamiliarSymbol, ExplicitUnfamiliarWord };
enum class VariableWidth { SingleCharacter, MultiCharacter };
enum class ContextHint { None, Language, Base, ImplicitOps };

const char* explicitnessName(Explicitness e);
Explicitness explicitnessFromName(const std::string& name);
const char* widthName(VariableWidth w);
VariableWidth widthFromName(const std::string& name);
const char* hintName(ContextHint h);
ContextHint hintFromName(const std::string& name);

/// One cell of the condition grid: operator explicitness x variable width x
/// context hint. The implicit-operations hint only combines with the
/// implicit condition.
struct Condition {
  Explicitness explicitness = Explicitness::Implicit;
  VariableWidth variableWidth = VariableWidth::MultiCharacter;
  ContextHint contextHint = ContextHint::None;

  void validate() const;
};

/// Operator spellings for the explicit conditions. The three surfaces must
/// be pairwise distinct.
struct OperatorStyle {
  std::string addSurface = "+";
  std::string subSurface = "-";
  std::string mulSurface = "\xc3\x97";  // multiplication sign
  bool parenthesize = true;

  /// '+', '-', and the multiplication sign; asciiMul swaps in '*',
  /// unicodeMinus swaps in U+2212.
  static OperatorStyle familiar(bool asciiMul = false, bool unicodeMinus = false);

  void validate() const;
  const std::string& surfaceFor(OpKind op) const;
};

/// Hint sentence templates and operator symbol pools. Ships as
/// data/condition_config.json; defaults() carries the same values so the
/// library works without the file.
struct ConditionConfig {
  std::string neutralOpening;
  std::string languageOpening;   // "{language}" placeholder
  std::string baseOpening;       // "{n}" placeholder
  std::string implicitOpsOpening;
  std::string question;
  std::string answerInstruction;
  std::vector<std::string> operatorSymbols;  // pool for unfamiliar-symbol ops

  static ConditionConfig defaults();
  static ConditionConfig fromJsonFile(const std::string& path);
  std::string toJson(int indent = 2) const;
};

/// Renders expr under the given condition. Implicit returns the grammar
/// surface unchanged. The explicit conditions write every Add/Sub/Mul node
/// as "left OP right" with the style's surface, parenthesizing Mul groups,
/// and drop the system's overt connective words (the operator replaces
/// them). Token order follows sys.order.
Tokens applyCondition(const NumExpr& expr, const NumeralSystem& sys, const Condition& cond,
                      const OperatorStyle& style);
inline Tokens applyCondition(const ExprPtr& expr, const NumeralSystem& sys,
                             const Condition& cond, const OperatorStyle& style) {
  return applyCondition(*expr, sys, cond, style);
}

/// Inverse of the explicit rendering: rebuilds the AST from an explicit
/// token sequence using the style's operator surfaces and the system's
/// lexicon for atoms. Used by the condition-equivalence tests.
ExprPtr parseConditioned(const Tokens& tokens, const NumeralSystem& sys, const Condition& cond,
                         const OperatorStyle& style);

/// Drops operator tokens and parentheses from an explicit rendering.
Tokens stripOperators(const Tokens& tokens, const OperatorStyle& style);

/// Drops overt connective words from an implicit rendering.
Tokens stripConnectives(const Tokens& tokens, const NumeralSystem& sys);

struct PromptMeta {
  std::string language;
  std::int64_t base = 0;
};

/// Prepends the condition's opening sentence (verbatim template from the
/// config), the question, and the answer-format instruction, then the
/// puzzle text after a blank line.
std::string decoratePrompt(const std::string& puzzleText, const Condition& cond,
                           const PromptMeta& meta, const ConditionConfig& config);

}  // namespace numgram
