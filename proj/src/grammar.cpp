#include "numgram/grammar.hpp"

#include <algorithm>
#include <sstream>

#include "numgram/error.hpp"

namespace numgram {

std::string joinTokens(const Tokens& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

Tokens splitTokens(const std::string& text) {
  Tokens out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

namespace {

ExprPtr atomFor(const Morpheme& m, const NumeralSystem& sys) {
  std::int64_t value = 0;
  switch (m.role.kind) {
    case RoleKind::Digit: value = m.role.value; break;
    case RoleKind::Power: {
      value = 1;
      for (std::int64_t i = 0; i < m.role.value; ++i) value *= sys.base;
      break;
    }
    case RoleKind::Zero: value = 0; break;
    case RoleKind::Connective:
      raise(Errc::InvalidArgument, "connective is not an atom");
  }
  return NumExpr::atom(m, value);
}

ExprPtr renderAdditive(std::int64_t n, const NumeralSystem& sys) {
  std::vector<std::int64_t> digits;  // least significant first
  for (std::int64_t v = n; v > 0; v /= sys.base) digits.push_back(v % sys.base);
  const std::int64_t top = static_cast<std::int64_t>(digits.size()) - 1;

  ExprPtr acc;
  for (std::int64_t i = top; i >= 0; --i) {
    const std::int64_t c = digits[i];
    if (c == 0) continue;
    ExprPtr term;
    if (i == 0) {
      term = atomFor(*sys.digit(c), sys);
    } else {
      const Morpheme* p = sys.power(i);
      if (!p) raise(Errc::Inexpressible, "no power morpheme for exponent " + std::to_string(i));
      if (c == 1 && sys.omitUnitMultiplier && i == top) {
        term = atomFor(*p, sys);
      } else {
        term = NumExpr::mul(atomFor(*sys.digit(c), sys), atomFor(*p, sys));
      }
    }
    acc = acc ? NumExpr::add(acc, term) : term;
  }
  return acc;
}

}  // namespace

ExprPtr render(std::int64_t n, const NumeralSystem& sys) {
  if (n == 0) {
    const Morpheme* z = sys.zero();
    if (!z) raise(Errc::OutOfRange, "0 is not renderable without a zero morpheme");
    return atomFor(*z, sys);
  }
  if (n < 0 || n > sys.maxValue())
    raise(Errc::OutOfRange, std::to_string(n) + " outside representable range");

  const std::int64_t t = sys.subtractiveThreshold;
  const std::int64_t r = n % sys.base;
  if (t > 0 && r > 0) {
    const std::int64_t c = sys.base - r;
    if (c <= t) {
      if (n + c > sys.maxValue())
        raise(Errc::Inexpressible, "subtractive carry exceeds the representable range");
      return NumExpr::sub(renderAdditive(n + c, sys), atomFor(*sys.digit(c), sys));
    }
  }
  return renderAdditive(n, sys);
}

namespace {

void emit(const NumExpr& expr, const NumeralSystem& sys, Tokens& out) {
  switch (expr.kind) {
    case NumExpr::Kind::Atom: {
      if (!sys.bySurface(expr.morpheme.surface))
        raise(Errc::UnknownMorpheme, "morpheme '" + expr.morpheme.surface + "' not in lexicon");
      out.push_back(expr.morpheme.surface);
      return;
    }
    case NumExpr::Kind::Add: {
      emit(*expr.left, sys, out);
      auto it = sys.connectives.find(OpKind::Add);
      if (it != sys.connectives.end()) out.push_back(it->second);
      emit(*expr.right, sys, out);
      return;
    }
    case NumExpr::Kind::Sub: {
      auto it = sys.connectives.find(OpKind::Sub);
      if (it == sys.connectives.end())
        raise(Errc::UnknownMorpheme, "system has no sub connective word");
      emit(*expr.left, sys, out);
      out.push_back(it->second);
      emit(*expr.right, sys, out);
      return;
    }
    case NumExpr::Kind::Mul: {
      emit(*expr.left, sys, out);
      auto it = sys.connectives.find(OpKind::Mul);
      if (it != sys.connectives.end()) out.push_back(it->second);
      emit(*expr.right, sys, out);
      return;
    }
  }
}

}  // namespace

Tokens surface(const NumExpr& expr, const NumeralSystem& sys) {
  Tokens out;
  emit(expr, sys, out);
  if (sys.order == Order::LeastSignificantFirst) std::reverse(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Parsing: recursive descent over role-resolved tokens, most-significant
// order (LeastSignificantFirst input is reversed up front). The grammar is
// deterministic for role-resolved lexicons, but the all-candidates contract
// is kept so that callers never have to special-case ambiguity.
// ---------------------------------------------------------------------------

namespace {

struct Tok {
  const Morpheme* morpheme = nullptr;  // digit/power/zero
  bool isConnective = false;
  OpKind op = OpKind::Add;
};

struct Term {
  ExprPtr expr;
  std::int64_t exponent = 0;  // 0 for digit terms, e for power terms
  bool barePower = false;
};

class Parser {
 public:
  Parser(std::vector<Tok> toks, const NumeralSystem& sys) : toks_(std::move(toks)), sys_(sys) {}

  // numeral := zero | addExpr (subConn digit)?
  std::vector<ExprPtr> parse() {
    std::vector<ExprPtr> results;
    if (toks_.size() == 1 && toks_[0].morpheme && toks_[0].morpheme->role.kind == RoleKind::Zero) {
      results.push_back(NumExpr::atom(*toks_[0].morpheme, 0));
      return results;
    }
    // Optional subtractive tail: addExpr subConn digit.
    for (std::size_t split = 0; split + 1 < toks_.size(); ++split) {
      if (!toks_[split].isConnective || toks_[split].op != OpKind::Sub) continue;
      if (split + 2 != toks_.size()) continue;  // complement is a single digit
      const Tok& tail = toks_[split + 1];
      if (!tail.morpheme || tail.morpheme->role.kind != RoleKind::Digit) continue;
      for (const ExprPtr& head : parseAddExpr(0, split)) {
        ExprPtr c = NumExpr::atom(*tail.morpheme, tail.morpheme->role.value);
        if (evaluate(head) > c->value) results.push_back(NumExpr::sub(head, c));
      }
    }
    for (const ExprPtr& e : parseAddExpr(0, toks_.size())) results.push_back(e);
    return results;
  }

 private:
  // addExpr := term (addConn? term)* with strictly decreasing exponents and
  // bare powers only in leading position.
  std::vector<ExprPtr> parseAddExpr(std::size_t lo, std::size_t hi) {
    std::vector<ExprPtr> results;
    if (lo >= hi) return results;
    const bool overtAdd = sys_.connectives.count(OpKind::Add) > 0;
    std::vector<Term> terms;
    collectTerms(lo, hi, overtAdd, true, terms, results);
    return results;
  }

  void collectTerms(std::size_t pos, std::size_t hi, bool overtAdd, bool first,
                    std::vector<Term>& terms, std::vector<ExprPtr>& results) {
    if (pos == hi) {
      if (terms.empty()) return;
      ExprPtr acc = terms[0].expr;
      for (std::size_t i = 1; i < terms.size(); ++i) acc = NumExpr::add(acc, terms[i].expr);
      results.push_back(acc);
      return;
    }
    if (!first) {
      if (overtAdd) {
        if (!toks_[pos].isConnective || toks_[pos].op != OpKind::Add) return;
        ++pos;
        if (pos == hi) return;
      } else if (toks_[pos].isConnective) {
        return;
      }
    }
    for (const auto& [term, next] : termsAt(pos, hi, first)) {
      if (!terms.empty() && terms.back().exponent <= term.exponent) continue;
      terms.push_back(term);
      collectTerms(next, hi, overtAdd, false, terms, results);
      terms.pop_back();
    }
  }

  // term := digit | digit mulConn? power | power (leading only, omit flag set)
  std::vector<std::pair<Term, std::size_t>> termsAt(std::size_t pos, std::size_t hi, bool first) {
    std::vector<std::pair<Term, std::size_t>> out;
    const Tok& t = toks_[pos];
    if (!t.morpheme) return out;
    if (t.morpheme->role.kind == RoleKind::Digit) {
      ExprPtr d = NumExpr::atom(*t.morpheme, t.morpheme->role.value);
      out.push_back({Term{d, 0, false}, pos + 1});
      std::size_t ppos = pos + 1;
      if (ppos < hi && toks_[ppos].isConnective && toks_[ppos].op == OpKind::Mul) ++ppos;
      if (ppos < hi && toks_[ppos].morpheme && toks_[ppos].morpheme->role.kind == RoleKind::Power) {
        // An overt mul connective, when the system has one, is required.
        const bool overtMul = sys_.connectives.count(OpKind::Mul) > 0;
        const bool sawConn = ppos != pos + 1;
        if (overtMul == sawConn) {
          const Morpheme& p = *toks_[ppos].morpheme;
          std::int64_t pv = 1;
          for (std::int64_t i = 0; i < p.role.value; ++i) pv *= sys_.base;
          ExprPtr node = NumExpr::mul(d, NumExpr::atom(p, pv));
          out.push_back({Term{node, p.role.value, false}, ppos + 1});
        }
      }
    } else if (t.morpheme->role.kind == RoleKind::Power && first && sys_.omitUnitMultiplier) {
      std::int64_t pv = 1;
      for (std::int64_t i = 0; i < t.morpheme->role.value; ++i) pv *= sys_.base;
      out.push_back({Term{NumExpr::atom(*t.morpheme, pv), t.morpheme->role.value, true}, pos + 1});
    }
    return out;
  }

  std::vector<Tok> toks_;
  const NumeralSystem& sys_;
};

}  // namespace

std::vector<ExprPtr> parseAll(const Tokens& tokens, const NumeralSystem& sys) {
  if (tokens.empty()) raise(Errc::EmptyInput, "no tokens");
  Tokens ordered = tokens;
  if (sys.order == Order::LeastSignificantFirst) std::reverse(ordered.begin(), ordered.end());

  std::vector<Tok> toks;
  for (const std::string& surface : ordered) {
    Tok t;
    if (auto op = sys.connectiveFor(surface)) {
      t.isConnective = true;
      t.op = *op;
    } else if (const Morpheme* m = sys.bySurface(surface)) {
      t.morpheme = m;
    } else {
      raise(Errc::UnknownToken, "token '" + surface + "' not in system");
    }
    toks.push_back(t);
  }
  return Parser(std::move(toks), sys).parse();
}

ExprPtr parseUnique(const Tokens& tokens, const NumeralSystem& sys) {
  auto all = parseAll(tokens, sys);
  if (all.empty()) raise(Errc::NoParse, "'" + joinTokens(tokens) + "' has no parse");
  if (all.size() > 1)
    raise(Errc::AmbiguousParse, "'" + joinTokens(tokens) + "' has " + std::to_string(all.size()) + " parses");
  return all[0];
}

}  // namespace numgram
