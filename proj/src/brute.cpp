// Reference enumeration for the hypothesis space: plain depth-first
// assignment over (base, order, flavor, token bindings) with an equation
// check as soon as an equation's tokens are all bound, and its own small
// parser. Kept deliberately simpler than the propagating engine in
// solver.cpp; the equivalence suite compares the two sets exactly.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>

#include "numgram/error.hpp"
#include "numgram/solver.hpp"

namespace numgram {

namespace {

using Binding = TokenBinding;
using BindingMap = std::map<std::string, Binding>;

std::int64_t ipow(std::int64_t b, std::int64_t e) {
  std::int64_t v = 1;
  while (e-- > 0) v *= b;
  return v;
}

struct Flags {
  bool overtAdd = false;
  bool overtMul = false;
};

// All values derivable from seq as an additive term chain under the
// canonical grammar: terms with strictly decreasing exponents, a bare digit
// only in the final slot, a bare power only in the leading slot.
void addChainValues(const std::vector<const Binding*>& seq, std::int64_t base, const Flags& flags,
                    std::size_t pos, bool first, std::int64_t lastExp, std::int64_t acc,
                    std::set<std::int64_t>& out) {
  if (pos == seq.size()) {
    if (!first) out.insert(acc);
    return;
  }
  if (!first) {
    if (flags.overtAdd) {
      if (seq[pos]->kind != Binding::Kind::ConnAdd) return;
      ++pos;
      if (pos == seq.size()) return;
    } else if (seq[pos]->kind == Binding::Kind::ConnAdd) {
      return;
    }
  }
  const Binding& tok = *seq[pos];
  if (tok.kind == Binding::Kind::Digit) {
    // bare digit term, exponent 0
    if (lastExp > 0) addChainValues(seq, base, flags, pos + 1, false, 0, acc + tok.value, out);
    // digit [mul-connective] power
    std::size_t ppos = pos + 1;
    bool sawConn = false;
    if (ppos < seq.size() && seq[ppos]->kind == Binding::Kind::ConnMul) {
      sawConn = true;
      ++ppos;
    }
    if (ppos < seq.size() && seq[ppos]->kind == Binding::Kind::Power && flags.overtMul == sawConn) {
      const std::int64_t e = seq[ppos]->value;
      if (e < lastExp)
        addChainValues(seq, base, flags, ppos + 1, false, e, acc + tok.value * ipow(base, e), out);
    }
  } else if (tok.kind == Binding::Kind::Power && first) {
    const std::int64_t e = tok.value;
    if (e < lastExp) addChainValues(seq, base, flags, pos + 1, false, e, acc + ipow(base, e), out);
  }
}

std::set<std::int64_t> morphValues(const Tokens& tokens, const BindingMap& bindings,
                                   std::int64_t base, Order order, const Flags& flags) {
  std::vector<const Binding*> seq;
  for (const std::string& t : tokens) seq.push_back(&bindings.at(t));
  if (order == Order::LeastSignificantFirst) std::reverse(seq.begin(), seq.end());

  std::set<std::int64_t> values;
  constexpr std::int64_t kExpInf = 1 << 20;
  // subtractive tail: addChain subConn digit
  if (seq.size() >= 3 && seq[seq.size() - 2]->kind == Binding::Kind::ConnSub &&
      seq.back()->kind == Binding::Kind::Digit) {
    std::vector<const Binding*> head(seq.begin(), seq.end() - 2);
    std::set<std::int64_t> headValues;
    addChainValues(head, base, flags, 0, true, kExpInf, 0, headValues);
    for (std::int64_t h : headValues)
      if (h > seq.back()->value) values.insert(h - seq.back()->value);
  }
  addChainValues(seq, base, flags, 0, true, kExpInf, 0, values);
  return values;
}

// ---------------------------------------------------------------------------
// Explicit skeletons: the operator tokens and parentheses fix the tree; only
// atom bindings vary.
// ---------------------------------------------------------------------------

struct SkelNode {
  enum class Kind { Atom, Add, Sub, Mul } kind = Kind::Atom;
  std::string token;
  std::unique_ptr<SkelNode> left, right;
};

using SkelPtr = std::unique_ptr<SkelNode>;

class SkelParser {
 public:
  SkelParser(const Tokens& tokens, const std::map<std::string, OpKind>& ops, bool rightAssoc)
      : tokens_(tokens), ops_(ops), rightAssoc_(rightAssoc) {}

  SkelPtr run() {
    SkelPtr e = parseAddSub();
    if (!e || pos_ != tokens_.size()) return nullptr;
    return e;
  }

 private:
  const OpKind* opAt(std::size_t pos) const {
    if (pos >= tokens_.size()) return nullptr;
    auto it = ops_.find(tokens_[pos]);
    return it == ops_.end() ? nullptr : &it->second;
  }

  SkelPtr parseAddSub() {
    SkelPtr left = parseMul();
    if (!left) return nullptr;
    while (true) {
      const OpKind* op = opAt(pos_);
      if (!op || (*op != OpKind::Add && *op != OpKind::Sub)) return left;
      const OpKind kind = *op;
      ++pos_;
      if (rightAssoc_) {
        SkelPtr right = parseAddSub();
        if (!right) return nullptr;
        auto node = std::make_unique<SkelNode>();
        node->kind = kind == OpKind::Add ? SkelNode::Kind::Add : SkelNode::Kind::Sub;
        node->left = std::move(left);
        node->right = std::move(right);
        return node;
      }
      SkelPtr right = parseMul();
      if (!right) return nullptr;
      auto node = std::make_unique<SkelNode>();
      node->kind = kind == OpKind::Add ? SkelNode::Kind::Add : SkelNode::Kind::Sub;
      node->left = std::move(left);
      node->right = std::move(right);
      left = std::move(node);
    }
  }

  SkelPtr parseMul() {
    SkelPtr left = parseFactor();
    if (!left) return nullptr;
    while (true) {
      const OpKind* op = opAt(pos_);
      if (!op || *op != OpKind::Mul) return left;
      ++pos_;
      SkelPtr right = parseFactor();
      if (!right) return nullptr;
      auto node = std::make_unique<SkelNode>();
      node->kind = SkelNode::Kind::Mul;
      node->left = std::move(left);
      node->right = std::move(right);
      left = std::move(node);
    }
  }

  SkelPtr parseFactor() {
    if (pos_ >= tokens_.size()) return nullptr;
    if (tokens_[pos_] == "(") {
      ++pos_;
      SkelPtr e = parseAddSub();
      if (!e || pos_ >= tokens_.size() || tokens_[pos_] != ")") return nullptr;
      ++pos_;
      return e;
    }
    if (tokens_[pos_] == ")" || opAt(pos_)) return nullptr;
    auto node = std::make_unique<SkelNode>();
    node->token = tokens_[pos_];
    ++pos_;
    return node;
  }

  const Tokens& tokens_;
  const std::map<std::string, OpKind>& ops_;
  bool rightAssoc_;
  std::size_t pos_ = 0;
};

SkelPtr mirrorSkel(SkelPtr node) {
  if (!node || node->kind == SkelNode::Kind::Atom) return node;
  SkelPtr l = mirrorSkel(std::move(node->right));
  SkelPtr r = mirrorSkel(std::move(node->left));
  node->left = std::move(l);
  node->right = std::move(r);
  return node;
}

struct SkelTerm {
  bool isMul = false;
  std::string atomToken;   // bare slot
  std::string digitToken;  // mul slots
  std::string powerToken;
};

struct Skeleton {
  std::vector<SkelTerm> terms;
  std::string subToken;  // subtracted digit slot, empty when additive
  bool valid = false;
};

bool flattenAddSkel(const SkelNode& node, std::vector<SkelTerm>& terms) {
  if (node.kind == SkelNode::Kind::Add)
    return flattenAddSkel(*node.left, terms) && flattenAddSkel(*node.right, terms);
  if (node.kind == SkelNode::Kind::Atom) {
    terms.push_back({false, node.token, "", ""});
    return true;
  }
  if (node.kind == SkelNode::Kind::Mul) {
    if (node.left->kind != SkelNode::Kind::Atom || node.right->kind != SkelNode::Kind::Atom)
      return false;
    terms.push_back({true, "", node.left->token, node.right->token});
    return true;
  }
  return false;  // nested Sub
}

Skeleton skeletonFor(const Tokens& tokens, const std::map<std::string, OpKind>& ops, Order order) {
  Skeleton sk;
  const bool lsf = order == Order::LeastSignificantFirst;
  SkelPtr tree = SkelParser(tokens, ops, lsf).run();
  if (!tree) return sk;
  if (lsf) tree = mirrorSkel(std::move(tree));
  const SkelNode* root = tree.get();
  if (root->kind == SkelNode::Kind::Sub) {
    if (root->right->kind != SkelNode::Kind::Atom) return sk;
    sk.subToken = root->right->token;
    root = root->left.get();
  }
  if (!flattenAddSkel(*root, sk.terms)) return sk;
  sk.valid = !sk.terms.empty();
  return sk;
}

// Term exponents strictly decreasing; bare digit only final, bare power only
// leading; evaluates to the revealed value.
bool skeletonMatches(const Skeleton& sk, const BindingMap& bindings, std::int64_t base,
                     std::int64_t target) {
  std::int64_t total = 0;
  std::int64_t lastExp = 1 << 20;
  for (std::size_t i = 0; i < sk.terms.size(); ++i) {
    const SkelTerm& t = sk.terms[i];
    std::int64_t exp = 0;
    std::int64_t value = 0;
    if (t.isMul) {
      const Binding& d = bindings.at(t.digitToken);
      const Binding& p = bindings.at(t.powerToken);
      if (d.kind != Binding::Kind::Digit || p.kind != Binding::Kind::Power) return false;
      exp = p.value;
      value = d.value * ipow(base, exp);
    } else {
      const Binding& a = bindings.at(t.atomToken);
      if (a.kind == Binding::Kind::Digit) {
        if (i + 1 != sk.terms.size()) return false;
        exp = 0;
        value = a.value;
      } else if (a.kind == Binding::Kind::Power) {
        if (i != 0) return false;
        exp = a.value;
        value = ipow(base, exp);
      } else {
        return false;
      }
    }
    if (exp >= lastExp) return false;
    lastExp = exp;
    total += value;
  }
  if (!sk.subToken.empty()) {
    const Binding& c = bindings.at(sk.subToken);
    if (c.kind != Binding::Kind::Digit) return false;
    if (total <= c.value) return false;
    total -= c.value;
  }
  return total == target;
}

// ---------------------------------------------------------------------------

struct BruteState {
  const SpaceConfig* space = nullptr;
  std::uint64_t nodes = 0;

  void tick() {
    if (++nodes > space->nodeBudget)
      raise(Errc::ResourceBudgetExceeded, "enumeration exceeded the node budget");
  }
};

std::vector<std::string> tokenInventory(const std::vector<Equation>& equations,
                                        const std::map<std::string, OpKind>& ops) {
  std::vector<std::string> order;
  std::set<std::string> seen;
  for (const Equation& eq : equations)
    for (const std::string& t : eq.tokens) {
      if (t == "(" || t == ")" || ops.count(t)) continue;
      if (seen.insert(t).second) order.push_back(t);
    }
  return order;
}

// Index of the inventory position at which each equation becomes fully
// bound, so the DFS checks it exactly once.
std::vector<std::size_t> completionIndex(const std::vector<Equation>& equations,
                                         const std::vector<std::string>& inventory,
                                         const std::map<std::string, OpKind>& ops) {
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < inventory.size(); ++i) pos[inventory[i]] = i;
  std::vector<std::size_t> out;
  for (const Equation& eq : equations) {
    std::size_t last = 0;
    for (const std::string& t : eq.tokens) {
      if (t == "(" || t == ")" || ops.count(t)) continue;
      last = std::max(last, pos.at(t));
    }
    out.push_back(last);
  }
  return out;
}

void pushMorphHypothesis(std::vector<Hypothesis>& out, std::int64_t base, Order order,
                         const BindingMap& bindings) {
  Hypothesis h;
  h.flavor = Flavor::Morphological;
  h.base = base;
  h.order = order;
  h.bindings = bindings;
  h.subtractive = false;
  for (const auto& [t, b] : bindings)
    if (b.kind == Binding::Kind::ConnSub) h.subtractive = true;
  out.push_back(h);
}

void bruteMorphological(const std::vector<Equation>& equations, const SpaceConfig& space,
                        BruteState& state, std::vector<Hypothesis>& out) {
  static const std::map<std::string, OpKind> kNoOps;
  const auto inventory = tokenInventory(equations, kNoOps);
  const auto doneAt = completionIndex(equations, inventory, kNoOps);
  std::int64_t maxV = 1;
  for (const Equation& eq : equations) maxV = std::max(maxV, *eq.value);

  for (std::int64_t base = space.baseMin; base <= space.baseMax; ++base) {
    const std::int64_t maxExp = space.maxExponentFor(base, maxV);
    for (Order order : {Order::MostSignificantFirst, Order::LeastSignificantFirst}) {
      if (!space.bothOrders && order == Order::LeastSignificantFirst) continue;

      BindingMap bindings;
      std::set<std::int64_t> usedDigits, usedExps;
      bool haveAdd = false, haveSub = false, haveMul = false;

      // checkThrough: all equations complete at or before `idx` must match.
      auto checkEquations = [&](std::size_t idx, bool final) {
        Flags flags{haveAdd, haveMul};
        for (std::size_t e = 0; e < equations.size(); ++e) {
          if (!final && doneAt[e] != idx) continue;
          if (final && doneAt[e] == inventory.size() - 1) continue;  // already checked at idx
          auto values = morphValues(equations[e].tokens, bindings, base, order, flags);
          if (!values.count(*equations[e].value)) return false;
        }
        return true;
      };

      std::function<void(std::size_t)> dfs = [&](std::size_t idx) {
        if (idx == inventory.size()) {
          // re-check everything under the final overtness flags
          Flags flags{haveAdd, haveMul};
          for (std::size_t e = 0; e < equations.size(); ++e) {
            auto values = morphValues(equations[e].tokens, bindings, base, order, flags);
            if (!values.count(*equations[e].value)) return;
          }
          pushMorphHypothesis(out, base, order, bindings);
          return;
        }
        const std::string& tok = inventory[idx];
        auto tryBinding = [&](const Binding& b, bool* flag) {
          state.tick();
          bindings[tok] = b;
          if (flag) *flag = true;
          if (checkEquations(idx, false)) dfs(idx + 1);
          if (flag) *flag = false;
          bindings.erase(tok);
        };
        for (std::int64_t v = 1; v < base; ++v) {
          if (usedDigits.count(v)) continue;
          usedDigits.insert(v);
          tryBinding({Binding::Kind::Digit, v, ""}, nullptr);
          usedDigits.erase(v);
        }
        for (std::int64_t e = 1; e <= maxExp; ++e) {
          if (usedExps.count(e)) continue;
          usedExps.insert(e);
          tryBinding({Binding::Kind::Power, e, ""}, nullptr);
          usedExps.erase(e);
        }
        if (!haveAdd) tryBinding({Binding::Kind::ConnAdd, 0, ""}, &haveAdd);
        if (!haveSub && space.subtractive) tryBinding({Binding::Kind::ConnSub, 0, ""}, &haveSub);
        if (!haveMul) tryBinding({Binding::Kind::ConnMul, 0, ""}, &haveMul);
      };
      dfs(0);
    }
  }
}

void bruteExplicit(const std::vector<Equation>& equations, const SpaceConfig& space,
                   BruteState& state, std::vector<Hypothesis>& out) {
  const auto inventory = tokenInventory(equations, space.boundOperators);
  const auto doneAt = completionIndex(equations, inventory, space.boundOperators);
  std::int64_t maxV = 1;
  for (const Equation& eq : equations) maxV = std::max(maxV, *eq.value);

  for (std::int64_t base = space.baseMin; base <= space.baseMax; ++base) {
    const std::int64_t maxExp = space.maxExponentFor(base, maxV);
    for (Order order : {Order::MostSignificantFirst, Order::LeastSignificantFirst}) {
      if (!space.bothOrders && order == Order::LeastSignificantFirst) continue;

      std::vector<Skeleton> skeletons;
      bool allValid = true;
      for (const Equation& eq : equations) {
        skeletons.push_back(skeletonFor(eq.tokens, space.boundOperators, order));
        allValid = allValid && skeletons.back().valid;
      }
      if (!allValid) continue;

      BindingMap bindings;
      std::set<std::int64_t> usedDigits, usedExps;

      auto check = [&](std::size_t idx) {
        for (std::size_t e = 0; e < equations.size(); ++e) {
          if (doneAt[e] != idx) continue;
          if (!skeletonMatches(skeletons[e], bindings, base, *equations[e].value)) return false;
        }
        return true;
      };

      std::function<void(std::size_t)> dfs = [&](std::size_t idx) {
        if (idx == inventory.size()) {
          Hypothesis h;
          h.flavor = Flavor::Morphological;
          h.base = base;
          h.order = order;
          h.bindings = bindings;
          for (const auto& sk : skeletons)
            if (!sk.subToken.empty()) h.subtractive = true;
          out.push_back(h);
          return;
        }
        const std::string& tok = inventory[idx];
        for (std::int64_t v = 1; v < base; ++v) {
          if (usedDigits.count(v)) continue;
          state.tick();
          usedDigits.insert(v);
          bindings[tok] = {Binding::Kind::Digit, v, ""};
          if (check(idx)) dfs(idx + 1);
          bindings.erase(tok);
          usedDigits.erase(v);
        }
        for (std::int64_t e = 1; e <= maxExp; ++e) {
          if (usedExps.count(e)) continue;
          state.tick();
          usedExps.insert(e);
          bindings[tok] = {Binding::Kind::Power, e, ""};
          if (check(idx)) dfs(idx + 1);
          bindings.erase(tok);
          usedExps.erase(e);
        }
      };
      dfs(0);
    }
  }
}

void brutePositional(const std::vector<Equation>& equations, const SpaceConfig& space,
                     BruteState& state, std::vector<Hypothesis>& out) {
  static const std::map<std::string, OpKind> kNoOps;
  const auto inventory = tokenInventory(equations, kNoOps);
  const auto doneAt = completionIndex(equations, inventory, kNoOps);

  auto positionalValue = [](const Tokens& tokens, const BindingMap& bindings, std::int64_t base,
                            Order order, bool subtractive) -> std::optional<std::int64_t> {
    std::vector<std::int64_t> digits;
    for (const std::string& t : tokens) digits.push_back(bindings.at(t).value);
    if (order == Order::LeastSignificantFirst) std::reverse(digits.begin(), digits.end());
    if (digits.size() >= 2 && digits.front() == 0) return std::nullopt;
    std::int64_t value = 0;
    for (std::size_t i = 0; i + 1 < digits.size(); ++i) value = (value + digits[i]) * base;
    // units slot
    const std::int64_t units = digits.back();
    if (subtractive && digits.size() >= 2) {
      value -= units;
      if (value < 0) return std::nullopt;
    } else {
      value += units;
    }
    return value;
  };

  for (std::int64_t base = space.baseMin; base <= space.baseMax; ++base) {
    for (Order order : {Order::MostSignificantFirst, Order::LeastSignificantFirst}) {
      if (!space.bothOrders && order == Order::LeastSignificantFirst) continue;
      for (int sub = 0; sub <= (space.subtractive ? 1 : 0); ++sub) {
        BindingMap bindings;
        std::set<std::int64_t> used;

        auto check = [&](std::size_t idx) {
          for (std::size_t e = 0; e < equations.size(); ++e) {
            if (doneAt[e] != idx) continue;
            auto v = positionalValue(equations[e].tokens, bindings, base, order, sub != 0);
            if (!v || *v != *equations[e].value) return false;
          }
          return true;
        };

        std::function<void(std::size_t)> dfs = [&](std::size_t idx) {
          if (idx == inventory.size()) {
            Hypothesis h;
            h.flavor = Flavor::Positional;
            h.base = base;
            h.order = order;
            h.subtractive = sub != 0;
            h.bindings = bindings;
            out.push_back(h);
            return;
          }
          for (std::int64_t v = 0; v < base; ++v) {
            if (used.count(v)) continue;
            state.tick();
            used.insert(v);
            bindings[inventory[idx]] = {Binding::Kind::Digit, v, ""};
            if (check(idx)) dfs(idx + 1);
            bindings.erase(inventory[idx]);
            used.erase(v);
          }
        };
        dfs(0);
      }
    }
  }
}

void bruteSubstitution(const std::vector<Equation>& equations, const SpaceConfig& space,
                       BruteState& state, std::vector<Hypothesis>& out) {
  for (Order order : {Order::MostSignificantFirst, Order::LeastSignificantFirst}) {
    if (!space.bothOrders && order == Order::LeastSignificantFirst) continue;
    std::map<std::string, std::string> words;
    std::set<std::string> usedWords;
    bool ok = true;
    for (const Equation& eq : equations) {
      Tokens rhs = splitTokens(*eq.text);
      if (rhs.size() != eq.tokens.size()) {
        ok = false;
        break;
      }
      Tokens lhs = eq.tokens;
      if (order == Order::LeastSignificantFirst) std::reverse(lhs.begin(), lhs.end());
      for (std::size_t i = 0; i < lhs.size() && ok; ++i) {
        state.tick();
        auto it = words.find(lhs[i]);
        if (it == words.end()) {
          if (!usedWords.insert(rhs[i]).second) ok = false;  // injective
          else words[lhs[i]] = rhs[i];
        } else if (it->second != rhs[i]) {
          ok = false;
        }
      }
      if (!ok) break;
    }
    if (!ok) continue;
    Hypothesis h;
    h.flavor = Flavor::Substitution;
    h.base = 0;
    h.order = order;
    for (const auto& [t, w] : words) h.bindings[t] = {Binding::Kind::Word, 0, w};
    out.push_back(h);
  }
}

}  // namespace

std::vector<Hypothesis> enumerateConsistent(const std::vector<Equation>& equations,
                                            const SpaceConfig& space) {
  if (equations.empty()) raise(Errc::EmptyInput, "no equations");
  bool allNumeric = true, allText = true;
  for (const Equation& eq : equations) {
    if (!eq.value) allNumeric = false;
    if (!eq.text) allText = false;
  }

  BruteState state;
  state.space = &space;
  std::vector<Hypothesis> out;
  if (allNumeric) {
    if (space.explicitStructure) {
      if (space.morphological) bruteExplicit(equations, space, state, out);
    } else {
      if (space.morphological) bruteMorphological(equations, space, state, out);
      if (space.positional) brutePositional(equations, space, state, out);
    }
  } else if (allText && space.substitution && !space.explicitStructure) {
    bruteSubstitution(equations, space, state, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace numgram
