// Propagating induction engine. Searches (base, order, flavor) candidates;
// inside each, morphological search runs in three phases (role kinds, power
// exponents, digit values) with per-equation pruning, and digit values are
// resolved by linear propagation with forced-assignment cascades. The
// explicit conditions skip the role phase almost entirely: operator tokens
// arrive pre-bound, so only atom slots remain.

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>

#include "numgram/error.hpp"
#include "numgram/grammar.hpp"
#include "numgram/solver.hpp"

namespace numgram {

namespace {

using Binding = TokenBinding;
using Kind = TokenBinding::Kind;

std::int64_t ipow(std::int64_t b, std::int64_t e) {
  std::int64_t v = 1;
  while (e-- > 0) v *= b;
  return v;
}

struct BudgetHit {};

struct SearchContext {
  const SpaceConfig* space = nullptr;
  SolveStats* stats = nullptr;
  std::chrono::steady_clock::time_point start;

  void tick() {
    if (++stats->nodesExpanded > space->nodeBudget) {
      stats->budgetExceeded = true;
      throw BudgetHit{};
    }
    if ((stats->nodesExpanded & 0xFFFu) == 0) {
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (elapsed > space->timeBudgetSecs) {
        stats->budgetExceeded = true;
        throw BudgetHit{};
      }
    }
  }
};

// ---------------------------------------------------------------------------
// Linear subproblem: sum(coeff_i * x_i) + constant = target per equation,
// injective values, per-variable domains. Finds every solution.
// ---------------------------------------------------------------------------

struct LinearEquation {
  std::vector<std::pair<int, std::int64_t>> coeffs;  // (variable, coefficient != 0)
  std::int64_t constant = 0;
  std::int64_t target = 0;
};

class LinearSolver {
 public:
  LinearSolver(int varCount, std::int64_t lo, std::int64_t hi, std::vector<bool> forbidZero,
               std::vector<LinearEquation> equations, SearchContext& ctx)
      : lo_(lo), hi_(hi), forbidZero_(std::move(forbidZero)), equations_(std::move(equations)),
        ctx_(ctx), value_(varCount, kUnset) {}

  void run(const std::function<void(const std::vector<std::int64_t>&)>& emit) {
    emit_ = &emit;
    std::vector<int> trail;
    if (propagate(trail)) search();
    undo(trail);
  }

 private:
  static constexpr std::int64_t kUnset = -9999;

  bool inDomain(int var, std::int64_t v) const {
    if (v < lo_ || v > hi_) return false;
    if (v == 0 && forbidZero_[var]) return false;
    return !used_.count(v);
  }

  // Forced-assignment cascade; false on contradiction. Assignments are
  // recorded on the trail for backtracking.
  bool propagate(std::vector<int>& trail) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const LinearEquation& eq : equations_) {
        std::int64_t sum = eq.constant;
        std::int64_t slackLo = 0, slackHi = 0;
        int unknown = -1;
        std::int64_t unknownCoeff = 0;
        int unknownCount = 0;
        for (const auto& [var, coeff] : eq.coeffs) {
          if (value_[var] != kUnset) {
            sum += coeff * value_[var];
          } else {
            ++unknownCount;
            unknown = var;
            unknownCoeff = coeff;
            const std::int64_t varLo = forbidZero_[var] ? std::max<std::int64_t>(lo_, 1) : lo_;
            if (coeff > 0) {
              slackLo += coeff * varLo;
              slackHi += coeff * hi_;
            } else {
              slackLo += coeff * hi_;
              slackHi += coeff * varLo;
            }
          }
        }
        if (unknownCount == 0) {
          if (sum != eq.target) return false;
          continue;
        }
        if (sum + slackLo > eq.target || sum + slackHi < eq.target) return false;
        if (unknownCount == 1) {
          const std::int64_t rest = eq.target - sum;
          if (rest % unknownCoeff != 0) return false;
          const std::int64_t v = rest / unknownCoeff;
          if (!inDomain(unknown, v)) return false;
          ctx_.tick();
          value_[unknown] = v;
          used_.insert(v);
          trail.push_back(unknown);
          changed = true;
        }
      }
    }
    return true;
  }

  void undo(std::vector<int>& trail) {
    while (!trail.empty()) {
      used_.erase(value_[trail.back()]);
      value_[trail.back()] = kUnset;
      trail.pop_back();
    }
  }

  void search() {
    // Branch on a variable from the equation with the fewest unknowns.
    int bestVar = -1;
    std::size_t bestCount = SIZE_MAX;
    for (const LinearEquation& eq : equations_) {
      std::size_t count = 0;
      int candidate = -1;
      std::int64_t candidateCoeff = -1;
      for (const auto& [var, coeff] : eq.coeffs) {
        if (value_[var] != kUnset) continue;
        ++count;
        const std::int64_t mag = coeff < 0 ? -coeff : coeff;
        if (mag > candidateCoeff) {
          candidateCoeff = mag;
          candidate = var;
        }
      }
      if (count > 0 && count < bestCount) {
        bestCount = count;
        bestVar = candidate;
      }
    }
    if (bestVar == -1) {
      // Variables outside every equation (cancelled coefficients) stay
      // unconstrained; enumerate them too so hypothesis sets stay exact.
      int freeVar = -1;
      for (std::size_t i = 0; i < value_.size(); ++i)
        if (value_[i] == kUnset) {
          freeVar = static_cast<int>(i);
          break;
        }
      if (freeVar == -1) {
        (*emit_)(value_);
        return;
      }
      bestVar = freeVar;
    }
    for (std::int64_t v = lo_; v <= hi_; ++v) {
      if (!inDomain(bestVar, v)) continue;
      ctx_.tick();
      value_[bestVar] = v;
      used_.insert(v);
      std::vector<int> trail;
      if (propagate(trail)) search();
      undo(trail);
      used_.erase(v);
      value_[bestVar] = kUnset;
    }
  }

  std::int64_t lo_, hi_;
  std::vector<bool> forbidZero_;
  std::vector<LinearEquation> equations_;
  SearchContext& ctx_;
  std::vector<std::int64_t> value_;
  std::set<std::int64_t> used_;
  const std::function<void(const std::vector<std::int64_t>&)>* emit_ = nullptr;
};

// ---------------------------------------------------------------------------
// Shared search scaffolding: token inventory in first-appearance order plus
// per-equation completion indices.
// ---------------------------------------------------------------------------

struct Inventory {
  std::vector<std::string> tokens;
  std::map<std::string, int> index;
  std::vector<std::size_t> completeAt;  // per equation

  static Inventory build(const std::vector<Equation>& equations,
                         const std::map<std::string, OpKind>& ops) {
    Inventory inv;
    for (const Equation& eq : equations)
      for (const std::string& t : eq.tokens) {
        if (t == "(" || t == ")" || ops.count(t)) continue;
        if (!inv.index.count(t)) {
          inv.index[t] = static_cast<int>(inv.tokens.size());
          inv.tokens.push_back(t);
        }
      }
    for (const Equation& eq : equations) {
      std::size_t last = 0;
      for (const std::string& t : eq.tokens) {
        if (t == "(" || t == ")" || ops.count(t)) continue;
        last = std::max(last, static_cast<std::size_t>(inv.index.at(t)));
      }
      inv.completeAt.push_back(last);
    }
    return inv;
  }
};

enum class RK : std::uint8_t { D, P, CA, CS, CM, Unset };

struct MTerm {
  int digitVar = -1;  // mul term
  int powerVar = -1;
  int bareVar = -1;   // bare term; barePower says which role
  bool barePower = false;
};

struct MSkel {
  std::vector<MTerm> terms;
  int subVar = -1;
  bool valid = false;
};

// Structure of one equation under a complete kind assignment; at most one
// skeleton exists per signature under this grammar.
MSkel skeletonFromKinds(const std::vector<int>& seq, const std::vector<RK>& kind, bool overtAdd,
                        bool overtMul, std::int64_t maxExp) {
  MSkel sk;
  std::size_t end = seq.size();
  // subtractive tail
  if (end >= 3 && kind[seq[end - 2]] == RK::CS && kind[seq[end - 1]] == RK::D) {
    sk.subVar = seq[end - 1];
    end -= 2;
  }
  std::size_t pos = 0;
  bool sawDigitTerm = false;
  std::int64_t powerTerms = 0;
  while (pos < end) {
    if (!sk.terms.empty()) {
      if (overtAdd) {
        if (kind[seq[pos]] != RK::CA) return sk;
        ++pos;
        if (pos == end) return sk;
      } else if (kind[seq[pos]] == RK::CA) {
        return sk;
      }
    }
    if (sawDigitTerm) return sk;  // a bare digit closes the chain
    const RK k = kind[seq[pos]];
    if (k == RK::D) {
      std::size_t ppos = pos + 1;
      bool sawConn = false;
      if (ppos < end && kind[seq[ppos]] == RK::CM) {
        sawConn = true;
        ++ppos;
      }
      if (ppos < end && kind[seq[ppos]] == RK::P && sawConn == overtMul) {
        MTerm t;
        t.digitVar = seq[pos];
        t.powerVar = seq[ppos];
        sk.terms.push_back(t);
        ++powerTerms;
        pos = ppos + 1;
      } else if (!sawConn) {
        MTerm t;
        t.bareVar = seq[pos];
        sk.terms.push_back(t);
        sawDigitTerm = true;
        ++pos;
      } else {
        return sk;
      }
    } else if (k == RK::P && sk.terms.empty()) {
      MTerm t;
      t.bareVar = seq[pos];
      t.barePower = true;
      sk.terms.push_back(t);
      ++powerTerms;
      ++pos;
    } else {
      return sk;
    }
  }
  if (sk.terms.empty()) return sk;
  if (powerTerms > maxExp) return sk;  // not enough distinct exponents
  sk.valid = true;
  return sk;
}

// ---------------------------------------------------------------------------
// Value phases (power exponents, then digit values) shared by the implicit
// and explicit morphological searches.
// ---------------------------------------------------------------------------

struct ValueSearch {
  const std::vector<Equation>& equations;
  const std::vector<std::string>& tokens;  // inventory
  const std::vector<RK>& kind;
  const std::vector<MSkel>& skels;
  std::int64_t base;
  Order order;
  std::int64_t maxExp;
  bool subtractive;  // a sub connective is bound (implicit) or printed (explicit)
  SearchContext& ctx;
  std::vector<Hypothesis>& out;

  void run() {
    // A subtractive head must exceed its complement, so the value is >= 1.
    for (std::size_t e = 0; e < equations.size(); ++e)
      if (skels[e].subVar >= 0 && *equations[e].value < 1) return;

    std::vector<int> powerVars;
    for (std::size_t v = 0; v < kind.size(); ++v)
      if (kind[v] == RK::P) powerVars.push_back(static_cast<int>(v));

    std::vector<std::int64_t> exp(kind.size(), -1);
    std::set<std::int64_t> usedExp;

    // Exponent cap per power token from the values of the equations it
    // appears in; weaker than the value check, just a cheap bound.
    std::vector<std::int64_t> expCap(kind.size(), maxExp);
    for (std::size_t e = 0; e < equations.size(); ++e) {
      const std::int64_t cap = *equations[e].value + base - 1;
      for (const MTerm& t : skels[e].terms) {
        const int pv = t.powerVar >= 0 ? t.powerVar : (t.barePower ? t.bareVar : -1);
        if (pv < 0) continue;
        std::int64_t c = 0;
        std::int64_t powv = 1;
        while (c < maxExp && powv <= cap / base) {
          powv *= base;
          ++c;
        }
        expCap[pv] = std::min(expCap[pv], std::max<std::int64_t>(c, 1));
      }
    }

    auto expsOk = [&](const MSkel& sk) {
      std::int64_t last = 1 << 20;
      for (const MTerm& t : sk.terms) {
        std::int64_t e;
        if (t.bareVar >= 0) e = t.barePower ? exp[t.bareVar] : 0;
        else e = exp[t.powerVar];
        if (e < 0) break;  // unknown exponent: nothing to check yet
        if (e >= last) return false;
        last = e;
      }
      return true;
    };

    std::function<void(std::size_t)> dfs = [&](std::size_t i) {
      if (i == powerVars.size()) {
        assignDigits(exp);
        return;
      }
      const int var = powerVars[i];
      for (std::int64_t e = 1; e <= expCap[var]; ++e) {
        if (usedExp.count(e)) continue;
        ctx.tick();
        exp[var] = e;
        usedExp.insert(e);
        bool ok = true;
        for (const MSkel& sk : skels)
          if (!expsOk(sk)) {
            ok = false;
            break;
          }
        if (ok) dfs(i + 1);
        usedExp.erase(e);
        exp[var] = -1;
      }
    };
    dfs(0);
  }

  void assignDigits(const std::vector<std::int64_t>& exp) {
    std::vector<int> digitVars;
    std::vector<int> digitIndex(kind.size(), -1);
    for (std::size_t v = 0; v < kind.size(); ++v)
      if (kind[v] == RK::D) {
        digitIndex[v] = static_cast<int>(digitVars.size());
        digitVars.push_back(static_cast<int>(v));
      }

    std::vector<LinearEquation> linear;
    for (std::size_t e = 0; e < equations.size(); ++e) {
      LinearEquation le;
      le.target = *equations[e].value;
      std::map<int, std::int64_t> coeff;
      for (const MTerm& t : skels[e].terms) {
        if (t.bareVar >= 0) {
          if (t.barePower) le.constant += ipow(base, exp[t.bareVar]);
          else coeff[digitIndex[t.bareVar]] += 1;
        } else {
          coeff[digitIndex[t.digitVar]] += ipow(base, exp[t.powerVar]);
        }
      }
      if (skels[e].subVar >= 0) coeff[digitIndex[skels[e].subVar]] -= 1;
      for (const auto& [v, c] : coeff)
        if (c != 0) le.coeffs.push_back({v, c});
      linear.push_back(std::move(le));
    }

    LinearSolver solver(static_cast<int>(digitVars.size()), 1, base - 1,
                        std::vector<bool>(digitVars.size(), false), std::move(linear), ctx);
    solver.run([&](const std::vector<std::int64_t>& values) {
      Hypothesis h;
      h.flavor = Flavor::Morphological;
      h.base = base;
      h.order = order;
      h.subtractive = subtractive;
      for (std::size_t v = 0; v < kind.size(); ++v) {
        Binding b;
        switch (kind[v]) {
          case RK::D: b = {Kind::Digit, values[digitIndex[v]], ""}; break;
          case RK::P: b = {Kind::Power, exp[v], ""}; break;
          case RK::CA: b = {Kind::ConnAdd, 0, ""}; break;
          case RK::CS: b = {Kind::ConnSub, 0, ""}; break;
          case RK::CM: b = {Kind::ConnMul, 0, ""}; break;
          case RK::Unset: continue;
        }
        h.bindings[tokens[v]] = b;
      }
      out.push_back(std::move(h));
    });
  }
};

// ---------------------------------------------------------------------------
// Implicit morphological search
// ---------------------------------------------------------------------------

struct MorphSearch {
  const std::vector<Equation>& equations;
  const SpaceConfig& space;
  SearchContext& ctx;
  std::vector<Hypothesis>& out;
  Inventory inv;
  std::int64_t maxV = 1;

  std::int64_t base = 0;
  Order order = Order::MostSignificantFirst;
  std::int64_t maxExp = 1;
  std::vector<std::vector<int>> seqs;
  std::vector<RK> kind;
  int connAddVar = -1, connSubVar = -1, connMulVar = -1;
  std::vector<bool> edgeToken;  // structurally cannot be a connective
  std::vector<bool> heuristicOp;

  MorphSearch(const std::vector<Equation>& eqs, const SpaceConfig& sp, SearchContext& c,
              std::vector<Hypothesis>& o)
      : equations(eqs), space(sp), ctx(c), out(o) {
    static const std::map<std::string, OpKind> kNoOps;
    inv = Inventory::build(eqs, kNoOps);
    for (const Equation& eq : eqs) maxV = std::max(maxV, *eq.value);

    edgeToken.assign(inv.tokens.size(), false);
    std::vector<int> eqCount(inv.tokens.size(), 0);
    std::vector<int> nonEdgeEqCount(inv.tokens.size(), 0);
    for (const Equation& eq : eqs) {
      std::set<int> inEq, nonEdge;
      for (std::size_t i = 0; i < eq.tokens.size(); ++i) {
        const int v = inv.index.at(eq.tokens[i]);
        inEq.insert(v);
        if (i == 0 || i + 1 == eq.tokens.size()) edgeToken[v] = true;
        else nonEdge.insert(v);
      }
      for (int v : inEq) ++eqCount[v];
      for (int v : nonEdge) ++nonEdgeEqCount[v];
    }
    // Branch-ordering heuristic: tokens present at interior positions of
    // every equation make the most plausible operator words. Ordering only;
    // the space itself is not narrowed.
    heuristicOp.assign(inv.tokens.size(), false);
    for (std::size_t v = 0; v < inv.tokens.size(); ++v)
      heuristicOp[v] = !edgeToken[v] && eqCount[v] == static_cast<int>(equations.size()) &&
                       nonEdgeEqCount[v] == static_cast<int>(equations.size());
  }

  void run() {
    for (base = space.baseMin; base <= space.baseMax; ++base) {
      maxExp = space.maxExponentFor(base, maxV);
      for (Order o : {Order::MostSignificantFirst, Order::LeastSignificantFirst}) {
        if (!space.bothOrders && o == Order::LeastSignificantFirst) continue;
        order = o;
        seqs.clear();
        for (const Equation& eq : equations) {
          std::vector<int> seq;
          for (const std::string& t : eq.tokens) seq.push_back(inv.index.at(t));
          if (order == Order::LeastSignificantFirst) std::reverse(seq.begin(), seq.end());
          seqs.push_back(std::move(seq));
        }
        kind.assign(inv.tokens.size(), RK::Unset);
        connAddVar = connSubVar = connMulVar = -1;
        assignKinds(0);
      }
    }
  }

  // Optimistic structural feasibility for equations completed at `idx`:
  // overtness uses only the connectives bound so far, which can only grow,
  // and the full set is re-validated once every kind is fixed.
  bool completedEquationsOk(std::size_t idx) const {
    for (std::size_t e = 0; e < equations.size(); ++e) {
      if (inv.completeAt[e] != idx) continue;
      if (!skeletonFromKinds(seqs[e], kind, connAddVar >= 0, connMulVar >= 0, maxExp).valid)
        return false;
    }
    return true;
  }

  void assignKinds(std::size_t idx) {
    if (idx == inv.tokens.size()) {
      std::vector<MSkel> skels;
      for (std::size_t e = 0; e < equations.size(); ++e) {
        skels.push_back(skeletonFromKinds(seqs[e], kind, connAddVar >= 0, connMulVar >= 0, maxExp));
        if (!skels.back().valid) return;
      }
      ValueSearch vs{equations, inv.tokens, kind,  skels, base,
                     order,     maxExp,     connSubVar >= 0, ctx,  out};
      vs.run();
      return;
    }
    const int var = static_cast<int>(idx);
    auto tryKind = [&](RK k, int* connSlot) {
      if (connSlot && (*connSlot >= 0 || edgeToken[var])) return;
      ctx.tick();
      kind[var] = k;
      if (connSlot) *connSlot = var;
      if (completedEquationsOk(idx)) assignKinds(idx + 1);
      if (connSlot) *connSlot = -1;
      kind[var] = RK::Unset;
    };
    auto tryConnectives = [&] {
      tryKind(RK::CA, &connAddVar);
      if (space.subtractive) tryKind(RK::CS, &connSubVar);
      tryKind(RK::CM, &connMulVar);
    };
    if (heuristicOp[var]) tryConnectives();
    tryKind(RK::D, nullptr);
    tryKind(RK::P, nullptr);
    if (!heuristicOp[var]) tryConnectives();
  }
};

// ---------------------------------------------------------------------------
// Positional search
// ---------------------------------------------------------------------------

void positionalSearch(const std::vector<Equation>& equations, const SpaceConfig& space,
                      SearchContext& ctx, std::vector<Hypothesis>& out) {
  static const std::map<std::string, OpKind> kNoOps;
  const Inventory inv = Inventory::build(equations, kNoOps);

  for (std::int64_t base = space.baseMin; base <= space.baseMax; ++base) {
    for (Order order : {Order::MostSignificantFirst, Order::LeastSignificantFirst}) {
      if (!space.bothOrders && order == Order::LeastSignificantFirst) continue;
      for (int sub = 0; sub <= (space.subtractive ? 1 : 0); ++sub) {
        std::vector<LinearEquation> linear;
        std::vector<bool> forbidZero(inv.tokens.size(), false);
        for (const Equation& eq : equations) {
          std::vector<int> seq;
          for (const std::string& t : eq.tokens) seq.push_back(inv.index.at(t));
          if (order == Order::LeastSignificantFirst) std::reverse(seq.begin(), seq.end());
          if (seq.size() >= 2) forbidZero[seq.front()] = true;
          LinearEquation le;
          le.target = *eq.value;
          std::map<int, std::int64_t> coeff;
          for (std::size_t i = 0; i < seq.size(); ++i) {
            const std::int64_t place = ipow(base, static_cast<std::int64_t>(seq.size() - 1 - i));
            const bool unitsSlot = i + 1 == seq.size();
            const std::int64_t signedPlace =
                (sub != 0 && unitsSlot && seq.size() >= 2) ? -place : place;
            coeff[seq[i]] += signedPlace;
          }
          for (const auto& [v, c] : coeff)
            if (c != 0) le.coeffs.push_back({v, c});
          linear.push_back(std::move(le));
        }

        LinearSolver solver(static_cast<int>(inv.tokens.size()), 0, base - 1, forbidZero,
                            std::move(linear), ctx);
        solver.run([&](const std::vector<std::int64_t>& values) {
          Hypothesis h;
          h.flavor = Flavor::Positional;
          h.base = base;
          h.order = order;
          h.subtractive = sub != 0;
          for (std::size_t v = 0; v < inv.tokens.size(); ++v)
            h.bindings[inv.tokens[v]] = {Kind::Digit, values[v], ""};
          out.push_back(std::move(h));
        });
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Substitution search
// ---------------------------------------------------------------------------

void substitutionSearch(const std::vector<Equation>& equations, const SpaceConfig& space,
                        SearchContext& ctx, std::vector<Hypothesis>& out) {
  for (Order order : {Order::MostSignificantFirst, Order::LeastSignificantFirst}) {
    if (!space.bothOrders && order == Order::LeastSignificantFirst) continue;
    std::map<std::string, std::string> forward;
    std::map<std::string, std::string> backward;
    bool ok = true;
    for (const Equation& eq : equations) {
      if (!ok) break;
      Tokens rhs = splitTokens(*eq.text);
      Tokens lhs = eq.tokens;
      if (order == Order::LeastSignificantFirst) std::reverse(lhs.begin(), lhs.end());
      if (lhs.size() != rhs.size()) {
        ok = false;
        break;
      }
      for (std::size_t i = 0; i < lhs.size(); ++i) {
        ctx.tick();
        auto [it, inserted] = forward.try_emplace(lhs[i], rhs[i]);
        if (!inserted && it->second != rhs[i]) {
          ok = false;
          break;
        }
        auto [rit, rinserted] = backward.try_emplace(rhs[i], lhs[i]);
        if (!rinserted && rit->second != lhs[i]) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    Hypothesis h;
    h.flavor = Flavor::Substitution;
    h.base = 0;
    h.order = order;
    for (const auto& [t, w] : forward) h.bindings[t] = {Kind::Word, 0, w};
    out.push_back(h);
  }
}

// ---------------------------------------------------------------------------
// Explicit-structure search: operator tokens pre-bound, trees fixed.
// ---------------------------------------------------------------------------

struct ExNode {
  enum class Op { Atom, Add, Sub, Mul } op = Op::Atom;
  int var = -1;
  std::unique_ptr<ExNode> left, right;
};

// opcodes per position: -1 atom, 0 add, 1 sub, 2 mul, 3 '(', 4 ')'
class ExParser {
 public:
  ExParser(const std::vector<int>& seq, const std::vector<int>& opcodes, bool rightAssoc)
      : seq_(seq), ops_(opcodes), rightAssoc_(rightAssoc) {}

  std::unique_ptr<ExNode> run() {
    auto e = parseAddSub();
    if (!e || pos_ != seq_.size()) return nullptr;
    return e;
  }

 private:
  int code(std::size_t p) const { return p < seq_.size() ? ops_[p] : -99; }

  std::unique_ptr<ExNode> parseAddSub() {
    auto left = parseMul();
    if (!left) return nullptr;
    while (code(pos_) == 0 || code(pos_) == 1) {
      const bool isAdd = code(pos_) == 0;
      ++pos_;
      auto node = std::make_unique<ExNode>();
      node->op = isAdd ? ExNode::Op::Add : ExNode::Op::Sub;
      if (rightAssoc_) {
        auto right = parseAddSub();
        if (!right) return nullptr;
        node->left = std::move(left);
        node->right = std::move(right);
        return node;
      }
      auto right = parseMul();
      if (!right) return nullptr;
      node->left = std::move(left);
      node->right = std::move(right);
      left = std::move(node);
    }
    return left;
  }

  std::unique_ptr<ExNode> parseMul() {
    auto left = parseFactor();
    if (!left) return nullptr;
    while (code(pos_) == 2) {
      ++pos_;
      auto right = parseFactor();
      if (!right) return nullptr;
      auto node = std::make_unique<ExNode>();
      node->op = ExNode::Op::Mul;
      node->left = std::move(left);
      node->right = std::move(right);
      left = std::move(node);
    }
    return left;
  }

  std::unique_ptr<ExNode> parseFactor() {
    if (code(pos_) == 3) {
      ++pos_;
      auto e = parseAddSub();
      if (!e || code(pos_) != 4) return nullptr;
      ++pos_;
      return e;
    }
    if (code(pos_) != -1) return nullptr;
    auto node = std::make_unique<ExNode>();
    node->var = seq_[pos_];
    ++pos_;
    return node;
  }

  const std::vector<int>& seq_;
  const std::vector<int>& ops_;
  bool rightAssoc_;
  std::size_t pos_ = 0;
};

std::unique_ptr<ExNode> mirrorEx(std::unique_ptr<ExNode> n) {
  if (!n || n->op == ExNode::Op::Atom) return n;
  auto l = mirrorEx(std::move(n->right));
  auto r = mirrorEx(std::move(n->left));
  n->left = std::move(l);
  n->right = std::move(r);
  return n;
}

bool flattenEx(const ExNode& n, std::vector<MTerm>& terms) {
  if (n.op == ExNode::Op::Add)
    return flattenEx(*n.left, terms) && flattenEx(*n.right, terms);
  if (n.op == ExNode::Op::Atom) {
    MTerm t;
    t.bareVar = n.var;
    terms.push_back(t);
    return true;
  }
  if (n.op == ExNode::Op::Mul) {
    if (n.left->op != ExNode::Op::Atom || n.right->op != ExNode::Op::Atom) return false;
    MTerm t;
    t.digitVar = n.left->var;
    t.powerVar = n.right->var;
    terms.push_back(t);
    return true;
  }
  return false;  // nested Sub
}

void explicitSearch(const std::vector<Equation>& equations, const SpaceConfig& space,
                    SearchContext& ctx, std::vector<Hypothesis>& out) {
  const Inventory inv = Inventory::build(equations, space.boundOperators);
  std::int64_t maxV = 1;
  for (const Equation& eq : equations) maxV = std::max(maxV, *eq.value);

  std::vector<std::vector<int>> seqs, codes;
  for (const Equation& eq : equations) {
    std::vector<int> seq, code;
    for (const std::string& t : eq.tokens) {
      if (t == "(") {
        seq.push_back(-1);
        code.push_back(3);
      } else if (t == ")") {
        seq.push_back(-1);
        code.push_back(4);
      } else if (auto it = space.boundOperators.find(t); it != space.boundOperators.end()) {
        seq.push_back(-1);
        code.push_back(it->second == OpKind::Add ? 0 : it->second == OpKind::Sub ? 1 : 2);
      } else {
        seq.push_back(inv.index.at(t));
        code.push_back(-1);
      }
    }
    seqs.push_back(std::move(seq));
    codes.push_back(std::move(code));
  }

  for (std::int64_t base = space.baseMin; base <= space.baseMax; ++base) {
    const std::int64_t maxExp = space.maxExponentFor(base, maxV);
    for (Order order : {Order::MostSignificantFirst, Order::LeastSignificantFirst}) {
      if (!space.bothOrders && order == Order::LeastSignificantFirst) continue;
      const bool lsf = order == Order::LeastSignificantFirst;

      std::vector<MSkel> skels;
      bool allValid = true;
      bool anySub = false;
      for (std::size_t e = 0; e < equations.size() && allValid; ++e) {
        // A least-significant-first emission is the mirror image of its
        // tree, so it reads back right-associative and gets mirrored.
        auto tree = ExParser(seqs[e], codes[e], lsf).run();
        if (lsf) tree = mirrorEx(std::move(tree));
        MSkel sk;
        if (tree) {
          const ExNode* root = tree.get();
          if (root->op == ExNode::Op::Sub && root->right->op == ExNode::Op::Atom) {
            sk.subVar = root->right->var;
            root = root->left.get();
          }
          if (root->op != ExNode::Op::Sub && flattenEx(*root, sk.terms) && !sk.terms.empty())
            sk.valid = true;
        }
        if (!sk.valid) allValid = false;
        if (sk.subVar >= 0) anySub = true;
        skels.push_back(std::move(sk));
      }
      if (!allValid) continue;
      if (anySub && !space.subtractive) continue;

      // Slot constraints fix most kinds: mul slots and subtracted slots are
      // digits or powers outright; a bare term is a power at the head of a
      // multi-term chain, a digit at its tail, and either when alone.
      enum class Slot { Free, Digit, Power, Conflict };
      std::vector<Slot> slot(inv.tokens.size(), Slot::Free);
      auto meet = [&](int var, Slot s) {
        if (slot[var] == Slot::Free) slot[var] = s;
        else if (slot[var] != s) slot[var] = Slot::Conflict;
      };
      bool feasible = true;
      for (const MSkel& sk : skels) {
        for (std::size_t i = 0; i < sk.terms.size(); ++i) {
          const MTerm& t = sk.terms[i];
          if (t.digitVar >= 0) {
            meet(t.digitVar, Slot::Digit);
            meet(t.powerVar, Slot::Power);
          } else if (sk.terms.size() == 1) {
            // lone bare atom: digit or power, resolved by branching
          } else if (i == 0) {
            meet(t.bareVar, Slot::Power);
          } else if (i + 1 == sk.terms.size()) {
            meet(t.bareVar, Slot::Digit);
          } else {
            feasible = false;  // interior bare atom is not canonical
          }
        }
        if (sk.subVar >= 0) meet(sk.subVar, Slot::Digit);
      }
      for (Slot s : slot)
        if (s == Slot::Conflict) feasible = false;
      if (!feasible) continue;

      std::vector<int> freeVars;
      for (std::size_t v = 0; v < slot.size(); ++v)
        if (slot[v] == Slot::Free) freeVars.push_back(static_cast<int>(v));

      std::vector<RK> kinds(inv.tokens.size(), RK::Unset);
      for (std::size_t v = 0; v < slot.size(); ++v) {
        if (slot[v] == Slot::Digit) kinds[v] = RK::D;
        else if (slot[v] == Slot::Power) kinds[v] = RK::P;
      }

      std::function<void(std::size_t)> branchFree = [&](std::size_t i) {
        if (i == freeVars.size()) {
          // bare-term roles are now concrete; re-derive barePower flags and
          // check placement before the value phases
          std::vector<MSkel> bound = skels;
          for (MSkel& sk : bound) {
            for (std::size_t ti = 0; ti < sk.terms.size(); ++ti) {
              MTerm& t = sk.terms[ti];
              if (t.bareVar < 0) continue;
              t.barePower = kinds[t.bareVar] == RK::P;
              if (t.barePower && ti != 0) return;
              if (!t.barePower && ti + 1 != sk.terms.size()) return;
            }
          }
          ValueSearch vs{equations, inv.tokens, kinds, bound, base, order, maxExp, anySub, ctx, out};
          vs.run();
          return;
        }
        const int var = freeVars[i];
        ctx.tick();
        kinds[var] = RK::D;
        branchFree(i + 1);
        ctx.tick();
        kinds[var] = RK::P;
        branchFree(i + 1);
        kinds[var] = RK::Unset;
      };
      branchFree(0);
    }
  }
}

}  // namespace

std::vector<Hypothesis> solveConsistent(const std::vector<Equation>& equations,
                                        const SpaceConfig& space, SolveStats& stats) {
  if (equations.empty()) raise(Errc::EmptyInput, "no equations");
  bool allNumeric = true, allText = true;
  for (const Equation& eq : equations) {
    if (!eq.value) allNumeric = false;
    if (!eq.text) allText = false;
  }

  SearchContext ctx;
  ctx.space = &space;
  ctx.stats = &stats;
  ctx.start = std::chrono::steady_clock::now();

  std::vector<Hypothesis> out;
  try {
    if (allNumeric) {
      if (space.explicitStructure) {
        if (space.morphological) explicitSearch(equations, space, ctx, out);
      } else {
        if (space.morphological) {
          MorphSearch search(equations, space, ctx, out);
          search.run();
        }
        if (space.positional) positionalSearch(equations, space, ctx, out);
      }
    } else if (allText && space.substitution && !space.explicitStructure) {
      substitutionSearch(equations, space, ctx, out);
    }
  } catch (const BudgetHit&) {
    // stats.budgetExceeded is set; fall through with the partial set
  }
  stats.elapsedSecs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - ctx.start).count();
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Query answering
// ---------------------------------------------------------------------------

namespace {

// Answers a query under one hypothesis; empty when the hypothesis cannot
// read the query (unknown token, no parse, leading zero).
std::vector<std::string> queryAnswers(const Hypothesis& h, const Tokens& query,
                                      const SpaceConfig& space,
                                      std::vector<std::int64_t>* values) {
  std::vector<std::string> texts;
  switch (h.flavor) {
    case Flavor::Substitution: {
      Tokens words;
      for (const std::string& t : query) {
        auto it = h.bindings.find(t);
        if (it == h.bindings.end()) return texts;
        words.push_back(it->second.word);
      }
      if (h.order == Order::LeastSignificantFirst) std::reverse(words.begin(), words.end());
      texts.push_back(joinTokens(words));
      return texts;
    }
    case Flavor::Positional: {
      std::vector<std::int64_t> digits;
      for (const std::string& t : query) {
        auto it = h.bindings.find(t);
        if (it == h.bindings.end()) return texts;
        digits.push_back(it->second.value);
      }
      if (h.order == Order::LeastSignificantFirst) std::reverse(digits.begin(), digits.end());
      if (digits.size() >= 2 && digits.front() == 0) return texts;
      std::int64_t value = 0;
      for (std::size_t i = 0; i + 1 < digits.size(); ++i) value = (value + digits[i]) * h.base;
      if (h.subtractive && digits.size() >= 2) {
        value -= digits.back();
        if (value < 0) return texts;
      } else {
        value += digits.back();
      }
      texts.push_back(std::to_string(value));
      if (values) values->push_back(value);
      return texts;
    }
    case Flavor::Morphological: {
      // Build a throwaway lexicon and reuse the grammar-layer parsers.
      NumeralSystem sys;
      sys.base = h.base;
      sys.order = h.order;
      sys.maxPower = space.maxExponent;
      sys.omitUnitMultiplier = true;
      for (const auto& [token, b] : h.bindings) {
        switch (b.kind) {
          case Kind::Digit: sys.lexicon.push_back({token, MorphemeRole::digit(b.value), false}); break;
          case Kind::Power: sys.lexicon.push_back({token, MorphemeRole::power(b.value), false}); break;
          case Kind::ConnAdd: sys.connectives[OpKind::Add] = token; break;
          case Kind::ConnSub: sys.connectives[OpKind::Sub] = token; break;
          case Kind::ConnMul: sys.connectives[OpKind::Mul] = token; break;
          case Kind::Word: return texts;
        }
      }
      if (space.explicitStructure) {
        OperatorStyle style;
        for (const auto& [word, op] : space.boundOperators) {
          if (op == OpKind::Add) style.addSurface = word;
          else if (op == OpKind::Sub) style.subSurface = word;
          else style.mulSurface = word;
        }
        Condition cond;
        cond.explicitness = Explicitness::ExplicitFamiliar;
        try {
          ExprPtr e = parseConditioned(query, sys, cond, style);
          const std::int64_t v = evaluate(e);
          texts.push_back(std::to_string(v));
          if (values) values->push_back(v);
        } catch (const Error&) {
        }
        return texts;
      }
      try {
        std::set<std::int64_t> seen;
        for (const ExprPtr& e : parseAll(query, sys)) {
          const std::int64_t v = evaluate(e);
          if (seen.insert(v).second) {
            texts.push_back(std::to_string(v));
            if (values) values->push_back(v);
          }
        }
      } catch (const Error&) {
      }
      return texts;
    }
  }
  return texts;
}

}  // namespace

SolveResult solve(const Puzzle& puzzle, const SpaceConfig& baseSpace) {
  const SpaceConfig space = spaceForPuzzle(puzzle, baseSpace);
  SolveResult result;
  std::vector<Hypothesis> consistent = solveConsistent(puzzle.equations, space, result.stats);
  result.consistentCount = consistent.size();

  if (result.stats.budgetExceeded) {
    result.status = SolveStatus::ResourceBudgetExceeded;
    return result;
  }
  if (consistent.empty()) {
    result.status = SolveStatus::Unsatisfiable;
    return result;
  }

  auto minKey = consistent.front().mdlKey();
  for (const Hypothesis& h : consistent) minKey = std::min(minKey, h.mdlKey());
  for (const Hypothesis& h : consistent)
    if (h.mdlKey() == minKey) result.survivors.push_back(h);

  std::set<std::string> texts;
  std::set<std::int64_t> values;
  for (const Hypothesis& h : result.survivors) {
    std::vector<std::int64_t> vals;
    for (const std::string& t : queryAnswers(h, puzzle.query, space, &vals)) texts.insert(t);
    for (std::int64_t v : vals) values.insert(v);
  }
  result.answerTexts.assign(texts.begin(), texts.end());
  result.answers.assign(values.begin(), values.end());
  if (result.answerTexts.empty()) result.status = SolveStatus::Unsatisfiable;
  else if (result.answerTexts.size() == 1) result.status = SolveStatus::Unique;
  else result.status = SolveStatus::Ambiguous;
  return result;
}

}  // namespace numgram
