#include "numgram/numeral_system.hpp"

#include <set>

#include <nlohmann/json.hpp>

#include "numgram/error.hpp"

namespace numgram {

using nlohmann::json;

const char* orderName(Order order) {
  return order == Order::MostSignificantFirst ? "most-significant-first"
                                              : "least-significant-first";
}

Order orderFromName(const std::string& name) {
  if (name == "most-significant-first") return Order::MostSignificantFirst;
  if (name == "least-significant-first") return Order::LeastSignificantFirst;
  raise(Errc::InvalidSystem, "unknown order '" + name + "'");
}

void NumeralSystem::validate() const {
  if (base < 2) raise(Errc::InvalidSystem, "base must be >= 2");
  if (maxPower < 1) raise(Errc::InvalidSystem, "maxPower must be >= 1");
  if (subtractiveThreshold < 0 || subtractiveThreshold >= base)
    raise(Errc::InvalidSystem, "subtractiveThreshold must be in [0, base)");

  std::set<std::string> surfaces;
  std::set<std::int64_t> digits;
  std::set<std::int64_t> powers;
  int zeros = 0;
  for (const auto& m : lexicon) {
    validateMorpheme(m);
    if (!surfaces.insert(m.surface).second)
      raise(Errc::InvalidSystem, "duplicate surface '" + m.surface + "'");
    switch (m.role.kind) {
      case RoleKind::Digit:
        if (m.role.value < 1 || m.role.value >= base)
          raise(Errc::InvalidSystem, "digit value out of 1..base-1");
        if (!digits.insert(m.role.value).second)
          raise(Errc::InvalidSystem, "duplicate digit value " + std::to_string(m.role.value));
        break;
      case RoleKind::Power:
        if (m.role.value < 1 || m.role.value > maxPower)
          raise(Errc::InvalidSystem, "power exponent out of 1..maxPower");
        if (!powers.insert(m.role.value).second)
          raise(Errc::InvalidSystem, "duplicate power exponent " + std::to_string(m.role.value));
        break;
      case RoleKind::Zero:
        if (++zeros > 1) raise(Errc::InvalidSystem, "more than one zero morpheme");
        break;
      case RoleKind::Connective:
        raise(Errc::InvalidSystem, "connectives belong in the connectives field, not the lexicon");
    }
  }
  if (static_cast<std::int64_t>(digits.size()) != base - 1)
    raise(Errc::InvalidSystem, "lexicon must cover every digit 1..base-1");
  if (static_cast<std::int64_t>(powers.size()) != maxPower)
    raise(Errc::InvalidSystem, "lexicon must cover every power 1..maxPower");
  for (const auto& [op, word] : connectives) {
    Morpheme m{word, MorphemeRole::connective(op), false};
    validateMorpheme(m);
    if (!surfaces.insert(word).second)
      raise(Errc::InvalidSystem, "connective surface collides: '" + word + "'");
  }
  if (subtractiveThreshold > 0 && connectives.find(OpKind::Sub) == connectives.end())
    raise(Errc::InvalidSystem, "subtractive systems need an overt sub connective");
}

const Morpheme* NumeralSystem::digit(std::int64_t value) const {
  for (const auto& m : lexicon)
    if (m.role.kind == RoleKind::Digit && m.role.value == value) return &m;
  return nullptr;
}

const Morpheme* NumeralSystem::power(std::int64_t exponent) const {
  for (const auto& m : lexicon)
    if (m.role.kind == RoleKind::Power && m.role.value == exponent) return &m;
  return nullptr;
}

const Morpheme* NumeralSystem::zero() const {
  for (const auto& m : lexicon)
    if (m.role.kind == RoleKind::Zero) return &m;
  return nullptr;
}

const Morpheme* NumeralSystem::bySurface(const std::string& surface) const {
  for (const auto& m : lexicon)
    if (m.surface == surface) return &m;
  return nullptr;
}

std::optional<OpKind> NumeralSystem::connectiveFor(const std::string& surface) const {
  for (const auto& [op, word] : connectives)
    if (word == surface) return op;
  return std::nullopt;
}

std::int64_t NumeralSystem::maxValue() const {
  std::int64_t v = 1;
  for (std::int64_t i = 0; i <= maxPower; ++i) v *= base;
  return v - 1;
}

std::string NumeralSystem::toJson(int indent) const {
  json lex = json::object();
  for (const auto& m : lexicon) {
    json role;
    switch (m.role.kind) {
      case RoleKind::Digit: role = {{"role", "digit"}, {"value", m.role.value}}; break;
      case RoleKind::Power: role = {{"role", "power"}, {"exponent", m.role.value}}; break;
      case RoleKind::Zero: role = {{"role", "zero"}}; break;
      case RoleKind::Connective: role = {{"role", "connective"}, {"op", opName(m.role.op)}}; break;
    }
    if (m.glyph) role["glyph"] = true;
    lex[m.surface] = role;
  }
  json conn = json::object();
  for (const auto& [op, word] : connectives) conn[opName(op)] = word;
  json j = {{"base", base},
            {"order", orderName(order)},
            {"lexicon", lex},
            {"subtractiveThreshold", subtractiveThreshold},
            {"connectives", conn},
            {"maxPower", maxPower},
            {"omitUnitMultiplier", omitUnitMultiplier}};
  return j.dump(indent);
}

static OpKind opFromName(const std::string& name) {
  if (name == "add") return OpKind::Add;
  if (name == "sub") return OpKind::Sub;
  if (name == "mul") return OpKind::Mul;
  raise(Errc::InvalidSystem, "unknown connective op '" + name + "'");
}

NumeralSystem NumeralSystem::fromJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    raise(Errc::IoFailure, std::string("bad system JSON: ") + e.what());
  }
  NumeralSystem sys;
  try {
    sys.base = j.at("base").get<std::int64_t>();
    sys.order = orderFromName(j.at("order").get<std::string>());
    sys.maxPower = j.at("maxPower").get<std::int64_t>();
    sys.subtractiveThreshold = j.at("subtractiveThreshold").get<std::int64_t>();
    sys.omitUnitMultiplier = j.at("omitUnitMultiplier").get<bool>();
    for (const auto& [surface, role] : j.at("lexicon").items()) {
      Morpheme m;
      m.surface = surface;
      m.glyph = role.value("glyph", false);
      const std::string kind = role.at("role").get<std::string>();
      if (kind == "digit") m.role = MorphemeRole::digit(role.at("value").get<std::int64_t>());
      else if (kind == "power") m.role = MorphemeRole::power(role.at("exponent").get<std::int64_t>());
      else if (kind == "zero") m.role = MorphemeRole::zero();
      else raise(Errc::InvalidSystem, "unknown lexicon role '" + kind + "'");
      sys.lexicon.push_back(std::move(m));
    }
    for (const auto& [op, word] : j.at("connectives").items())
      sys.connectives[opFromName(op)] = word.get<std::string>();
  } catch (const json::exception& e) {
    raise(Errc::IoFailure, std::string("bad system JSON: ") + e.what());
  }
  sys.validate();
  return sys;
}

// Letter-indexed placeholder ("da", "db", ..., "dza", ...): morpheme
// surfaces must stay digit-free.
static std::string placeholder(char prefix, std::int64_t index) {
  std::string s(1, prefix);
  if (index > 26) s += 'z';
  std::int64_t i = (index - 1) % 26;
  s += static_cast<char>('a' + i);
  return s;
}

NumeralSystem makeSystem(const SystemTemplate& spec) {
  if (spec.base > 52) raise(Errc::UnsupportedBase, "placeholder lexicon covers bases up to 52");
  NumeralSystem sys;
  sys.base = spec.base;
  sys.order = spec.order;
  sys.maxPower = spec.maxPower;
  sys.subtractiveThreshold = spec.subtractiveThreshold;
  sys.omitUnitMultiplier = spec.omitUnitMultiplier;
  for (std::int64_t v = 1; v < spec.base; ++v)
    sys.lexicon.push_back({placeholder('d', v), MorphemeRole::digit(v), false});
  for (std::int64_t e = 1; e <= spec.maxPower; ++e)
    sys.lexicon.push_back({placeholder('q', e), MorphemeRole::power(e), false});
  if (spec.overtAdd) sys.connectives[OpKind::Add] = "ca";
  if (spec.overtMul) sys.connectives[OpKind::Mul] = "cm";
  if (spec.subtractiveThreshold > 0) sys.connectives[OpKind::Sub] = "cs";
  sys.validate();
  return sys;
}

}  // namespace numgram
