#include "numgram/puzzle.hpp"

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "numgram/english.hpp"
#include "numgram/error.hpp"

namespace numgram {

using nlohmann::json;

std::string Puzzle::bodyText() const {
  std::string out;
  for (const Equation& eq : equations) {
    out += joinTokens(eq.tokens);
    out += " = ";
    if (eq.text) {
      out += *eq.text;
    } else if (meta.revealedAs == "words") {
      out += englishNumber(*eq.value);
    } else {
      out += std::to_string(*eq.value);
    }
    out += '\n';
  }
  out += joinTokens(query);
  out += " = ??";
  return out;
}

std::string Puzzle::promptText(const ConditionConfig& config) const {
  PromptMeta pm{meta.language, meta.base};
  return decoratePrompt(bodyText(), condition, pm, config);
}

namespace {

json conditionToJson(const Condition& c) {
  return {{"explicitness", explicitnessName(c.explicitness)},
          {"variableWidth", widthName(c.variableWidth)},
          {"contextHint", hintName(c.contextHint)}};
}

Condition conditionFromJson(const json& j) {
  Condition c;
  c.explicitness = explicitnessFromName(j.at("explicitness").get<std::string>());
  c.variableWidth = widthFromName(j.at("variableWidth").get<std::string>());
  c.contextHint = hintFromName(j.at("contextHint").get<std::string>());
  c.validate();
  return c;
}

}  // namespace

std::string Puzzle::toJson(int indent) const {
  json eqs = json::array();
  for (const Equation& eq : equations) {
    json e;
    e["tokens"] = eq.tokens;
    if (eq.value) e["value"] = *eq.value;
    if (eq.text) e["text"] = *eq.text;
    eqs.push_back(e);
  }
  json ops = json::object();
  for (const auto& [op, word] : meta.operators) ops[opName(op)] = word;
  json m = {{"id", meta.id},         {"kind", meta.kind},
            {"language", meta.language}, {"base", meta.base},
            {"seed", meta.seed},     {"operators", ops},
            {"revealedAs", meta.revealedAs}};
  if (!meta.paradigm.empty()) m["paradigm"] = meta.paradigm;
  if (!meta.setting.empty()) m["setting"] = meta.setting;
  if (!meta.symbolMode.empty()) m["symbolMode"] = meta.symbolMode;
  json j = {{"equations", eqs},
            {"query", query},
            {"condition", conditionToJson(condition)},
            {"meta", m},
            {"seed", seed}};
  return j.dump(indent);
}

namespace {

OpKind opFromName(const std::string& name) {
  if (name == "add") return OpKind::Add;
  if (name == "sub") return OpKind::Sub;
  if (name == "mul") return OpKind::Mul;
  raise(Errc::IoFailure, "unknown operator name '" + name + "'");
}

}  // namespace

Puzzle Puzzle::fromJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    raise(Errc::IoFailure, std::string("bad puzzle JSON: ") + e.what());
  }
  Puzzle p;
  try {
    for (const json& e : j.at("equations")) {
      Equation eq;
      eq.tokens = e.at("tokens").get<Tokens>();
      if (e.contains("value")) eq.value = e.at("value").get<std::int64_t>();
      if (e.contains("text")) eq.text = e.at("text").get<std::string>();
      if (!eq.value && !eq.text) raise(Errc::IoFailure, "equation without value or text");
      p.equations.push_back(std::move(eq));
    }
    p.query = j.at("query").get<Tokens>();
    p.condition = conditionFromJson(j.at("condition"));
    const json& m = j.at("meta");
    p.meta.id = m.at("id").get<std::string>();
    p.meta.kind = m.at("kind").get<std::string>();
    p.meta.language = m.at("language").get<std::string>();
    p.meta.base = m.at("base").get<std::int64_t>();
    p.meta.seed = m.at("seed").get<std::uint64_t>();
    for (const auto& [op, word] : m.at("operators").items())
      p.meta.operators[opFromName(op)] = word.get<std::string>();
    p.meta.revealedAs = m.at("revealedAs").get<std::string>();
    p.meta.paradigm = m.value("paradigm", "");
    p.meta.setting = m.value("setting", "");
    p.meta.symbolMode = m.value("symbolMode", "");
    p.seed = j.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    raise(Errc::IoFailure, std::string("bad puzzle JSON: ") + e.what());
  }
  return p;
}

std::string GroundTruth::toJson(int indent) const {
  json j;
  if (system) j["system"] = json::parse(system->toJson());
  if (positional) {
    j["positional"] = {{"base", positional->base},
                       {"order", orderName(positional->order)},
                       {"subtractive", positional->subtractive},
                       {"digits", positional->digits}};
  }
  if (substitution) {
    j["substitution"] = {{"order", orderName(substitution->order)},
                         {"words", substitution->words}};
  }
  if (answerValue) j["answerValue"] = *answerValue;
  j["answerText"] = answerText;
  return j.dump(indent);
}

GroundTruth GroundTruth::fromJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    raise(Errc::IoFailure, std::string("bad sidecar JSON: ") + e.what());
  }
  GroundTruth t;
  try {
    if (j.contains("system")) t.system = NumeralSystem::fromJson(j.at("system").dump());
    if (j.contains("positional")) {
      Positional p;
      const json& pj = j.at("positional");
      p.base = pj.at("base").get<std::int64_t>();
      p.order = orderFromName(pj.at("order").get<std::string>());
      p.subtractive = pj.at("subtractive").get<bool>();
      p.digits = pj.at("digits").get<std::map<std::string, std::int64_t>>();
      t.positional = p;
    }
    if (j.contains("substitution")) {
      Substitution s;
      const json& sj = j.at("substitution");
      s.order = orderFromName(sj.at("order").get<std::string>());
      s.words = sj.at("words").get<std::map<std::string, std::string>>();
      t.substitution = s;
    }
    if (j.contains("answerValue")) t.answerValue = j.at("answerValue").get<std::int64_t>();
    t.answerText = j.at("answerText").get<std::string>();
  } catch (const json::exception& e) {
    raise(Errc::IoFailure, std::string("bad sidecar JSON: ") + e.what());
  }
  return t;
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::IoFailure, "cannot open '" + path + "'");
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return content;
}

void writeFileAtomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) raise(Errc::IoFailure, "cannot write '" + tmp.string() + "'");
    out << content;
  }
  fs::rename(tmp, target);
}

}  // namespace numgram
