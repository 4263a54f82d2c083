#include "morasslab/json_io.hpp"

#include <algorithm>

namespace morasslab::io {

namespace {

template <typename T>
T get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

CatalogIndex parse_bits(const std::string& bits) {
  CatalogIndex x = 0;
  if (bits.size() > 31) throw FormatError("bit string too long");
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw FormatError("bad bit string '" + bits + "'");
    x = (x << 1) | static_cast<CatalogIndex>(ch == '1');
  }
  return x;
}

}  // namespace

Json to_json(const Ordinal& a) { return a.to_string(); }

Ordinal ordinal_from_json(const Json& j) {
  if (!j.is_string()) throw FormatError("ordinal must be a string, got " + j.dump());
  try {
    return Ordinal::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw FormatError(e.what());
  }
}

Json to_json(const PiecewiseMap& f) {
  Json pieces = Json::array();
  for (const auto& p : f.pieces()) {
    pieces.push_back({{"lo", to_json(p.lo)}, {"hi", to_json(p.hi)}, {"image_lo", to_json(p.image_lo)}});
  }
  return {{"source", to_json(f.source_theta())}, {"target", to_json(f.target_theta())}, {"pieces", pieces}};
}

PiecewiseMap map_from_json(const Json& j) {
  std::vector<Piece> pieces;
  for (const auto& p : field(j, "pieces")) {
    pieces.push_back({ordinal_from_json(field(p, "lo")), ordinal_from_json(field(p, "hi")),
                      ordinal_from_json(field(p, "image_lo"))});
  }
  try {
    return PiecewiseMap(std::move(pieces), ordinal_from_json(field(j, "source")),
                        ordinal_from_json(field(j, "target")));
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(e.what());
  }
}

Json to_json(const MorassFragment& frag) {
  Json levels = Json::array();
  for (const auto& lv : frag.levels()) {
    levels.push_back({{"theta", to_json(lv.theta)}, {"gamma", to_json(lv.gamma)}, {"eta", to_json(lv.eta)}});
  }
  return {{"height", frag.height()}, {"levels", levels}, {"top_theta", to_json(frag.top_theta())}};
}

MorassFragment fragment_from_json(const Json& j) {
  const auto height = get<std::uint64_t>(j, "height");
  const Json& levels_json = field(j, "levels");
  if (!levels_json.is_array() || levels_json.size() != height) {
    throw FormatError("fragment height " + std::to_string(height) + " does not match the level list");
  }
  std::vector<LevelData> levels;
  for (const auto& lv : levels_json) {
    levels.push_back({ordinal_from_json(field(lv, "theta")), ordinal_from_json(field(lv, "gamma")),
                      ordinal_from_json(field(lv, "eta"))});
  }
  return MorassFragment(std::move(levels), ordinal_from_json(field(j, "top_theta")));
}

Json to_json(const ValidationReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) violations.push_back({{"kind", to_string(v.kind)}, {"detail", v.detail}});
  return {{"ok", report.ok()}, {"violations", violations}, {"notes", report.notes}};
}

Json to_json(const Condition& p) {
  Json blocks = Json::object();
  for (const auto& [beta, rho] : p.a.blocks()) blocks[std::to_string(beta)] = to_json(rho);
  return {{"frag", to_json(p.frag)}, {"blocks", blocks}};
}

Condition condition_from_json(const Json& j) {
  std::map<BlockIndex, Ordinal> rho;
  const Json& blocks = field(j, "blocks");
  if (!blocks.is_object()) throw FormatError("blocks must be an object");
  for (const auto& [key, value] : blocks.items()) {
    std::size_t used = 0;
    unsigned long beta = 0;
    try {
      beta = std::stoul(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != key.size()) throw FormatError("bad block index '" + key + "'");
    rho[static_cast<BlockIndex>(beta)] = ordinal_from_json(value);
  }
  return Condition{fragment_from_json(field(j, "frag")), BlockMap(std::move(rho))};
}

Json tasks_to_json(const std::vector<BlockPoint>& tasks) {
  Json out = Json::array();
  for (const auto& t : tasks) out.push_back({{"block", t.block}, {"xi", to_json(t.xi)}});
  return out;
}

std::vector<BlockPoint> tasks_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("task list must be an array");
  std::vector<BlockPoint> out;
  for (const auto& t : j) {
    if (t.is_array() && t.size() == 2 && t[0].is_number_unsigned()) {
      out.push_back({t[0].get<BlockIndex>(), ordinal_from_json(t[1])});
    } else {
      out.push_back({get<BlockIndex>(t, "block"), ordinal_from_json(field(t, "xi"))});
    }
  }
  return out;
}

Json to_json(const PFunc& f) {
  Json pairs = Json::array();
  for (const auto& [xi, alpha] : f) pairs.push_back(Json::array({to_json(xi), alpha}));
  return {{"pairs", pairs}};
}

PFunc pfunc_from_json(const Json& j) {
  PFunc f;
  for (const auto& pr : field(j, "pairs")) {
    if (!pr.is_array() || pr.size() != 2 || !pr[1].is_number_unsigned()) throw FormatError("bad pair " + pr.dump());
    f[ordinal_from_json(pr[0])] = pr[1].get<LevelIndex>();
  }
  return f;
}

std::string to_string(GameOutcome outcome) {
  return outcome == GameOutcome::kExistsWins ? "win-for-exists" : "stuck";
}

GameOutcome outcome_from_string(const std::string& s) {
  if (s == "win-for-exists") return GameOutcome::kExistsWins;
  if (s == "stuck") return GameOutcome::kStuck;
  throw FormatError("unknown outcome '" + s + "'");
}

Json to_json(const PersistencyTranscript& t) {
  Json rounds = Json::array();
  for (const auto& r : t.rounds) rounds.push_back({{"challenge", to_json(r.challenge)}, {"response", to_json(r.response)}});
  Json out = {{"rounds", rounds}, {"outcome", to_string(t.outcome)}};
  if (t.outcome == GameOutcome::kStuck) {
    out["stuck_round"] = t.stuck_round;
    out["diagnostic"] = t.diagnostic;
  }
  return out;
}

PersistencyTranscript persistency_transcript_from_json(const Json& j) {
  PersistencyTranscript t;
  for (const auto& r : field(j, "rounds")) {
    t.rounds.push_back({ordinal_from_json(field(r, "challenge")), pfunc_from_json(field(r, "response"))});
  }
  t.outcome = outcome_from_string(get<std::string>(j, "outcome"));
  if (t.outcome == GameOutcome::kStuck) {
    t.stuck_round = get<std::size_t>(j, "stuck_round");
    t.diagnostic = get<std::string>(j, "diagnostic");
  }
  return t;
}

Json to_json(const CElement& x, const LayeredUniverse& c) {
  if (const auto* xi = std::get_if<Ordinal>(&x)) return to_json(*xi);
  const auto& s = std::get<SetElement>(x);
  Json layer = Json::array();
  for (const auto& y : s.layer) layer.push_back(to_json(y));
  const auto lay = c.layer(s.layer);
  Json members = Json::array();
  for (CatalogIndex m : s.members) members.push_back(lay->bitstring(m));
  return {{"layer", layer}, {"members", members}};
}

CElement element_from_json(const Json& j) {
  if (j.is_string()) return ordinal_from_json(j);
  SetElement s;
  std::vector<Ordinal> layer;
  for (const auto& y : field(j, "layer")) layer.push_back(ordinal_from_json(y));
  s.layer = make_layer_key(layer);
  if (s.layer.size() != layer.size()) throw FormatError("layer lists a point twice");
  std::vector<CatalogIndex> members;
  for (const auto& m : field(j, "members")) {
    if (!m.is_string()) throw FormatError("members must be bit strings");
    members.push_back(parse_bits(m.get<std::string>()));
  }
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end()) throw FormatError("repeated member");
  s.members = std::move(members);
  return s;
}

Json to_json(const PartialIso& psi, const LayeredUniverse& c) {
  Json out = Json::array();
  for (const auto& [x, y] : psi) out.push_back(Json::array({to_json(x, c), to_json(y, c)}));
  return out;
}

PartialIso partial_iso_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("partial isomorphism must be a list of pairs");
  PartialIso psi;
  for (const auto& pr : j) {
    if (!pr.is_array() || pr.size() != 2) throw FormatError("bad pair " + pr.dump());
    psi.emplace(element_from_json(pr[0]), element_from_json(pr[1]));
  }
  return psi;
}

Json to_json(const EFChallenge& ch, const LayeredUniverse& c) {
  Json a = Json::array();
  Json b = Json::array();
  for (const auto& x : ch.from_a) a.push_back(to_json(x, c));
  for (const auto& x : ch.from_b) b.push_back(to_json(x, c));
  return {{"a", a}, {"b", b}};
}

EFChallenge challenge_from_json(const Json& j) {
  EFChallenge ch;
  if (j.is_object() && j.contains("a")) {
    for (const auto& x : j.at("a")) ch.from_a.push_back(element_from_json(x));
  }
  if (j.is_object() && j.contains("b")) {
    for (const auto& x : j.at("b")) ch.from_b.push_back(element_from_json(x));
  }
  if (!j.is_object()) throw FormatError("challenge must be an object with lists 'a' and 'b'");
  return ch;
}

Json to_json(const EFTranscript& t, const LayeredUniverse& c) {
  Json rounds = Json::array();
  for (const auto& r : t.rounds) {
    rounds.push_back({{"challenge", to_json(r.challenge, c)}, {"response", to_json(r.response, c)}});
  }
  Json out = {{"rounds", rounds}, {"outcome", to_string(t.outcome)}};
  if (t.outcome == GameOutcome::kStuck) {
    out["lost_round"] = t.lost_round;
    out["diagnostic"] = t.diagnostic;
  }
  return out;
}

EFTranscript ef_transcript_from_json(const Json& j) {
  EFTranscript t;
  for (const auto& r : field(j, "rounds")) {
    t.rounds.push_back({challenge_from_json(field(r, "challenge")), partial_iso_from_json(field(r, "response"))});
  }
  t.outcome = outcome_from_string(get<std::string>(j, "outcome"));
  if (t.outcome == GameOutcome::kStuck) {
    t.lost_round = get<std::size_t>(j, "lost_round");
    t.diagnostic = get<std::string>(j, "diagnostic");
  }
  return t;
}

Json to_json(const Layer& layer) {
  Json u = Json::array();
  for (const auto& x : layer.u()) u.push_back(to_json(x));
  Json catalog = Json::array();
  for (CatalogIndex x = 0; x < layer.size(); ++x) {
    catalog.push_back({{"index", layer.bitstring(x)}, {"function", to_json(layer.function(x))}});
  }
  return {{"layer", u}, {"size", layer.size()}, {"bits", layer.bits()}, {"catalog", catalog}};
}

}  // namespace morasslab::io
