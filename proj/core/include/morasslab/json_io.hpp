#pragma once

#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "morasslab/efgame.hpp"
#include "morasslab/forcing.hpp"
#include "morasslab/morass.hpp"
#include "morasslab/persistency.hpp"
#include "morasslab/structures.hpp"

namespace morasslab::io {

using Json = nlohmann::ordered_json;

/// Malformed JSON documents (wrong shape, bad ordinal strings, ...).
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Json to_json(const Ordinal& a);
Ordinal ordinal_from_json(const Json& j);

Json to_json(const PiecewiseMap& f);
PiecewiseMap map_from_json(const Json& j);

/// {height, levels:[{theta, gamma, eta}], top_theta}. Reading rebuilds the
/// standard successor families.
Json to_json(const MorassFragment& frag);
MorassFragment fragment_from_json(const Json& j);

Json to_json(const ValidationReport& report);

/// {frag, blocks:{beta: rho}}
Json to_json(const Condition& p);
Condition condition_from_json(const Json& j);

/// [{block, xi}] (pairs [block, xi] are accepted as well).
Json tasks_to_json(const std::vector<BlockPoint>& tasks);
std::vector<BlockPoint> tasks_from_json(const Json& j);

/// {pairs:[[xi, alpha], ...]}
Json to_json(const PFunc& f);
PFunc pfunc_from_json(const Json& j);

Json to_json(const PersistencyTranscript& t);
PersistencyTranscript persistency_transcript_from_json(const Json& j);

/// Ordinals as strings; set elements as {layer:[...], members:[bitstrings]}
/// with the bit width of their layer.
Json to_json(const CElement& x, const LayeredUniverse& c);
CElement element_from_json(const Json& j);

Json to_json(const PartialIso& psi, const LayeredUniverse& c);
PartialIso partial_iso_from_json(const Json& j);

Json to_json(const EFChallenge& ch, const LayeredUniverse& c);
EFChallenge challenge_from_json(const Json& j);

Json to_json(const EFTranscript& t, const LayeredUniverse& c);
EFTranscript ef_transcript_from_json(const Json& j);

Json to_json(const Layer& layer);

std::string to_string(GameOutcome outcome);
GameOutcome outcome_from_string(const std::string& s);

}  // namespace morasslab::io
