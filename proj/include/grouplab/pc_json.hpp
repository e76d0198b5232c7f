#pragma once

#include <json.hpp>

#include "grouplab/pc.hpp"

namespace grouplab::nilpotent {

/// {"generators": [{"id", "weight", "order"}], "powers": {id: word},
///  "commutators": {"gj,gi": word}, "class": c}; words are arrays of
/// [index, exponent] with 0-based generator indices.
nlohmann::ordered_json pc_to_json(const PcPresentation& pc);

/// Validates the structure; consistency is checked by PcPresentation::create.
PcPresentation pc_from_json(const nlohmann::json& j);

}  // namespace grouplab::nilpotent
