#pragma once

#include <json.hpp>

#include "kr/extension.hpp"

namespace kr {

// JSON forms of the constructed objects, with polynomials as canonical text.
// Every *_from_json runs the same verification as the original construction,
// so a tampered artifact is rejected, not adopted. Round-trips are stable:
// to_json(from_json(j)) == j for every j these functions emit.

// Word: array of generator records, leftmost generator outermost.
//   {"kind":"zshear","poly":<text>} | {"kind":"tshear","poly":<text>} |
//   {"kind":"scale","a":<rational>,"b":<rational>}
nlohmann::json word_to_json(const AutWord& w);
AutWord word_from_json(const nlohmann::json& j, const VarTablePtr& table = VarTable::standard());

// Automorphism of X: parameters, the four images, the four inverse images,
// and the provenance string.
nlohmann::json aut_to_json(const ThreefoldAut& f);
ThreefoldAut aut_from_json(const nlohmann::json& j,
                           const VarTablePtr& table = VarTable::standard());

// Ambient automorphism: as above plus the certificates alpha, beta, quotient.
nlohmann::json ambient_to_json(const AmbientAut& f);
AmbientAut ambient_from_json(const nlohmann::json& j,
                             const VarTablePtr& table = VarTable::standard());

} // namespace kr
