#pragma once
//
// JSON formats for walks and states. Complex numbers are [re, im] pairs.
//
//   walk:  {"coins": [{"x": 0, "matrix": [[[re, im], [re, im]], [[re, im], [re, im]]]},
//                     {"x": 5, "rotation": 0.7071}]}
//   state: {"amplitudes": [{"x": 1, "L": [re, im], "R": [re, im]}]}
//

#include "qwres/walk.hpp"

#include <json.hpp>

#include <string>

namespace qwres {

using json = nlohmann::ordered_json;

json to_json(cplx z);
// Accepts [re, im] or a plain number; `where` prefixes error messages.
cplx complex_from_json(const json& j, const std::string& where);

json walk_to_json(const CoinSequence& coins);
json state_to_json(const WalkState& psi);
// Throw DomainError naming the offending element.
CoinSequence walk_from_json(const json& j);
WalkState state_from_json(const json& j);

// Parses a file; malformed JSON raises DomainError with line and column.
json read_json_file(const std::string& path);
CoinSequence read_walk(const std::string& path);
WalkState read_state(const std::string& path);

// Writes to path.tmp and renames over path.
void write_text_atomic(const std::string& path, const std::string& text);

} // namespace qwres
