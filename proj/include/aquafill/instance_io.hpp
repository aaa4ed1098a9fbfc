#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "aquafill/sequence.hpp"

namespace aquafill {

// File format:
//   {"n": 4, "arrivals": [{"neighbors": [2, 4], "q": "2"}, ...]}
// Node ids are 1-indexed. Quantities are rational strings, either "p/q" or
// a decimal literal with at most 12 fractional digits; writers always emit
// the canonical "p/q" form.

nlohmann::ordered_json instance_to_json(const RequestSequence& sequence);
RequestSequence instance_from_json(const nlohmann::json& j);

RequestSequence parse_instance(std::string_view text);
std::string serialize_instance(const RequestSequence& sequence);

RequestSequence load_instance(const std::filesystem::path& path);
void save_instance(const RequestSequence& sequence, const std::filesystem::path& path);

}  // namespace aquafill
