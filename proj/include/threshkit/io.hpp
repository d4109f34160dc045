#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "threshkit/clone.hpp"
#include "threshkit/cover_opt.hpp"
#include "threshkit/threshold.hpp"
#include "threshkit/verify.hpp"

namespace threshkit::io {

using Json = nlohmann::ordered_json;

/// {"ground": [labels], "generators": [[labels], ...]}; generators are normalized.
Family family_from_json(const Json& j);
Json to_json(const Family& family);

/// Throws Parse with the file name and the parser's line/column on bad input.
Json read_json_file(const std::filesystem::path& path);
Family read_family_file(const std::filesystem::path& path);

/// List of label lists.
Json to_json(const Cover& cover, const GroundSet& ground);
Cover cover_from_json(const Json& j, const GroundSet& ground);

/// {"{1,2}": "num/den", ...}
Json to_json(const FractionalCover& cover, const GroundSet& ground);

/// {"kind", "lo", "hi", "approx"}; "approx" is a six-digit decimal midpoint for display only.
Json to_json(const Enclosure& e);
Json to_json(const Interval& iv);

/// {"base": [labels], "k": k}
Json to_json(const CloneMap& cm);
CloneMap clone_map_from_json(const Json& j);

/// {"ground": [labels], "generators": [[cycle, ...], ...]}, each cycle a list
/// of labels; the ground must match the family's.
PermutationGroup group_from_json(const Json& j, const GroundSet& ground);

Json to_json(const QcResult& r, const GroundSet& ground);
Json to_json(const QfResult& r, const GroundSet& ground);
Json to_json(const BoundReport& r);
Json to_json(const ScalingReport& r);

/// Six significant digits.
std::string approx(const Rational& r);

}  // namespace threshkit::io
