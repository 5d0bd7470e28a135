#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "circq/circulant.hpp"

namespace circq {

/// Reads {"name", "A", "B", "C", "domain": {"min": [4], "max": [4]}}.
/// Throws InvalidArgument for schema violations and ParseError for bad
/// expressions.
ManifoldSpec spec_from_json(const nlohmann::json& doc);
ManifoldSpec spec_from_string(std::string_view text);
ManifoldSpec load_spec(const std::filesystem::path& path);

nlohmann::ordered_json spec_to_json(const ManifoldSpec& spec);

}  // namespace circq
