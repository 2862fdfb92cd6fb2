#pragma once

#include <filesystem>
#include <set>
#include <string>

#include <json.hpp>

namespace crossbound {

// Renderers take the metrics bundle as written by cmd_analyze. Every output
// is deterministic: fixed row order, shortest round-trip number formatting.
std::string render_table1_csv(const nlohmann::json& bundle);
std::string render_table2_csv(const nlohmann::json& bundle);
std::string render_table3_csv(const nlohmann::json& bundle);
std::string render_contributions_csv(const nlohmann::json& bundle);
std::string render_quotes_csv(const nlohmann::json& bundle);
std::string render_rd_csv(const nlohmann::json& bundle);
std::string render_timeline_json(const nlohmann::json& bundle);
std::string render_attraction_dot(const nlohmann::json& bundle);

// Writes the artifacts selected by formats ({"csv","json","dot"}) into dir.
void write_reports(const nlohmann::json& bundle, const std::filesystem::path& dir,
                   const std::set<std::string>& formats);

}  // namespace crossbound
