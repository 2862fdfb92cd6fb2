#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "crossbound/identity.hpp"
#include "crossbound/types.hpp"

namespace crossbound {

inline constexpr int kSchemaVersion = 1;

struct StoreError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// temp file + rename, so readers never observe a half-written file
void write_json_atomic(const std::filesystem::path& path, const nlohmann::json& j);
void write_text_atomic(const std::filesystem::path& path, const std::string& text);
nlohmann::json read_json(const std::filesystem::path& path);  // throws StoreError

nlohmann::json message_to_json(const Message& m);
Message message_from_json(const nlohmann::json& j);

nlohmann::json discussion_to_json(const Discussion& d);
Discussion discussion_from_json(const nlohmann::json& j);

nlohmann::json selection_to_json(const CorpusSelection& s);
CorpusSelection selection_from_json(const nlohmann::json& j);

nlohmann::json revision_to_json(const RevisionRecord& r);
RevisionRecord revision_from_json(const nlohmann::json& j);

nlohmann::json roster_to_json(const Roster& r);
Roster roster_from_json(const nlohmann::json& j);

nlohmann::json diagnostic_to_json(const Diagnostic& d);

struct StorePaths {
  std::filesystem::path root;  // <output_dir>/store

  std::filesystem::path meta() const { return root / "meta.json"; }
  std::filesystem::path messages() const { return root / "messages.json"; }
  std::filesystem::path roster() const { return root / "roster.json"; }
  std::filesystem::path revisions() const { return root / "revisions.json"; }
  std::filesystem::path diagnostics() const { return root / "diagnostics.json"; }
  std::filesystem::path selection(const std::string& corpus) const {
    return root / ("selection-" + corpus + ".json");
  }
  std::filesystem::path discussions(const std::string& corpus) const {
    return root / ("discussions-" + corpus + ".json");
  }
};

}  // namespace crossbound
