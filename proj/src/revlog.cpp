#include "crossbound/revlog.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "crossbound/datetime.hpp"
#include "crossbound/text.hpp"

namespace crossbound {

std::vector<std::string> match_credits(const std::string& log_message,
                                       const std::vector<std::string>& credit_patterns,
                                       const Roster& roster) {
  std::vector<std::string> out;
  std::string low = to_lower(log_message);
  for (const ParticipantId& p : roster.entries) {
    std::set<std::string> names;
    names.insert(to_lower(p.canonical_name));
    for (const auto& [alias, mail] : p.aliases) {
      if (!alias.empty()) names.insert(to_lower(alias));
    }
    bool hit = false;
    for (const std::string& pattern : credit_patterns) {
      size_t slot = pattern.find("{name}");
      if (slot == std::string::npos) continue;
      std::string prefix = to_lower(pattern.substr(0, slot));
      std::string suffix = to_lower(pattern.substr(slot + 6));
      for (const std::string& name : names) {
        if (low.find(prefix + name + suffix) != std::string::npos) {
          hit = true;
          break;
        }
      }
      if (hit) break;
    }
    if (hit) out.push_back(p.canonical_name);
  }
  return out;
}

RevLogParseResult parse_revision_log(std::istream& in, std::optional<Space> default_space,
                                     const std::vector<std::string>& credit_patterns,
                                     const Roster& roster) {
  RevLogParseResult result;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(t, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) {
      result.diagnostics.push_back({"revision-log", std::to_string(lineno), "malformed entry skipped"});
      continue;
    }
    RevisionRecord rec;
    try {
      rec.revision_id = j.at("revision").get<std::string>();
      if (j.contains("space")) {
        rec.space = space_from_string(j["space"].get<std::string>());
      } else if (default_space) {
        rec.space = *default_space;
      } else {
        throw std::invalid_argument("no space");
      }
      rec.path = j.value("path", "");
      auto date = parse_iso8601(j.at("date").get<std::string>());
      if (!date) throw std::invalid_argument("bad date");
      rec.date = *date;
      rec.log_message = j.value("message", "");
      rec.committer = resolve_identity(j.at("author").get<std::string>(), roster).canonical_name;
    } catch (const std::exception& e) {
      result.diagnostics.push_back(
          {"revision-log", std::to_string(lineno), std::string("malformed entry skipped: ") + e.what()});
      continue;
    }
    for (const std::string& name : match_credits(rec.log_message, credit_patterns, roster)) {
      if (name != rec.committer) rec.credited.insert(name);
    }
    result.records.push_back(std::move(rec));
  }
  return result;
}

RevLogParseResult parse_revision_log_file(const std::filesystem::path& path,
                                          std::optional<Space> default_space,
                                          const std::vector<std::string>& credit_patterns,
                                          const Roster& roster) {
  std::ifstream in(path);
  if (!in) {
    RevLogParseResult r;
    r.diagnostics.push_back({path.string(), "-", "cannot open revision log"});
    return r;
  }
  return parse_revision_log(in, default_space, credit_patterns, roster);
}

}  // namespace crossbound
