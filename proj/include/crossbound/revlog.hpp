#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "crossbound/identity.hpp"
#include "crossbound/types.hpp"

namespace crossbound {

struct RevLogParseResult {
  std::vector<RevisionRecord> records;
  std::vector<Diagnostic> diagnostics;
};

// Newline-delimited JSON records with keys
// {revision, space, path, author, date, message}. The space key in a record
// overrides default_space. Credited participants come from cue patterns like
// "thanks to {name}" matched against roster names only.
RevLogParseResult parse_revision_log(std::istream& in, std::optional<Space> default_space,
                                     const std::vector<std::string>& credit_patterns,
                                     const Roster& roster);
RevLogParseResult parse_revision_log_file(const std::filesystem::path& path,
                                          std::optional<Space> default_space,
                                          const std::vector<std::string>& credit_patterns,
                                          const Roster& roster);

// The roster members credited by a log message under the given cue patterns.
std::vector<std::string> match_credits(const std::string& log_message,
                                       const std::vector<std::string>& credit_patterns,
                                       const Roster& roster);

}  // namespace crossbound
