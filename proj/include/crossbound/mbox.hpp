#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "crossbound/types.hpp"

namespace crossbound {

struct MboxParseResult {
  std::vector<Message> messages;
  std::vector<Diagnostic> diagnostics;
};

// RFC 4155-style mbox: entries delimited by "From " separator lines, with
// mboxrd ">From" unescaping applied to bodies. A malformed entry is skipped
// with a diagnostic; the rest of the file is still parsed. Senders are left
// unresolved (sender_raw only).
MboxParseResult parse_mbox(std::istream& in, const std::string& list_id);
MboxParseResult parse_mbox(const std::string& data, const std::string& list_id);
MboxParseResult parse_mbox_file(const std::filesystem::path& path, const std::string& list_id);

}  // namespace crossbound
