#pragma once

#include <string>
#include <utility>
#include <vector>

namespace crossbound {

// Unfolded RFC 5322 header fields in file order, names lowercased.
struct HeaderBlock {
  std::vector<std::pair<std::string, std::string>> fields;

  // First value for a name, or "" when absent.
  std::string get(const std::string& lower_name) const;
  bool has(const std::string& lower_name) const;
};

// Splits raw header text (up to but excluding the blank line) into fields.
HeaderBlock parse_headers(const std::string& raw);

std::string decode_quoted_printable(const std::string& s, bool underscore_is_space);
std::string decode_base64(const std::string& s);

// RFC 2047 encoded words in header values; charset is passed through as bytes.
std::string decode_rfc2047(const std::string& s);

// Applies Content-Transfer-Encoding and flattens multipart containers,
// keeping only text parts. Non-text attachments are dropped.
std::string extract_text_body(const HeaderBlock& headers, const std::string& raw_body);

}  // namespace crossbound
