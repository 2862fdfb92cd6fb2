#pragma once

#include <string>
#include <vector>

namespace crossbound {

std::string to_lower(std::string s);
std::string trim(const std::string& s);
std::string collapse_ws(const std::string& s);

// trim + collapse internal whitespace + lowercase; the canonical form used
// wherever free text is compared.
std::string normalize_text(const std::string& s);

std::vector<std::string> tokenize(const std::string& s);
std::vector<std::string> split_lines(const std::string& s);

bool icontains(const std::string& hay, const std::string& needle);
bool iequals(const std::string& a, const std::string& b);
bool starts_with(const std::string& s, const std::string& prefix);
bool ends_with(const std::string& s, const std::string& suffix);

}  // namespace crossbound
