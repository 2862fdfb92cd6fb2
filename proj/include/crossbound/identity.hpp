#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "crossbound/types.hpp"

namespace crossbound {

struct ParsedAddress {
  std::string name;
  std::string email;
  bool ok = false;  // false when the header could not be parsed at all
};

// "Name <a@b>", "a@b (Name)", bare addresses, quoted display names.
ParsedAddress parse_address(const std::string& raw);

struct Roster {
  std::vector<ParticipantId> entries;

  const ParticipantId* find_by_email(const std::string& email) const;
  const ParticipantId* find_by_name(const std::string& name) const;
  const ParticipantId* find_canonical(const std::string& canonical) const;

  // Throws std::invalid_argument when alias sets overlap between entries.
  void validate() const;

  static Roster load(const std::filesystem::path& path);
};

// Email match beats name match beats no match. Unknown senders get a fresh
// ParticipantId with role Unknown whose canonical name is the lowercased
// parsed display name (or address when there is no name). An unparseable
// header yields a flagged id carrying the raw string.
ParticipantId resolve_identity(const std::string& sender_raw, const Roster& roster);

}  // namespace crossbound
