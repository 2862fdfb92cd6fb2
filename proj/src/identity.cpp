#include "crossbound/identity.hpp"

#include <fstream>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "crossbound/text.hpp"

namespace crossbound {

ParsedAddress parse_address(const std::string& raw) {
  ParsedAddress out;
  std::string s = trim(raw);
  if (s.empty()) return out;

  size_t lt = s.find('<');
  size_t gt = s.find('>', lt == std::string::npos ? 0 : lt);
  if (lt != std::string::npos && gt != std::string::npos && gt > lt) {
    out.email = trim(s.substr(lt + 1, gt - lt - 1));
    out.name = trim(s.substr(0, lt));
  } else {
    size_t po = s.find('(');
    size_t pc = s.find(')', po == std::string::npos ? 0 : po);
    if (po != std::string::npos && pc != std::string::npos && pc > po) {
      // "addr (Display Name)"
      out.email = trim(s.substr(0, po));
      out.name = trim(s.substr(po + 1, pc - po - 1));
    } else if (s.find('@') != std::string::npos && s.find(' ') == std::string::npos) {
      out.email = s;
    } else {
      out.name = s;
    }
  }
  // strip quotes around display names
  if (out.name.size() >= 2 && out.name.front() == '"' && out.name.back() == '"') {
    out.name = trim(out.name.substr(1, out.name.size() - 2));
  }
  // "a at b.org" obfuscation used by some archives
  if (out.email.empty() && out.name.find(" at ") != std::string::npos &&
      out.name.find(' ') != std::string::npos) {
    std::string candidate = out.name;
    size_t at = candidate.find(" at ");
    std::string local = trim(candidate.substr(0, at));
    std::string domain = trim(candidate.substr(at + 4));
    if (!local.empty() && local.find(' ') == std::string::npos && domain.find('.') != std::string::npos &&
        domain.find(' ') == std::string::npos) {
      out.email = local + "@" + domain;
      out.name.clear();
    }
  }
  out.ok = !out.name.empty() || !out.email.empty();
  return out;
}

const ParticipantId* Roster::find_by_email(const std::string& email) const {
  if (email.empty()) return nullptr;
  for (const auto& entry : entries) {
    for (const auto& [name, mail] : entry.aliases) {
      if (iequals(mail, email)) return &entry;
    }
  }
  return nullptr;
}

const ParticipantId* Roster::find_by_name(const std::string& name) const {
  if (name.empty()) return nullptr;
  for (const auto& entry : entries) {
    if (iequals(entry.canonical_name, name)) return &entry;
    for (const auto& [alias, mail] : entry.aliases) {
      if (iequals(alias, name)) return &entry;
    }
  }
  return nullptr;
}

const ParticipantId* Roster::find_canonical(const std::string& canonical) const {
  for (const auto& entry : entries) {
    if (entry.canonical_name == canonical) return &entry;
  }
  return nullptr;
}

void Roster::validate() const {
  std::map<std::string, size_t> name_owner;
  std::map<std::string, size_t> email_owner;
  auto claim = [](std::map<std::string, size_t>& owner, const std::string& key, size_t idx,
                  const char* kind) {
    if (key.empty()) return;
    auto [it, inserted] = owner.emplace(key, idx);
    if (!inserted && it->second != idx) {
      throw std::invalid_argument(std::string(kind) + " shared between roster entries: " + key);
    }
  };
  for (size_t i = 0; i < entries.size(); ++i) {
    const auto& entry = entries[i];
    if (entry.canonical_name.empty()) {
      throw std::invalid_argument("roster entry with empty canonical_name");
    }
    claim(name_owner, to_lower(entry.canonical_name), i, "name");
    for (const auto& [alias, mail] : entry.aliases) {
      claim(name_owner, to_lower(alias), i, "alias name");
      claim(email_owner, to_lower(mail), i, "alias email");
    }
  }
}

Roster Roster::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open roster file: " + path.string());
  nlohmann::json j = nlohmann::json::parse(in);
  const nlohmann::json& arr = j.is_array() ? j : j.at("participants");
  Roster roster;
  for (const auto& item : arr) {
    ParticipantId p;
    p.canonical_name = item.at("canonical_name").get<std::string>();
    p.role = role_from_string(item.value("role", "unknown"));
    if (item.contains("aliases")) {
      for (const auto& a : item["aliases"]) {
        p.aliases.emplace_back(a.value("name", ""), a.value("email", ""));
      }
    }
    roster.entries.push_back(std::move(p));
  }
  roster.validate();
  return roster;
}

ParticipantId resolve_identity(const std::string& sender_raw, const Roster& roster) {
  ParsedAddress addr = parse_address(sender_raw);
  if (!addr.ok) {
    ParticipantId p;
    p.canonical_name = sender_raw;
    p.role = Role::Unknown;
    p.flagged = true;
    return p;
  }
  if (const ParticipantId* hit = roster.find_by_email(addr.email)) return *hit;
  if (const ParticipantId* hit = roster.find_by_name(addr.name)) return *hit;

  ParticipantId p;
  p.canonical_name = !addr.name.empty() ? to_lower(addr.name) : to_lower(addr.email);
  p.role = Role::Unknown;
  p.aliases.emplace_back(addr.name, addr.email);
  return p;
}

}  // namespace crossbound
