#include "crossbound/types.hpp"

#include <stdexcept>

namespace crossbound {

std::string to_string(Role r) {
  switch (r) {
    case Role::ProjectLeader: return "project_leader";
    case Role::Administrator: return "administrator";
    case Role::Developer: return "developer";
    case Role::User: return "user";
    case Role::Unknown: return "unknown";
  }
  return "unknown";
}

Role role_from_string(const std::string& s) {
  if (s == "project_leader") return Role::ProjectLeader;
  if (s == "administrator") return Role::Administrator;
  if (s == "developer") return Role::Developer;
  if (s == "user") return Role::User;
  if (s == "unknown" || s.empty()) return Role::Unknown;
  throw std::invalid_argument("unknown role: " + s);
}

std::string to_string(Space s) {
  return s == Space::Documentation ? "documentation" : "implementation";
}

Space space_from_string(const std::string& s) {
  if (s == "documentation") return Space::Documentation;
  if (s == "implementation") return Space::Implementation;
  throw std::invalid_argument("unknown space: " + s);
}

std::string to_string(Regularity r) {
  return r == Regularity::Regular ? "regular" : "occasional";
}

std::string to_string(Category c) {
  switch (c) {
    case Category::ProjectLeader: return "project_leader";
    case Category::CrossParticipant: return "cross_participant";
    case Category::CommonOnly: return "common_only";
    case Category::RegularOnly: return "regular_only";
    case Category::OccasionalOnly: return "occasional_only";
  }
  return "occasional_only";
}

}  // namespace crossbound
