#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace crossbound {

using Timestamp = std::int64_t;  // seconds since the Unix epoch, UTC

enum class Role { ProjectLeader, Administrator, Developer, User, Unknown };

std::string to_string(Role r);
Role role_from_string(const std::string& s);

enum class Space { Documentation, Implementation };

std::string to_string(Space s);
Space space_from_string(const std::string& s);

// Roster entry. canonical_name is the stable key used throughout the pipeline.
struct ParticipantId {
  std::string canonical_name;
  Role role = Role::Unknown;
  std::vector<std::pair<std::string, std::string>> aliases;  // (name, email)
  bool flagged = false;  // From header could not be parsed

  bool operator==(const ParticipantId&) const = default;
};

struct Message {
  std::string message_id;
  std::string list_id;
  std::string sender_raw;
  std::string sender;  // canonical participant name, filled by identity resolution
  Timestamp date = 0;
  std::string subject_raw;
  std::optional<std::string> in_reply_to;
  std::vector<std::string> references;  // header order preserved
  std::string body;
};

struct RevisionRecord {
  std::string revision_id;
  Space space = Space::Implementation;
  std::string path;
  std::string committer;  // canonical name
  Timestamp date = 0;
  std::string log_message;
  std::set<std::string> credited;  // canonical names, never the committer
};

struct CorpusSelection {
  std::string name;
  std::vector<std::string> keywords;  // lowercase
  Timestamp date_from = 0;
  Timestamp date_to = 0;
  std::set<std::string> lists;
  std::set<std::string> messages;       // every selected message id
  std::set<std::string> mother_thread;  // subset pulled in as reply-chain ancestors
};

struct Discussion {
  std::string discussion_id;
  std::string list_id;
  std::string subject_key;
  std::vector<std::string> messages;   // ids, sorted by date
  std::set<std::string> participants;  // canonical sender names
  Timestamp start = 0;
  Timestamp end = 0;
  std::vector<std::pair<std::string, std::string>> reply_edges;  // (child, parent)
};

struct QuoteBlock {
  std::string owner;  // message id
  int depth = 1;
  std::string text;  // dequoted, whitespace-collapsed, lowercased
  int line_first = 0;
  int line_last = 0;
  std::string hint;  // name fragment from a nearby "X wrote:" line, may be empty
};

inline constexpr const char* kUnknownParticipant = "(unknown)";

struct QuoteEdge {
  std::string quoter;          // canonical sender of quoter_message
  std::string quoted;          // canonical sender of quoted_message, or kUnknownParticipant
  std::string quoter_message;
  std::string quoted_message;  // empty when unresolved
  std::string list_id;
  int depth = 1;
  bool resolved = false;
  bool self_quote = false;
  int line_first = 0;
};

enum class Regularity { Regular, Occasional };
std::string to_string(Regularity r);

enum class Category {
  ProjectLeader,
  CrossParticipant,
  CommonOnly,
  RegularOnly,
  OccasionalOnly,
};
std::string to_string(Category c);

struct ParticipationProfile {
  std::string participant;
  std::map<std::string, int> discussions_per_list;
  std::map<std::string, int> messages_per_list;
  std::map<std::string, Regularity> regularity;  // only lists where the count is >= 1
  bool is_common = false;
  bool is_cross = false;
  Category category = Category::OccasionalOnly;
};

struct ParallelPair {
  std::string discussion_a;  // from the first list
  std::string discussion_b;  // from the second list
  std::string subject_key;
  Timestamp overlap_start = 0;
  Timestamp overlap_end = 0;
};

struct TimelineRecord {
  std::string discussion_id;
  std::string list_id;
  Timestamp start = 0;
  Timestamp end = 0;
  std::string label;
  std::optional<std::string> group;
  std::optional<std::string> parallel_with;
};

struct Diagnostic {
  std::string source;  // file or list the problem came from
  std::string item;    // offset, message id, or line number
  std::string what;
};

}  // namespace crossbound
