#include "crossbound/store.hpp"

#include <fstream>

namespace crossbound {

using nlohmann::json;

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw StoreError("cannot write " + tmp.string());
    out << text;
    if (!out) throw StoreError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_json_atomic(const std::filesystem::path& path, const json& j) {
  write_text_atomic(path, j.dump(2) + "\n");
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StoreError("missing store file: " + path.string());
  json j = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw StoreError("corrupt store file: " + path.string());
  return j;
}

json message_to_json(const Message& m) {
  json j;
  j["id"] = m.message_id;
  j["list"] = m.list_id;
  j["sender"] = m.sender;
  j["sender_raw"] = m.sender_raw;
  j["date"] = m.date;
  j["subject"] = m.subject_raw;
  j["in_reply_to"] = m.in_reply_to ? json(*m.in_reply_to) : json(nullptr);
  j["references"] = m.references;
  j["body"] = m.body;
  return j;
}

Message message_from_json(const json& j) {
  Message m;
  m.message_id = j.at("id").get<std::string>();
  m.list_id = j.at("list").get<std::string>();
  m.sender = j.at("sender").get<std::string>();
  m.sender_raw = j.value("sender_raw", "");
  m.date = j.at("date").get<Timestamp>();
  m.subject_raw = j.value("subject", "");
  if (!j.at("in_reply_to").is_null()) m.in_reply_to = j["in_reply_to"].get<std::string>();
  for (const auto& r : j.at("references")) m.references.push_back(r.get<std::string>());
  m.body = j.value("body", "");
  return m;
}

json discussion_to_json(const Discussion& d) {
  json j;
  j["discussion_id"] = d.discussion_id;
  j["list_id"] = d.list_id;
  j["subject_key"] = d.subject_key;
  j["start"] = d.start;
  j["end"] = d.end;
  j["n_messages"] = d.messages.size();
  j["messages"] = d.messages;
  j["participants"] = std::vector<std::string>(d.participants.begin(), d.participants.end());
  json edges = json::array();
  for (const auto& [child, parent] : d.reply_edges) {
    edges.push_back(json::array({child, parent}));
  }
  j["reply_edges"] = edges;
  return j;
}

Discussion discussion_from_json(const json& j) {
  Discussion d;
  d.discussion_id = j.at("discussion_id").get<std::string>();
  d.list_id = j.at("list_id").get<std::string>();
  d.subject_key = j.at("subject_key").get<std::string>();
  d.start = j.at("start").get<Timestamp>();
  d.end = j.at("end").get<Timestamp>();
  for (const auto& m : j.at("messages")) d.messages.push_back(m.get<std::string>());
  for (const auto& p : j.at("participants")) d.participants.insert(p.get<std::string>());
  for (const auto& e : j.at("reply_edges")) {
    d.reply_edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  }
  return d;
}

json selection_to_json(const CorpusSelection& s) {
  json j;
  j["name"] = s.name;
  j["keywords"] = s.keywords;
  j["date_from"] = s.date_from;
  j["date_to"] = s.date_to;
  j["lists"] = std::vector<std::string>(s.lists.begin(), s.lists.end());
  j["messages"] = std::vector<std::string>(s.messages.begin(), s.messages.end());
  j["mother_thread"] = std::vector<std::string>(s.mother_thread.begin(), s.mother_thread.end());
  return j;
}

CorpusSelection selection_from_json(const json& j) {
  CorpusSelection s;
  s.name = j.at("name").get<std::string>();
  for (const auto& k : j.at("keywords")) s.keywords.push_back(k.get<std::string>());
  s.date_from = j.at("date_from").get<Timestamp>();
  s.date_to = j.at("date_to").get<Timestamp>();
  for (const auto& l : j.at("lists")) s.lists.insert(l.get<std::string>());
  for (const auto& m : j.at("messages")) s.messages.insert(m.get<std::string>());
  for (const auto& m : j.at("mother_thread")) s.mother_thread.insert(m.get<std::string>());
  return s;
}

json revision_to_json(const RevisionRecord& r) {
  json j;
  j["revision"] = r.revision_id;
  j["space"] = to_string(r.space);
  j["path"] = r.path;
  j["committer"] = r.committer;
  j["date"] = r.date;
  j["message"] = r.log_message;
  j["credited"] = std::vector<std::string>(r.credited.begin(), r.credited.end());
  return j;
}

RevisionRecord revision_from_json(const json& j) {
  RevisionRecord r;
  r.revision_id = j.at("revision").get<std::string>();
  r.space = space_from_string(j.at("space").get<std::string>());
  r.path = j.value("path", "");
  r.committer = j.at("committer").get<std::string>();
  r.date = j.at("date").get<Timestamp>();
  r.log_message = j.value("message", "");
  for (const auto& c : j.at("credited")) r.credited.insert(c.get<std::string>());
  return r;
}

json roster_to_json(const Roster& r) {
  json arr = json::array();
  for (const ParticipantId& p : r.entries) {
    json j;
    j["canonical_name"] = p.canonical_name;
    j["role"] = to_string(p.role);
    json aliases = json::array();
    for (const auto& [name, email] : p.aliases) {
      aliases.push_back({{"name", name}, {"email", email}});
    }
    j["aliases"] = aliases;
    j["flagged"] = p.flagged;
    arr.push_back(std::move(j));
  }
  return arr;
}

Roster roster_from_json(const json& j) {
  Roster roster;
  for (const auto& item : j) {
    ParticipantId p;
    p.canonical_name = item.at("canonical_name").get<std::string>();
    p.role = role_from_string(item.value("role", "unknown"));
    if (item.contains("aliases")) {
      for (const auto& a : item["aliases"]) {
        p.aliases.emplace_back(a.value("name", ""), a.value("email", ""));
      }
    }
    p.flagged = item.value("flagged", false);
    roster.entries.push_back(std::move(p));
  }
  return roster;
}

json diagnostic_to_json(const Diagnostic& d) {
  return json{{"source", d.source}, {"item", d.item}, {"what", d.what}};
}

}  // namespace crossbound
