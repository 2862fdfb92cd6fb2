#include "crossbound/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "crossbound/datetime.hpp"
#include "crossbound/store.hpp"
#include "crossbound/text.hpp"
#include "crossbound/types.hpp"

namespace crossbound {

using nlohmann::json;

void SynthParams::validate() const {
  auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!prob(quote_rate) || !prob(quote_noise) || !prob(credit_rate) || !prob(hint_rate) ||
      !prob(malformed_rate)) {
    throw std::invalid_argument("probabilities must lie in [0, 1]");
  }
  if (discussions_per_list < 1) throw std::invalid_argument("discussions_per_list must be >= 1");
  if (message_rate < 1.0) throw std::invalid_argument("message_rate must be >= 1");
  if (parallel_pairs < 0 || parallel_pairs > discussions_per_list) {
    throw std::invalid_argument("parallel_pairs must lie in [0, discussions_per_list]");
  }
  if (doc_revisions < 0 || impl_revisions < 0) {
    throw std::invalid_argument("revision counts must be >= 0");
  }
  int total = 0;
  int non_leader = 0;
  for (const auto& [role, n] : participants_per_role) {
    if (n < 0) throw std::invalid_argument("negative participant count");
    if (n > 99) throw std::invalid_argument("at most 99 participants per role");
    role_from_string(role);  // throws on unknown role names
    total += n;
    if (role != "project_leader") non_leader += n;
  }
  if (total < 2) throw std::invalid_argument("need at least two participants");
  if (planted_cross < 0 || planted_cross > non_leader) {
    throw std::invalid_argument("planted_cross exceeds available participants");
  }
  if (planted_cross > 0 && parallel_pairs == 0) {
    throw std::invalid_argument("planted_cross needs at least one parallel pair");
  }
}

SynthParams SynthParams::from_json(const json& j) {
  SynthParams p;
  p.seed = j.value("seed", p.seed);
  if (j.contains("participants_per_role")) {
    p.participants_per_role.clear();
    for (auto it = j["participants_per_role"].begin(); it != j["participants_per_role"].end();
         ++it) {
      p.participants_per_role[it.key()] = it.value().get<int>();
    }
  }
  p.discussions_per_list = j.value("discussions_per_list", p.discussions_per_list);
  p.parallel_pairs = j.value("parallel_pairs", p.parallel_pairs);
  p.planted_cross = j.value("planted_cross", p.planted_cross);
  p.quote_rate = j.value("quote_rate", p.quote_rate);
  p.quote_noise = j.value("quote_noise", p.quote_noise);
  p.message_rate = j.value("message_rate", p.message_rate);
  p.doc_revisions = j.value("doc_revisions", p.doc_revisions);
  p.impl_revisions = j.value("impl_revisions", p.impl_revisions);
  p.credit_rate = j.value("credit_rate", p.credit_rate);
  p.hint_rate = j.value("hint_rate", p.hint_rate);
  p.malformed_rate = j.value("malformed_rate", p.malformed_rate);
  p.validate();
  return p;
}

json SynthParams::to_json() const {
  json j;
  j["seed"] = seed;
  json roles = json::object();
  for (const auto& [role, n] : participants_per_role) roles[role] = n;
  j["participants_per_role"] = roles;
  j["discussions_per_list"] = discussions_per_list;
  j["parallel_pairs"] = parallel_pairs;
  j["planted_cross"] = planted_cross;
  j["quote_rate"] = quote_rate;
  j["quote_noise"] = quote_noise;
  j["message_rate"] = message_rate;
  j["doc_revisions"] = doc_revisions;
  j["impl_revisions"] = impl_revisions;
  j["credit_rate"] = credit_rate;
  j["hint_rate"] = hint_rate;
  j["malformed_rate"] = malformed_rate;
  return j;
}

namespace {

constexpr const char* kUserList = "synth-user";
constexpr const char* kDevList = "synth-dev";

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  // modulo draw; bias is irrelevant here and keeps output platform-stable
  std::uint64_t pick(std::uint64_t n) { return n == 0 ? 0 : gen() % n; }
  bool chance(double p) {
    return (static_cast<double>(gen() >> 11) / 9007199254740992.0) < p;
  }
};

struct Person {
  std::string name;
  std::string role;
  std::string email() const { return name + "@synth.example"; }
  std::string from_header() const { return name + " <" + email() + ">"; }
};

struct SynthMessage {
  std::string id;
  std::string list;
  int sender = 0;  // index into people
  Timestamp date = 0;
  std::string subject;
  int parent = -1;  // index into the discussion's messages
  std::vector<std::string> references;
  std::vector<std::string> body_lines;
  std::vector<std::pair<int, int>> own_span;  // (first line, count) of own text
  // planted quote blocks: (line_first, depth, source message id)
  std::vector<std::tuple<int, int, std::string>> blocks;
};

struct SynthDiscussion {
  std::string list;
  std::string subject;
  Timestamp start = 0;
  int pair_index = -1;  // >= 0 for paired discussions
  std::vector<SynthMessage> messages;
};

std::string two_digits(int n) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%02d", n);
  return buf;
}

}  // namespace

SynthOutput generate_corpus(const SynthParams& params, const std::filesystem::path& out_dir) {
  params.validate();
  std::filesystem::create_directories(out_dir);
  Rng rng(params.seed);

  // roster
  std::vector<Person> people;
  static const char* kRoleOrder[] = {"project_leader", "administrator", "developer", "user"};
  static const char* kRolePrefix[] = {"pl", "admin", "dev", "user"};
  for (size_t r = 0; r < 4; ++r) {
    auto it = params.participants_per_role.find(kRoleOrder[r]);
    int n = it == params.participants_per_role.end() ? 0 : it->second;
    for (int i = 1; i <= n; ++i) {
      people.push_back({std::string(kRolePrefix[r]) + "-" + two_digits(i), kRoleOrder[r]});
    }
  }
  std::vector<int> non_leader_pool;
  for (size_t i = 0; i < people.size(); ++i) {
    if (people[i].role != "project_leader") non_leader_pool.push_back(static_cast<int>(i));
  }

  // planted cross participants, round-robin over the pairs
  std::set<int> cross_set;
  std::vector<std::vector<int>> pair_cross(static_cast<size_t>(std::max(params.parallel_pairs, 1)));
  {
    std::vector<int> pool = non_leader_pool;
    for (int c = 0; c < params.planted_cross; ++c) {
      size_t at = rng.pick(pool.size());
      int who = pool[at];
      pool.erase(pool.begin() + static_cast<long>(at));
      cross_set.insert(who);
      pair_cross[static_cast<size_t>(c % params.parallel_pairs)].push_back(who);
    }
  }
  std::optional<std::string> champion;
  for (int who : cross_set) {
    if (people[static_cast<size_t>(who)].role == "user") {
      champion = people[static_cast<size_t>(who)].name;
      break;
    }
  }

  const Timestamp base = make_utc(2004, 1, 1, 0, 0, 0, 0);
  const Timestamp date_from = base - 30 * 86400;
  const Timestamp date_to = base + 500 * 86400;

  // discussions for both lists; a global index keeps all dates unique
  std::vector<SynthDiscussion> discussions;
  int global_index = 0;
  std::uint64_t token_counter = 0;
  int message_counter = 0;

  auto make_token = [&]() {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "w%06llu", static_cast<unsigned long long>(token_counter++));
    return std::string(buf);
  };
  auto make_line = [&]() {
    int n = 6 + static_cast<int>(rng.pick(3));
    std::string line;
    for (int i = 0; i < n; ++i) {
      if (!line.empty()) line += " ";
      line += make_token();
    }
    return line;
  };

  auto plan_discussion = [&](const std::string& list, const std::string& subject,
                             Timestamp start, int pair_index) {
    SynthDiscussion d;
    d.list = list;
    d.subject = subject;
    d.start = start + global_index;  // sub-hour offset, unique per discussion
    d.pair_index = pair_index;
    ++global_index;
    discussions.push_back(std::move(d));
  };

  for (int p = 0; p < params.parallel_pairs; ++p) {
    std::string subject = "Topic pair-" + two_digits(p) + " alignment review";
    Timestamp a_start = base + static_cast<Timestamp>(p) * 3 * 86400;
    plan_discussion(kUserList, subject, a_start, p);
    plan_discussion(kDevList, subject, a_start + 3600, p);
  }
  const Timestamp unpaired_base =
      base + static_cast<Timestamp>(params.parallel_pairs) * 3 * 86400 + 2 * 86400;
  for (int i = params.parallel_pairs; i < params.discussions_per_list; ++i) {
    Timestamp day = unpaired_base + static_cast<Timestamp>(i - params.parallel_pairs) * 2 * 86400;
    plan_discussion(kUserList, "Topic ua-" + two_digits(i) + " widget notes", day, -1);
    plan_discussion(kDevList, "Topic ub-" + two_digits(i) + " module design", day + 5400, -1);
  }

  for (SynthDiscussion& d : discussions) {
    const bool paired = d.pair_index >= 0;
    std::vector<int> forced;
    std::set<int> pair_allowed;  // cross members planted on this pair
    if (paired) {
      forced = pair_cross[static_cast<size_t>(d.pair_index)];
      pair_allowed.insert(forced.begin(), forced.end());
    }
    // Inside a pair, non-cross senders come from disjoint halves of the
    // roster (even indices on the user side, odd on the dev side), so nobody
    // but the planted cross participants can post on both sides.
    const int side_parity = d.list == kUserList ? 0 : 1;

    int k = 1 + static_cast<int>(rng.pick(static_cast<std::uint64_t>(2.0 * params.message_rate - 1.0)));
    if (paired) k = std::max(k, 2 + static_cast<int>(forced.size()));

    auto pick_sender = [&]() {
      for (int tries = 0; tries < 64; ++tries) {
        int who = static_cast<int>(rng.pick(people.size()));
        if (paired && who % 2 != side_parity && !pair_allowed.count(who)) continue;
        return who;
      }
      for (size_t i = 0; i < people.size(); ++i) {
        if (!paired || static_cast<int>(i) % 2 == side_parity) return static_cast<int>(i);
      }
      return 0;
    };

    for (int m = 0; m < k; ++m) {
      SynthMessage msg;
      msg.list = d.list;
      char idbuf[32];
      std::snprintf(idbuf, sizeof(idbuf), "m%05d@synth.example", message_counter++);
      msg.id = idbuf;
      msg.date = d.start + static_cast<Timestamp>(m) * 10800;
      msg.subject = m == 0 ? d.subject : "Re: " + d.subject;

      if (m > 0 && !forced.empty() && m <= static_cast<int>(forced.size())) {
        msg.sender = forced[static_cast<size_t>(m - 1)];
      } else {
        msg.sender = pick_sender();
      }

      if (m > 0) {
        msg.parent = rng.chance(0.6) ? m - 1 : static_cast<int>(rng.pick(static_cast<std::uint64_t>(m)));
        const SynthMessage& parent = d.messages[static_cast<size_t>(msg.parent)];
        msg.references = parent.references;
        msg.references.push_back(parent.id);
      }

      // body: optional hint + quote blocks, then own text
      std::vector<std::string> lines;
      if (m > 0 && rng.chance(params.quote_rate)) {
        const int src_idx = rng.chance(0.7) && msg.parent >= 0
                                ? msg.parent
                                : static_cast<int>(rng.pick(static_cast<std::uint64_t>(m)));
        const SynthMessage& src = d.messages[static_cast<size_t>(src_idx)];
        const auto& [own_first, own_count] = src.own_span[0];
        int e0 = own_count >= 2 ? static_cast<int>(rng.pick(static_cast<std::uint64_t>(own_count - 1)))
                                : 0;
        int n_lines = own_count >= 2 ? 2 : 1;

        if (rng.chance(params.hint_rate)) {
          lines.push_back(people[static_cast<size_t>(src.sender)].name + " wrote:");
        }
        int block_first = static_cast<int>(lines.size());
        for (int q = 0; q < n_lines; ++q) {
          std::string quoted = src.body_lines[static_cast<size_t>(own_first + e0 + q)];
          if (rng.chance(params.quote_noise)) {
            std::vector<std::string> toks = tokenize(quoted);
            size_t keep = (toks.size() + 1) / 2;
            quoted.clear();
            for (size_t t = 0; t < keep; ++t) {
              if (!quoted.empty()) quoted += " ";
              quoted += toks[t];
            }
          }
          lines.push_back("> " + quoted);
        }
        msg.blocks.emplace_back(block_first, 1, src.id);
        lines.push_back("");

        // occasionally also quote the grandparent one level deeper
        if (msg.parent >= 0) {
          const SynthMessage& par = d.messages[static_cast<size_t>(msg.parent)];
          if (par.parent >= 0 && rng.chance(0.25)) {
            const SynthMessage& grand = d.messages[static_cast<size_t>(par.parent)];
            const auto& [g_first, g_count] = grand.own_span[0];
            int g0 = g_count >= 2 ? static_cast<int>(rng.pick(static_cast<std::uint64_t>(g_count - 1)))
                                  : 0;
            int gn = g_count >= 2 ? 2 : 1;
            int gblock_first = static_cast<int>(lines.size());
            for (int q = 0; q < gn; ++q) {
              lines.push_back(">> " + grand.body_lines[static_cast<size_t>(g_first + g0 + q)]);
            }
            msg.blocks.emplace_back(gblock_first, 2, grand.id);
            lines.push_back("");
          }
        }
      }

      int own_first = static_cast<int>(lines.size());
      int own_count = 3 + static_cast<int>(rng.pick(3));
      for (int l = 0; l < own_count; ++l) lines.push_back(make_line());
      msg.own_span.emplace_back(own_first, own_count);
      msg.body_lines = std::move(lines);
      d.messages.push_back(std::move(msg));
    }
  }

  // write the mboxes; malformed junk entries go at the end of each archive
  json gt_messages = json::array();
  json gt_discussions = json::array();
  json gt_edges = json::array();
  int n_messages = 0;

  for (const char* list_name : {kUserList, kDevList}) {
    const std::string list = list_name;
    std::string mbox;
    int good_in_list = 0;
    for (const SynthDiscussion& d : discussions) {
      if (d.list != list) continue;
      json jd;
      std::string root_id = d.messages.front().id;
      jd["id"] = list + ":" + root_id;
      jd["list"] = list;
      jd["subject_key"] = to_lower(d.subject);
      jd["start"] = d.messages.front().date;
      jd["end"] = d.messages.back().date;
      json ids = json::array();

      for (const SynthMessage& m : d.messages) {
        ids.push_back(m.id);
        const Person& sender = people[static_cast<size_t>(m.sender)];
        mbox += "From " + sender.email() + " " + format_rfc2822(m.date) + "\n";
        mbox += "From: " + sender.from_header() + "\n";
        mbox += "Date: " + format_rfc2822(m.date) + "\n";
        mbox += "Subject: " + m.subject + "\n";
        mbox += "Message-ID: <" + m.id + ">\n";
        if (m.parent >= 0) {
          mbox += "In-Reply-To: <" + d.messages[static_cast<size_t>(m.parent)].id + ">\n";
          std::string refs;
          for (const std::string& r : m.references) refs += "<" + r + "> ";
          mbox += "References: " + trim(refs) + "\n";
        }
        mbox += "\n";
        for (const std::string& line : m.body_lines) mbox += line + "\n";

        json jm;
        jm["id"] = m.id;
        jm["list"] = list;
        jm["sender"] = sender.name;
        jm["date"] = m.date;
        jm["discussion"] = list + ":" + root_id;
        gt_messages.push_back(std::move(jm));
        ++good_in_list;

        for (const auto& [line_first, depth, src_id] : m.blocks) {
          // find the source sender
          std::string src_sender;
          for (const SynthMessage& s : d.messages) {
            if (s.id == src_id) {
              src_sender = people[static_cast<size_t>(s.sender)].name;
              break;
            }
          }
          json je;
          je["quoter"] = sender.name;
          je["quoted"] = src_sender;
          je["quoter_message"] = m.id;
          je["quoted_message"] = src_id;
          je["list"] = list;
          je["depth"] = depth;
          je["line_first"] = line_first;
          je["self_quote"] = src_sender == sender.name;
          gt_edges.push_back(std::move(je));
        }
      }
      jd["messages"] = ids;
      gt_discussions.push_back(std::move(jd));
    }
    n_messages += good_in_list;

    int n_malformed =
        params.malformed_rate > 0.0
            ? std::max(1, static_cast<int>(params.malformed_rate * good_in_list + 0.5))
            : 0;
    for (int i = 0; i < n_malformed; ++i) {
      mbox += "From junk@synth.example Mon Jan  1 00:00:00 2004\n";
      mbox += "From: junk poster <junk@synth.example>\n";
      mbox += "Message-ID: <junk-" + list + "-" + std::to_string(i) + "@synth.example>\n";
      mbox += "Date: not a valid date\n";
      mbox += "Subject: noise entry " + std::to_string(i) + "\n";
      mbox += "\n";
      mbox += "malformed payload " + std::to_string(i) + "\n";
    }
    write_text_atomic(out_dir / ("list-" + list.substr(6) + ".mbox"), mbox);
  }

  // revision logs
  json gt_revisions = json::array();
  std::vector<int> committer_pool;
  for (size_t i = 0; i < people.size(); ++i) {
    if (people[i].role == "administrator" || people[i].role == "developer") {
      committer_pool.push_back(static_cast<int>(i));
    }
  }
  if (committer_pool.empty()) committer_pool = non_leader_pool;
  if (committer_pool.empty()) committer_pool.push_back(0);

  auto write_revlog = [&](const std::string& space, int count, const std::string& path_name,
                          const std::string& artifact) {
    std::string text;
    for (int i = 0; i < count; ++i) {
      int committer = committer_pool[rng.pick(committer_pool.size())];
      std::string message = "routine maintenance pass " + std::to_string(i);
      json credited = json::array();
      if (rng.chance(params.credit_rate) && people.size() > 1) {
        int credit = committer;
        while (credit == committer) credit = static_cast<int>(rng.pick(people.size()));
        const std::string& name = people[static_cast<size_t>(credit)].name;
        switch (rng.pick(3)) {
          case 0: message = "Apply " + name + "'s patch for " + artifact; break;
          case 1: message = "thanks to " + name + " for the detailed report"; break;
          default: message = "merge cleanup on behalf of " + name; break;
        }
        credited.push_back(name);
      }
      Timestamp date = base + static_cast<Timestamp>(i) * 86400 + 9 * 3600;
      std::string rev_id = space.substr(0, 4) + "-r" + two_digits(i + 1);

      json line;
      line["revision"] = rev_id;
      line["space"] = space;
      line["path"] = artifact;
      line["author"] = people[static_cast<size_t>(committer)].from_header();
      line["date"] = format_iso8601(date);
      line["message"] = message;
      text += line.dump() + "\n";

      json gr;
      gr["id"] = rev_id;
      gr["space"] = space;
      gr["committer"] = people[static_cast<size_t>(committer)].name;
      gr["date"] = date;
      gr["credited"] = credited;
      gt_revisions.push_back(std::move(gr));
    }
    write_text_atomic(out_dir / path_name, text);
  };
  write_revlog("documentation", params.doc_revisions, "revisions-documentation.jsonl",
               "pep-0327.txt");
  write_revlog("implementation", params.impl_revisions, "revisions-implementation.jsonl",
               "decimal.py");

  // roster
  json roster = json::array();
  for (const Person& p : people) {
    json jp;
    jp["canonical_name"] = p.name;
    jp["role"] = p.role;
    jp["aliases"] = json::array({{{"name", p.name}, {"email", p.email()}}});
    roster.push_back(std::move(jp));
  }
  write_json_atomic(out_dir / "roster.json", roster);

  // ready-to-run config
  json config;
  config["corpora"] = json::array({{{"name", "synthetic"},
                                    {"keywords", json::array({"topic"})},
                                    {"date_from", format_iso8601(date_from)},
                                    {"date_to", format_iso8601(date_to)}}});
  config["lists"] = json::array({{{"list_id", kUserList},
                                  {"orientation", "user"},
                                  {"archives", json::array({"list-user.mbox"})}},
                                 {{"list_id", kDevList},
                                  {"orientation", "developer"},
                                  {"archives", json::array({"list-dev.mbox"})}}});
  config["roster"] = "roster.json";
  config["revision_logs"] =
      json::array({{{"path", "revisions-documentation.jsonl"}, {"space", "documentation"}},
                   {{"path", "revisions-implementation.jsonl"}, {"space", "implementation"}}});
  config["credit_patterns"] =
      json::array({"{name}'s", "thanks to {name}", "on behalf of {name}"});
  config["champion"] = champion ? json(*champion) : json(nullptr);
  config["thresholds"] = json::object();
  config["output_dir"] = "out";
  write_json_atomic(out_dir / "config.json", config);

  // ground truth
  json gt;
  gt["corpus"] = "synthetic";
  gt["lists"] = json::array({kUserList, kDevList});
  gt["orientations"] = {{kUserList, "user"}, {kDevList, "developer"}};
  gt["champion"] = champion ? json(*champion) : json(nullptr);
  gt["date_from"] = date_from;
  gt["date_to"] = date_to;
  gt["thresholds"] = {{"rd_threshold", 0.0}, {"rd_min_cell", 5}};
  json gt_roster = json::array();
  for (const Person& p : people) gt_roster.push_back({{"name", p.name}, {"role", p.role}});
  gt["roster"] = gt_roster;
  gt["messages"] = gt_messages;
  gt["discussions"] = gt_discussions;
  gt["quote_edges"] = gt_edges;
  gt["revisions"] = gt_revisions;
  std::vector<std::string> planted;
  for (int who : cross_set) planted.push_back(people[static_cast<size_t>(who)].name);
  std::sort(planted.begin(), planted.end());
  gt["planted_cross"] = planted;
  write_json_atomic(out_dir / "ground_truth.json", gt);

  SynthOutput out;
  out.dir = out_dir;
  out.config_path = out_dir / "config.json";
  out.ground_truth_path = out_dir / "ground_truth.json";
  out.n_messages = n_messages;
  return out;
}

}  // namespace crossbound
