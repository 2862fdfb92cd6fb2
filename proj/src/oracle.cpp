#include "crossbound/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace crossbound {

using nlohmann::json;

namespace {

struct OMessage {
  std::string id;
  std::string list;
  std::string sender;
  std::int64_t date = 0;
  std::string discussion;
};

struct ODiscussion {
  std::string id;
  std::string list;
  std::string subject_key;
  std::int64_t start = 0;
  std::int64_t end = 0;
  std::set<std::string> participants;
};

int o_round_percent(std::int64_t num, std::int64_t den) {
  return static_cast<int>(std::llround(100.0 * static_cast<double>(num) / static_cast<double>(den)));
}

double o_quartile3(std::vector<int> values) {
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  size_t rank = (3 * n + 3) / 4;
  return static_cast<double>(values[rank - 1]);
}

json o_counts(const std::map<std::string, int>& m) {
  json out = json::object();
  for (const auto& [k, v] : m) out[k] = v;
  return out;
}

}  // namespace

json oracle_metrics(const json& gt) {
  std::vector<std::string> lists;
  for (const auto& l : gt.at("lists")) lists.push_back(l.get<std::string>());
  std::map<std::string, std::string> orientation;
  for (auto it = gt.at("orientations").begin(); it != gt.at("orientations").end(); ++it) {
    orientation[it.key()] = it.value().get<std::string>();
  }
  std::map<std::string, std::string> role_of;
  for (const auto& r : gt.at("roster")) {
    role_of[r.at("name").get<std::string>()] = r.at("role").get<std::string>();
  }
  std::string champion;
  if (!gt.at("champion").is_null()) champion = gt["champion"].get<std::string>();

  std::vector<OMessage> messages;
  for (const auto& m : gt.at("messages")) {
    messages.push_back({m.at("id"), m.at("list"), m.at("sender"), m.at("date"),
                        m.at("discussion")});
  }
  std::vector<ODiscussion> discussions;
  for (const auto& d : gt.at("discussions")) {
    ODiscussion od;
    od.id = d.at("id");
    od.list = d.at("list");
    od.subject_key = d.at("subject_key");
    od.start = d.at("start");
    od.end = d.at("end");
    discussions.push_back(std::move(od));
  }
  std::map<std::string, ODiscussion*> disc_by_id;
  for (ODiscussion& d : discussions) disc_by_id[d.id] = &d;
  for (const OMessage& m : messages) disc_by_id.at(m.discussion)->participants.insert(m.sender);

  // per-participant activity
  std::map<std::string, std::map<std::string, std::set<std::string>>> disc_of;  // p -> list -> ids
  std::map<std::string, std::map<std::string, int>> msgs_of;                    // p -> list -> n
  for (const OMessage& m : messages) {
    disc_of[m.sender][m.list].insert(m.discussion);
    ++msgs_of[m.sender][m.list];
  }

  // per-list regularity
  std::map<std::string, std::map<std::string, bool>> regular_on;  // list -> p -> regular?
  std::map<std::string, double> q3_of_list;
  for (const std::string& list : lists) {
    std::vector<int> values;
    std::map<std::string, int> counts;
    for (const auto& [p, per_list] : disc_of) {
      auto it = per_list.find(list);
      if (it == per_list.end() || it->second.empty()) continue;
      counts[p] = static_cast<int>(it->second.size());
      values.push_back(counts[p]);
    }
    if (values.empty()) continue;
    double q3 = o_quartile3(values);
    q3_of_list[list] = q3;
    for (const auto& [p, c] : counts) regular_on[list][p] = static_cast<double>(c) > q3;
  }

  // parallel pairs: same subject key, different lists, overlapping intervals
  struct OPair {
    std::string a, b, subject;
    std::int64_t os, oe;
  };
  std::vector<OPair> pairs;
  for (const ODiscussion& a : discussions) {
    if (a.list != lists[0]) continue;
    for (const ODiscussion& b : discussions) {
      if (b.list != lists[1]) continue;
      if (a.subject_key != b.subject_key) continue;
      if (a.start > b.end || b.start > a.end) continue;
      pairs.push_back({a.id, b.id, a.subject_key, std::max(a.start, b.start),
                       std::min(a.end, b.end)});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const OPair& x, const OPair& y) {
    if (x.subject != y.subject) return x.subject < y.subject;
    return x.a < y.a;
  });

  std::set<std::string> cross;
  for (const OPair& p : pairs) {
    const ODiscussion& a = *disc_by_id.at(p.a);
    const ODiscussion& b = *disc_by_id.at(p.b);
    for (const std::string& who : a.participants) {
      if (b.participants.count(who)) cross.insert(who);
    }
  }
  std::set<std::string> common;
  for (const auto& [p, per_list] : disc_of) {
    int active = 0;
    for (const auto& [list, ids] : per_list) {
      if (!ids.empty()) ++active;
    }
    if (active >= 2) common.insert(p);
  }

  // category per participant: leader > cross > common > regular > occasional
  std::map<std::string, std::string> involvement_cat;
  std::map<std::string, std::string> graph_cat;
  for (const auto& [p, per_list] : disc_of) {
    const std::string role = role_of.count(p) ? role_of.at(p) : "unknown";
    if (role == "project_leader") {
      involvement_cat[p] = "project_leader";
    } else if (cross.count(p)) {
      involvement_cat[p] = "cross_participant";
    } else if (common.count(p)) {
      involvement_cat[p] = "common_only";
    } else {
      bool reg = false;
      for (const auto& [list, by_p] : regular_on) {
        auto it = by_p.find(p);
        if (it != by_p.end() && it->second) reg = true;
      }
      involvement_cat[p] = reg ? "regular_only" : "occasional_only";
    }
    if (p == champion) {
      graph_cat[p] = "U-C";
    } else if (role == "project_leader") {
      graph_cat[p] = "PL";
    } else if (cross.count(p)) {
      graph_cat[p] = "CP";
    } else if (role == "administrator" || role == "developer") {
      graph_cat[p] = "A-D";
    } else {
      graph_cat[p] = "U";
    }
  }

  json corpus;
  corpus["name"] = gt.at("corpus");

  // list blocks
  json jlists = json::array();
  for (const std::string& list : lists) {
    json jl;
    jl["list_id"] = list;
    jl["orientation"] = orientation.at(list);

    std::map<std::string, int> dcounts;
    std::map<std::string, int> mcounts;
    std::int64_t n_messages = 0;
    for (const auto& [p, per_list] : disc_of) {
      auto it = per_list.find(list);
      if (it != per_list.end() && !it->second.empty()) {
        dcounts[p] = static_cast<int>(it->second.size());
      }
    }
    for (const OMessage& m : messages) {
      if (m.list != list) continue;
      ++n_messages;
      ++mcounts[m.sender];
    }
    std::int64_t n_disc = 0;
    std::vector<std::int64_t> starts;
    for (const ODiscussion& d : discussions) {
      if (d.list != list) continue;
      ++n_disc;
      starts.push_back(d.start);
    }

    jl["n_discussions"] = n_disc;
    jl["n_participants"] = dcounts.size();
    jl["n_messages"] = n_messages;
    jl["discussion_counts"] = o_counts(dcounts);
    jl["message_counts"] = o_counts(mcounts);

    if (dcounts.empty()) {
      jl["q3"] = nullptr;
      jl["n_regular"] = 0;
      jl["n_occasional"] = 0;
      jl["regular_pct"] = nullptr;
      jl["occasional_pct"] = nullptr;
      jl["regularity"] = json::object();
    } else {
      jl["q3"] = q3_of_list.at(list);
      json jreg = json::object();
      std::int64_t n_regular = 0;
      for (const auto& [p, c] : dcounts) {
        bool reg = regular_on.at(list).at(p);
        jreg[p] = reg ? "regular" : "occasional";
        if (reg) ++n_regular;
      }
      const auto n_total = static_cast<std::int64_t>(dcounts.size());
      jl["regularity"] = jreg;
      jl["n_regular"] = n_regular;
      jl["n_occasional"] = n_total - n_regular;
      jl["regular_pct"] = o_round_percent(n_regular, n_total);
      jl["occasional_pct"] = o_round_percent(n_total - n_regular, n_total);
    }

    if (starts.size() < 2) {
      jl["mean_opening_delay_days"] = nullptr;
    } else {
      std::int64_t lo = *std::min_element(starts.begin(), starts.end());
      std::int64_t hi = *std::max_element(starts.begin(), starts.end());
      jl["mean_opening_delay_days"] =
          static_cast<double>(hi - lo) / static_cast<double>(starts.size() - 1) / 86400.0;
    }

    // involvement rows, fixed category order, absent when nobody is active
    static const char* kCats[] = {"project_leader", "cross_participant", "common_only",
                                  "regular_only",   "occasional_only",  "common_all",
                                  "cross_all"};
    json rows = json::array();
    for (const char* cat : kCats) {
      int members = 0;
      std::int64_t total = 0;
      for (const auto& [p, per_list] : msgs_of) {
        auto it = per_list.find(list);
        if (it == per_list.end() || it->second <= 0) continue;
        bool member = involvement_cat.at(p) == cat;
        if (std::string(cat) == "common_all" && common.count(p)) member = true;
        if (std::string(cat) == "cross_all" && cross.count(p)) member = true;
        if (!member) continue;
        ++members;
        total += it->second;
      }
      if (members == 0) continue;
      json r;
      r["category"] = cat;
      r["members"] = members;
      r["total_messages"] = total;
      r["mean"] = static_cast<double>(total) / static_cast<double>(members);
      rows.push_back(std::move(r));
    }
    jl["involvement"] = rows;
    jlists.push_back(std::move(jl));
  }
  corpus["lists"] = jlists;

  corpus["common_participants"] = std::vector<std::string>(common.begin(), common.end());
  corpus["cross_participants"] = std::vector<std::string>(cross.begin(), cross.end());

  json jpairs = json::array();
  for (const OPair& p : pairs) {
    json jp;
    jp["a"] = p.a;
    jp["b"] = p.b;
    jp["subject_key"] = p.subject;
    jp["overlap_start"] = p.os;
    jp["overlap_end"] = p.oe;
    jpairs.push_back(std::move(jp));
  }
  corpus["parallel_pairs"] = jpairs;

  {
    std::vector<std::int64_t> starts;
    for (const ODiscussion& d : discussions) starts.push_back(d.start);
    if (starts.size() < 2) {
      corpus["pooled_mean_opening_delay_days"] = nullptr;
    } else {
      std::int64_t lo = *std::min_element(starts.begin(), starts.end());
      std::int64_t hi = *std::max_element(starts.begin(), starts.end());
      corpus["pooled_mean_opening_delay_days"] =
          static_cast<double>(hi - lo) / static_cast<double>(starts.size() - 1) / 86400.0;
    }
  }

  {
    std::vector<std::string> ids;
    for (const ODiscussion& d : discussions) ids.push_back(d.id);
    std::sort(ids.begin(), ids.end());
    json steps = json::object();
    steps["Unlabeled"] = ids;
    corpus["design_steps"] = steps;
  }

  // timeline: sorted by (list, start, id)
  {
    std::vector<const ODiscussion*> sorted;
    for (const ODiscussion& d : discussions) sorted.push_back(&d);
    std::sort(sorted.begin(), sorted.end(), [](const ODiscussion* a, const ODiscussion* b) {
      if (a->list != b->list) return a->list < b->list;
      if (a->start != b->start) return a->start < b->start;
      return a->id < b->id;
    });
    std::map<std::string, std::string> partner;
    for (const OPair& p : pairs) {
      if (!partner.count(p.a)) partner[p.a] = p.b;
      if (!partner.count(p.b)) partner[p.b] = p.a;
    }
    json timeline = json::array();
    for (const ODiscussion* d : sorted) {
      json jr;
      jr["discussion_id"] = d->id;
      jr["list_id"] = d->list;
      jr["start"] = d->start;
      jr["end"] = d->end;
      jr["label"] = d->subject_key;
      jr["group"] = nullptr;
      jr["parallel_with"] = partner.count(d->id) ? json(partner.at(d->id)) : json(nullptr);
      timeline.push_back(std::move(jr));
    }
    corpus["timeline"] = timeline;
  }

  // quote edges straight from the plant, in the pipeline's canonical order
  struct OEdge {
    std::string quoter, quoted, qmsg, smsg, list;
    int depth = 1;
    int line_first = 0;
    bool self_quote = false;
  };
  std::vector<OEdge> edges;
  for (const auto& e : gt.at("quote_edges")) {
    edges.push_back({e.at("quoter"), e.at("quoted"), e.at("quoter_message"),
                     e.at("quoted_message"), e.at("list"), e.at("depth"), e.at("line_first"),
                     e.at("self_quote")});
  }
  std::sort(edges.begin(), edges.end(), [](const OEdge& a, const OEdge& b) {
    if (a.list != b.list) return a.list < b.list;
    if (a.qmsg != b.qmsg) return a.qmsg < b.qmsg;
    return a.line_first < b.line_first;
  });
  {
    json jq;
    json jedges = json::array();
    for (const OEdge& e : edges) {
      json je;
      je["quoter"] = e.quoter;
      je["quoted"] = e.quoted;
      je["quoter_message"] = e.qmsg;
      je["quoted_message"] = e.smsg;
      je["list"] = e.list;
      je["depth"] = e.depth;
      je["resolved"] = true;
      je["self_quote"] = e.self_quote;
      je["line_first"] = e.line_first;
      jedges.push_back(std::move(je));
    }
    jq["edges"] = jedges;
    jq["n_blocks"] = edges.size();
    jq["n_unresolved"] = 0;
    corpus["quotes"] = jq;
  }

  {
    json jcats = json::object();
    for (const auto& [p, c] : graph_cat) jcats[p] = c;
    corpus["categories"] = jcats;
  }

  // contingency, RD, attraction: pooled plus per list
  const std::vector<std::string> labels = {"U", "U-C", "A-D", "PL", "CP"};
  std::map<std::string, size_t> label_index;
  for (size_t i = 0; i < labels.size(); ++i) label_index[labels[i]] = i;
  const double rd_threshold = gt.at("thresholds").at("rd_threshold").get<double>();
  const std::int64_t rd_min_cell = gt.at("thresholds").at("rd_min_cell").get<std::int64_t>();

  auto tally = [&](const std::string& list_filter) {
    std::vector<std::vector<std::int64_t>> counts(labels.size(),
                                                  std::vector<std::int64_t>(labels.size(), 0));
    std::int64_t total = 0;
    for (const OEdge& e : edges) {
      if (!list_filter.empty() && e.list != list_filter) continue;
      ++counts[label_index.at(graph_cat.at(e.quoter))][label_index.at(graph_cat.at(e.quoted))];
      ++total;
    }
    return std::make_pair(counts, total);
  };
  auto table_json = [&](const std::vector<std::vector<std::int64_t>>& counts, std::int64_t total) {
    json j;
    j["labels"] = labels;
    j["counts"] = counts;
    j["total"] = total;
    j["excluded_unresolved"] = 0;
    return j;
  };
  auto rd_json = [&](const std::vector<std::vector<std::int64_t>>& counts, std::int64_t total) {
    const size_t n = labels.size();
    json values = json::array();
    json expected = json::array();
    std::vector<double> row(n, 0), col(n, 0);
    for (size_t i = 0; i < n; ++i) {
      for (size_t k = 0; k < n; ++k) {
        row[i] += static_cast<double>(counts[i][k]);
        col[k] += static_cast<double>(counts[i][k]);
      }
    }
    for (size_t i = 0; i < n; ++i) {
      json vrow = json::array();
      json erow = json::array();
      for (size_t k = 0; k < n; ++k) {
        double e = total > 0 ? row[i] * col[k] / static_cast<double>(total) : 0.0;
        erow.push_back(e);
        if (e > 0.0) {
          vrow.push_back((static_cast<double>(counts[i][k]) - e) / e);
        } else {
          vrow.push_back(nullptr);
        }
      }
      values.push_back(std::move(vrow));
      expected.push_back(std::move(erow));
    }
    json j;
    j["labels"] = labels;
    j["values"] = values;
    j["expected"] = expected;
    return j;
  };
  auto attraction_json = [&](const std::vector<std::vector<std::int64_t>>& counts,
                             std::int64_t total, const std::string& list_id) {
    json arr = json::array();
    if (total <= 0) return arr;
    const size_t n = labels.size();
    std::vector<double> row(n, 0), col(n, 0);
    for (size_t i = 0; i < n; ++i) {
      for (size_t k = 0; k < n; ++k) {
        row[i] += static_cast<double>(counts[i][k]);
        col[k] += static_cast<double>(counts[i][k]);
      }
    }
    struct E {
      std::string from, to;
      double w;
      std::int64_t c;
    };
    std::vector<E> out;
    for (size_t i = 0; i < n; ++i) {
      for (size_t k = 0; k < n; ++k) {
        double e = row[i] * col[k] / static_cast<double>(total);
        if (e <= 0.0) continue;
        double rd = (static_cast<double>(counts[i][k]) - e) / e;
        if (rd <= rd_threshold) continue;
        if (counts[i][k] < rd_min_cell) continue;
        out.push_back({labels[i], labels[k], rd, counts[i][k]});
      }
    }
    std::sort(out.begin(), out.end(), [](const E& a, const E& b) {
      if (a.w != b.w) return a.w > b.w;
      if (a.from != b.from) return a.from < b.from;
      return a.to < b.to;
    });
    for (const E& e : out) {
      json je;
      je["from"] = e.from;
      je["to"] = e.to;
      je["weight"] = e.w;
      je["count"] = e.c;
      je["list"] = list_id;
      arr.push_back(std::move(je));
    }
    return arr;
  };

  {
    auto [pc, pt] = tally("");
    json jcont, jrd, jattr;
    jcont["pooled"] = table_json(pc, pt);
    jrd["pooled"] = rd_json(pc, pt);
    jattr["pooled"] = attraction_json(pc, pt, "");
    json cper = json::object(), rper = json::object(), aper = json::object();
    for (const std::string& list : lists) {
      auto [c, t] = tally(list);
      cper[list] = table_json(c, t);
      rper[list] = rd_json(c, t);
      aper[list] = attraction_json(c, t, list);
    }
    jcont["per_list"] = cper;
    jrd["per_list"] = rper;
    jattr["per_list"] = aper;
    corpus["contingency"] = jcont;
    corpus["rd"] = jrd;
    corpus["attraction"] = jattr;
  }

  // revisions
  struct ORev {
    std::string id, space, committer;
    std::vector<std::string> credited;
  };
  std::vector<ORev> revs;
  for (const auto& r : gt.at("revisions")) {
    ORev o;
    o.id = r.at("id");
    o.space = r.at("space");
    o.committer = r.at("committer");
    for (const auto& c : r.at("credited")) o.credited.push_back(c.get<std::string>());
    revs.push_back(std::move(o));
  }
  {
    json jrev;
    for (const char* space_name : {"documentation", "implementation"}) {
      const std::string space = space_name;
      std::map<std::string, int> eff, cred, comb;
      std::int64_t n_records = 0;
      for (const ORev& r : revs) {
        if (r.space != space) continue;
        ++n_records;
        ++eff[r.committer];
        ++comb[r.committer];
        for (const std::string& c : r.credited) {
          ++cred[c];
          ++comb[c];
        }
      }
      json js;
      js["n_records"] = n_records;
      js["effective"] = o_counts(eff);
      json jf = json::object();
      for (const auto& [p, c] : eff) {
        jf[p] = static_cast<double>(c) / static_cast<double>(n_records);
      }
      js["fractions"] = jf;
      js["credited"] = o_counts(cred);
      js["combined"] = o_counts(comb);
      jrev[space] = js;
    }
    corpus["revisions"] = jrev;
  }

  // contribution profiles over everyone seen anywhere
  {
    std::set<std::string> everyone;
    for (const auto& [p, per_list] : disc_of) everyone.insert(p);
    for (const ORev& r : revs) {
      everyone.insert(r.committer);
      for (const std::string& c : r.credited) everyone.insert(c);
    }
    json arr = json::array();
    for (const std::string& p : everyone) {
      json jc;
      jc["participant"] = p;
      jc["role"] = role_of.count(p) ? role_of.at(p) : "unknown";
      json msgs = json::object();
      auto it = msgs_of.find(p);
      if (it != msgs_of.end()) {
        for (const auto& [list, n] : it->second) {
          if (n > 0) msgs[list] = n;
        }
      }
      jc["messages"] = msgs;
      int de = 0, dc = 0, ie = 0, ic = 0;
      for (const ORev& r : revs) {
        const bool doc = r.space == "documentation";
        if (r.committer == p) (doc ? de : ie) += 1;
        for (const std::string& c : r.credited) {
          if (c == p) (doc ? dc : ic) += 1;
        }
      }
      jc["doc_effective"] = de;
      jc["doc_credited"] = dc;
      jc["impl_effective"] = ie;
      jc["impl_credited"] = ic;
      arr.push_back(std::move(jc));
    }
    corpus["contribution_profiles"] = arr;
  }

  json bundle;
  bundle["schema_version"] = 1;
  bundle["corpora"] = json::array({corpus});
  return bundle;
}

}  // namespace crossbound
