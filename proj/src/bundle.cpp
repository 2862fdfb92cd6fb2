#include "crossbound/bundle.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "crossbound/attraction.hpp"
#include "crossbound/metrics.hpp"
#include "crossbound/quotes.hpp"
#include "crossbound/revisions.hpp"

namespace crossbound {

using nlohmann::json;

int round_percent(std::int64_t numerator, std::int64_t denominator) {
  return static_cast<int>(
      std::llround(100.0 * static_cast<double>(numerator) / static_cast<double>(denominator)));
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

namespace {

json table_to_json(const ContingencyTable& t) {
  json j;
  j["labels"] = t.labels;
  j["counts"] = t.counts;
  j["total"] = t.total;
  j["excluded_unresolved"] = t.excluded_unresolved;
  return j;
}

json rd_to_json(const ContingencyTable& t) {
  json j;
  j["labels"] = t.labels;
  const size_t n = t.labels.size();
  json values = json::array();
  json expected = json::array();
  if (t.total > 0) {
    RDMatrix rd = relative_deviation(t);
    for (size_t i = 0; i < n; ++i) {
      json vrow = json::array();
      json erow = json::array();
      for (size_t k = 0; k < n; ++k) {
        vrow.push_back(rd.defined[i][k] ? json(rd.values[i][k]) : json(nullptr));
        erow.push_back(rd.expected[i][k]);
      }
      values.push_back(std::move(vrow));
      expected.push_back(std::move(erow));
    }
  } else {
    for (size_t i = 0; i < n; ++i) {
      values.push_back(std::vector<json>(n, json(nullptr)));
      expected.push_back(std::vector<double>(n, 0.0));
    }
  }
  j["values"] = values;
  j["expected"] = expected;
  return j;
}

json attraction_to_json(const ContingencyTable& t, double threshold, std::int64_t min_cell,
                        const std::string& list_id) {
  json arr = json::array();
  if (t.total <= 0) return arr;
  RDMatrix rd = relative_deviation(t);
  for (const AttractionEdge& e : attraction_edges(rd, t, threshold, min_cell)) {
    json j;
    j["from"] = e.from;
    j["to"] = e.to;
    j["weight"] = e.weight;
    j["count"] = e.count;
    j["list"] = list_id;
    arr.push_back(std::move(j));
  }
  return arr;
}

json edge_to_json(const QuoteEdge& e) {
  json j;
  j["quoter"] = e.quoter;
  j["quoted"] = e.quoted;
  j["quoter_message"] = e.quoter_message;
  j["quoted_message"] = e.quoted_message;
  j["list"] = e.list_id;
  j["depth"] = e.depth;
  j["resolved"] = e.resolved;
  j["self_quote"] = e.self_quote;
  j["line_first"] = e.line_first;
  return j;
}

json counts_map_to_json(const std::map<std::string, int>& m) {
  json j = json::object();
  for (const auto& [k, v] : m) j[k] = v;
  return j;
}

}  // namespace

json compute_corpus_metrics(const CorpusConfig& corpus_cfg, const std::vector<ListConfig>& lists,
                            const CorpusSelection& selection,
                            const std::vector<Discussion>& discussions,
                            const std::vector<Message>& all_messages,
                            const std::vector<RevisionRecord>& revisions, const Roster& roster,
                            const Thresholds& thresholds,
                            const std::optional<std::string>& champion,
                            const StageLexicon& lexicon,
                            const std::map<std::string, std::string>& overrides) {
  json out;
  out["name"] = corpus_cfg.name;

  std::vector<Message> corpus_messages;
  for (const Message& m : all_messages) {
    if (selection.messages.count(m.message_id)) corpus_messages.push_back(m);
  }

  std::vector<Discussion> list_a, list_b;
  for (const Discussion& d : discussions) {
    if (d.list_id == lists[0].list_id) list_a.push_back(d);
    if (d.list_id == lists[1].list_id) list_b.push_back(d);
  }

  ParallelOptions popt;
  popt.jaccard = thresholds.subject_fuzzy_jaccard;
  std::vector<ParallelPair> pairs = find_parallel_discussions(list_a, list_b, popt);
  std::sort(pairs.begin(), pairs.end(), [](const ParallelPair& x, const ParallelPair& y) {
    if (x.subject_key != y.subject_key) return x.subject_key < y.subject_key;
    return x.discussion_a < y.discussion_a;
  });
  std::set<std::string> cross = cross_participants(pairs, discussions);
  std::vector<ParticipationProfile> profiles =
      build_profiles(discussions, corpus_messages, roster, cross);

  std::set<std::string> common;
  for (const ParticipationProfile& p : profiles) {
    if (p.is_common) common.insert(p.participant);
  }

  // per-list blocks
  json jlists = json::array();
  for (const ListConfig& lc : lists) {
    json jl;
    jl["list_id"] = lc.list_id;
    jl["orientation"] = lc.orientation;

    std::vector<Discussion> own;
    for (const Discussion& d : discussions) {
      if (d.list_id == lc.list_id) own.push_back(d);
    }
    std::map<std::string, int> counts = participation_counts(discussions, lc.list_id);
    std::map<std::string, int> msg_counts;
    std::int64_t n_messages = 0;
    for (const Message& m : corpus_messages) {
      if (m.list_id != lc.list_id) continue;
      ++n_messages;
      ++msg_counts[m.sender];
    }

    jl["n_discussions"] = own.size();
    jl["n_participants"] = counts.size();
    jl["n_messages"] = n_messages;
    jl["discussion_counts"] = counts_map_to_json(counts);
    jl["message_counts"] = counts_map_to_json(msg_counts);

    if (counts.empty()) {
      jl["q3"] = nullptr;
      jl["n_regular"] = 0;
      jl["n_occasional"] = 0;
      jl["regular_pct"] = nullptr;
      jl["occasional_pct"] = nullptr;
      jl["regularity"] = json::object();
    } else {
      std::vector<int> values;
      for (const auto& [p, c] : counts) values.push_back(c);
      jl["q3"] = third_quartile(values);
      std::map<std::string, Regularity> reg = classify_regularity(counts);
      json jreg = json::object();
      std::int64_t n_regular = 0;
      for (const auto& [p, r] : reg) {
        jreg[p] = to_string(r);
        if (r == Regularity::Regular) ++n_regular;
      }
      const std::int64_t n_total = static_cast<std::int64_t>(counts.size());
      jl["regularity"] = jreg;
      jl["n_regular"] = n_regular;
      jl["n_occasional"] = n_total - n_regular;
      jl["regular_pct"] = round_percent(n_regular, n_total);
      jl["occasional_pct"] = round_percent(n_total - n_regular, n_total);
    }

    auto delay = mean_opening_delay(own);
    jl["mean_opening_delay_days"] = delay ? json(*delay) : json(nullptr);
    jlists.push_back(std::move(jl));
  }

  // involvement rows live next to their list block
  std::vector<std::string> list_ids = {lists[0].list_id, lists[1].list_id};
  std::vector<InvolvementRow> involvement = involvement_by_category(profiles, list_ids);
  for (json& jl : jlists) {
    json rows = json::array();
    for (const InvolvementRow& row : involvement) {
      if (row.list_id != jl["list_id"].get<std::string>()) continue;
      json r;
      r["category"] = row.category;
      r["members"] = row.members;
      r["total_messages"] = row.total_messages;
      r["mean"] = row.mean;
      rows.push_back(std::move(r));
    }
    jl["involvement"] = rows;
  }
  out["lists"] = jlists;

  out["common_participants"] = std::vector<std::string>(common.begin(), common.end());
  out["cross_participants"] = std::vector<std::string>(cross.begin(), cross.end());

  json jpairs = json::array();
  for (const ParallelPair& p : pairs) {
    json jp;
    jp["a"] = p.discussion_a;
    jp["b"] = p.discussion_b;
    jp["subject_key"] = p.subject_key;
    jp["overlap_start"] = p.overlap_start;
    jp["overlap_end"] = p.overlap_end;
    jpairs.push_back(std::move(jp));
  }
  out["parallel_pairs"] = jpairs;

  auto pooled_delay = mean_opening_delay(discussions);
  out["pooled_mean_opening_delay_days"] = pooled_delay ? json(*pooled_delay) : json(nullptr);

  // design steps + timeline
  std::map<std::string, std::vector<std::string>> groups =
      group_by_design_step(discussions, lexicon, overrides);
  json jsteps = json::object();
  for (const auto& [stage, ids] : groups) jsteps[stage] = ids;
  out["design_steps"] = jsteps;

  json jtimeline = json::array();
  for (const TimelineRecord& r : build_timeline(discussions, pairs, groups)) {
    json jr;
    jr["discussion_id"] = r.discussion_id;
    jr["list_id"] = r.list_id;
    jr["start"] = r.start;
    jr["end"] = r.end;
    jr["label"] = r.label;
    jr["group"] = r.group ? json(*r.group) : json(nullptr);
    jr["parallel_with"] = r.parallel_with ? json(*r.parallel_with) : json(nullptr);
    jtimeline.push_back(std::move(jr));
  }
  out["timeline"] = jtimeline;

  // quote graph
  QuoteOptions qopt;
  qopt.min_chars = thresholds.quote_min_chars;
  qopt.min_tokens = thresholds.quote_min_tokens;
  qopt.fuzzy = thresholds.quote_fuzzy;
  qopt.fuzzy_overlap = thresholds.quote_fuzzy_overlap;
  std::vector<QuoteEdge> edges = build_quote_graph(selection, discussions, all_messages, qopt);
  json jquotes;
  json jedges = json::array();
  std::int64_t unresolved = 0;
  for (const QuoteEdge& e : edges) {
    if (!e.resolved) ++unresolved;
    jedges.push_back(edge_to_json(e));
  }
  jquotes["edges"] = jedges;
  jquotes["n_blocks"] = edges.size();
  jquotes["n_unresolved"] = unresolved;
  out["quotes"] = jquotes;

  // categories + contingency + RD + attraction
  CategoryScheme scheme;
  scheme.champion = champion;
  std::map<std::string, std::string> categories =
      categorize_participants(profiles, roster, cross, scheme);
  json jcats = json::object();
  for (const auto& [p, c] : categories) jcats[p] = c;
  out["categories"] = jcats;

  ContingencyTable pooled =
      contingency_by_category(edges, categories, std::nullopt, scheme.labels);
  json jcont;
  json jrd;
  json jattr;
  jcont["pooled"] = table_to_json(pooled);
  jrd["pooled"] = rd_to_json(pooled);
  jattr["pooled"] =
      attraction_to_json(pooled, thresholds.rd_threshold, thresholds.rd_min_cell, "");
  json jcont_per = json::object();
  json jrd_per = json::object();
  json jattr_per = json::object();
  for (const ListConfig& lc : lists) {
    ContingencyTable t =
        contingency_by_category(edges, categories, lc.list_id, scheme.labels);
    jcont_per[lc.list_id] = table_to_json(t);
    jrd_per[lc.list_id] = rd_to_json(t);
    jattr_per[lc.list_id] =
        attraction_to_json(t, thresholds.rd_threshold, thresholds.rd_min_cell, lc.list_id);
  }
  jcont["per_list"] = jcont_per;
  jrd["per_list"] = jrd_per;
  jattr["per_list"] = jattr_per;
  out["contingency"] = jcont;
  out["rd"] = jrd;
  out["attraction"] = jattr;

  // revisions inside the corpus window
  std::vector<RevisionRecord> window;
  for (const RevisionRecord& r : revisions) {
    if (r.date >= corpus_cfg.date_from && r.date <= corpus_cfg.date_to) window.push_back(r);
  }
  json jrev;
  for (Space space : {Space::Documentation, Space::Implementation}) {
    std::vector<RevisionRecord> in_space;
    for (const RevisionRecord& r : window) {
      if (r.space == space) in_space.push_back(r);
    }
    json js;
    js["n_records"] = in_space.size();
    js["effective"] = counts_map_to_json(effective_revision_counts(in_space, std::nullopt));
    json jf = json::object();
    for (const auto& [p, f] : effective_revision_fractions(in_space, std::nullopt)) jf[p] = f;
    js["fractions"] = jf;
    js["credited"] = counts_map_to_json(credited_contributions(in_space));
    js["combined"] = counts_map_to_json(combined_contributions(in_space));
    jrev[to_string(space)] = js;
  }
  out["revisions"] = jrev;

  json jprofiles = json::array();
  for (const ContributionProfile& c : contribution_profiles(profiles, window, roster)) {
    json jc;
    jc["participant"] = c.participant;
    jc["role"] = to_string(c.role);
    jc["messages"] = counts_map_to_json(c.messages_per_list);
    jc["doc_effective"] = c.doc_effective;
    jc["doc_credited"] = c.doc_credited;
    jc["impl_effective"] = c.impl_effective;
    jc["impl_credited"] = c.impl_credited;
    jprofiles.push_back(std::move(jc));
  }
  out["contribution_profiles"] = jprofiles;

  return out;
}

namespace {

bool compare_impl(const json& a, const json& b, double rel_tol, const std::string& path,
                  std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = path + ": " + msg;
    return false;
  };
  if (a.is_number() && b.is_number()) {
    if (a.is_number_integer() && b.is_number_integer()) {
      if (a.get<std::int64_t>() != b.get<std::int64_t>()) {
        return fail(a.dump() + " != " + b.dump());
      }
      return true;
    }
    const double x = a.get<double>();
    const double y = b.get<double>();
    const double scale = std::max({1.0, std::fabs(x), std::fabs(y)});
    if (std::fabs(x - y) > rel_tol * scale) return fail(a.dump() + " !~ " + b.dump());
    return true;
  }
  if (a.type() != b.type()) return fail("type mismatch " + a.dump() + " vs " + b.dump());
  if (a.is_object()) {
    if (a.size() != b.size()) return fail("object size mismatch");
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!b.contains(it.key())) return fail("missing key " + it.key());
      if (!compare_impl(it.value(), b[it.key()], rel_tol, path + "/" + it.key(), why)) {
        return false;
      }
    }
    return true;
  }
  if (a.is_array()) {
    if (a.size() != b.size()) {
      return fail("array size " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
    for (size_t i = 0; i < a.size(); ++i) {
      if (!compare_impl(a[i], b[i], rel_tol, path + "[" + std::to_string(i) + "]", why)) {
        return false;
      }
    }
    return true;
  }
  if (a != b) return fail(a.dump() + " != " + b.dump());
  return true;
}

}  // namespace

bool compare_json(const json& a, const json& b, double rel_tol, std::string* why) {
  return compare_impl(a, b, rel_tol, "", why);
}

}  // namespace crossbound
