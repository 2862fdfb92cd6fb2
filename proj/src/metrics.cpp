#include "crossbound/metrics.hpp"

#include <algorithm>
#include <stdexcept>

#include "crossbound/text.hpp"

namespace crossbound {

std::map<std::string, int> participation_counts(const std::vector<Discussion>& discussions,
                                                const std::string& list_id) {
  std::map<std::string, int> counts;
  for (const Discussion& d : discussions) {
    if (d.list_id != list_id) continue;
    for (const std::string& p : d.participants) ++counts[p];
  }
  return counts;
}

double third_quartile(std::vector<int> counts) {
  if (counts.empty()) throw std::invalid_argument("third_quartile of an empty multiset");
  std::sort(counts.begin(), counts.end());
  const size_t n = counts.size();
  const size_t rank = (3 * n + 3) / 4;  // ceil(0.75 * n), 1-based
  return static_cast<double>(counts[rank - 1]);
}

std::map<std::string, Regularity> classify_regularity(const std::map<std::string, int>& counts) {
  std::vector<int> values;
  values.reserve(counts.size());
  for (const auto& [p, c] : counts) values.push_back(c);
  const double q3 = third_quartile(values);
  std::map<std::string, Regularity> out;
  for (const auto& [p, c] : counts) {
    out[p] = static_cast<double>(c) > q3 ? Regularity::Regular : Regularity::Occasional;
  }
  return out;
}

namespace {

std::set<std::string> list_participants(const std::vector<Discussion>& discussions) {
  std::set<std::string> out;
  for (const Discussion& d : discussions) out.insert(d.participants.begin(), d.participants.end());
  return out;
}

}  // namespace

std::set<std::string> common_participants(const std::vector<Discussion>& list_a,
                                          const std::vector<Discussion>& list_b) {
  std::set<std::string> la, lb;
  for (const Discussion& d : list_a) la.insert(d.list_id);
  for (const Discussion& d : list_b) lb.insert(d.list_id);
  if ((la.size() > 1) || (lb.size() > 1) || (!la.empty() && la == lb)) {
    throw std::invalid_argument("common_participants needs discussions from two distinct lists");
  }
  std::set<std::string> pa = list_participants(list_a);
  std::set<std::string> pb = list_participants(list_b);
  std::set<std::string> out;
  std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(),
                        std::inserter(out, out.begin()));
  return out;
}

namespace {

bool subjects_match(const std::string& a, const std::string& b,
                    const std::optional<double>& jaccard) {
  if (!jaccard) return a == b;
  std::vector<std::string> ta = tokenize(a);
  std::vector<std::string> tb = tokenize(b);
  std::set<std::string> sa(ta.begin(), ta.end());
  std::set<std::string> sb(tb.begin(), tb.end());
  if (sa.empty() && sb.empty()) return true;
  std::set<std::string> inter;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                        std::inserter(inter, inter.begin()));
  std::set<std::string> uni = sa;
  uni.insert(sb.begin(), sb.end());
  return static_cast<double>(inter.size()) / static_cast<double>(uni.size()) >= *jaccard;
}

}  // namespace

std::vector<ParallelPair> find_parallel_discussions(const std::vector<Discussion>& list_a,
                                                    const std::vector<Discussion>& list_b,
                                                    const ParallelOptions& options) {
  std::vector<const Discussion*> a, b;
  for (const Discussion& d : list_a) a.push_back(&d);
  for (const Discussion& d : list_b) b.push_back(&d);
  auto by_start = [](const Discussion* x, const Discussion* y) {
    if (x->start != y->start) return x->start < y->start;
    return x->discussion_id < y->discussion_id;
  };
  std::sort(a.begin(), a.end(), by_start);
  std::sort(b.begin(), b.end(), by_start);

  std::vector<ParallelPair> out;
  for (const Discussion* da : a) {
    for (const Discussion* db : b) {
      if (da->list_id == db->list_id) continue;
      if (!subjects_match(da->subject_key, db->subject_key, options.jaccard)) continue;
      if (da->start > db->end || db->start > da->end) continue;
      ParallelPair p;
      p.discussion_a = da->discussion_id;
      p.discussion_b = db->discussion_id;
      p.subject_key = da->subject_key;
      p.overlap_start = std::max(da->start, db->start);
      p.overlap_end = std::min(da->end, db->end);
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::set<std::string> cross_participants(const std::vector<ParallelPair>& pairs,
                                         const std::vector<Discussion>& discussions) {
  std::map<std::string, const Discussion*> by_id;
  for (const Discussion& d : discussions) by_id.emplace(d.discussion_id, &d);
  std::set<std::string> out;
  for (const ParallelPair& pair : pairs) {
    auto ia = by_id.find(pair.discussion_a);
    auto ib = by_id.find(pair.discussion_b);
    if (ia == by_id.end() || ib == by_id.end()) continue;
    for (const std::string& p : ia->second->participants) {
      if (ib->second->participants.count(p)) out.insert(p);
    }
  }
  return out;
}

std::vector<ParticipationProfile> build_profiles(const std::vector<Discussion>& discussions,
                                                 const std::vector<Message>& corpus_messages,
                                                 const Roster& roster,
                                                 const std::set<std::string>& cross) {
  std::set<std::string> lists;
  for (const Discussion& d : discussions) lists.insert(d.list_id);

  std::map<std::string, ParticipationProfile> profiles;
  for (const Discussion& d : discussions) {
    for (const std::string& p : d.participants) {
      ParticipationProfile& prof = profiles[p];
      prof.participant = p;
      ++prof.discussions_per_list[d.list_id];
    }
  }
  for (const Message& m : corpus_messages) {
    auto it = profiles.find(m.sender);
    if (it != profiles.end()) ++it->second.messages_per_list[m.list_id];
  }

  // per-list regularity
  for (const std::string& list : lists) {
    std::map<std::string, int> counts = participation_counts(discussions, list);
    if (counts.empty()) continue;
    for (const auto& [p, reg] : classify_regularity(counts)) {
      profiles[p].regularity[list] = reg;
    }
  }

  for (auto& [name, prof] : profiles) {
    int active_lists = 0;
    for (const auto& [list, c] : prof.discussions_per_list) {
      if (c > 0) ++active_lists;
    }
    prof.is_common = active_lists >= 2;
    prof.is_cross = cross.count(name) > 0;

    const ParticipantId* entry = roster.find_canonical(name);
    const Role role = entry ? entry->role : Role::Unknown;
    if (role == Role::ProjectLeader) {
      prof.category = Category::ProjectLeader;
    } else if (prof.is_cross) {
      prof.category = Category::CrossParticipant;
    } else if (prof.is_common) {
      prof.category = Category::CommonOnly;
    } else {
      bool regular = false;
      for (const auto& [list, reg] : prof.regularity) {
        if (reg == Regularity::Regular) regular = true;
      }
      prof.category = regular ? Category::RegularOnly : Category::OccasionalOnly;
    }
  }

  std::vector<ParticipationProfile> out;
  out.reserve(profiles.size());
  for (auto& [name, prof] : profiles) out.push_back(std::move(prof));
  return out;
}

std::vector<InvolvementRow> involvement_by_category(
    const std::vector<ParticipationProfile>& profiles, const std::vector<std::string>& lists) {
  static const char* kCategories[] = {"project_leader", "cross_participant", "common_only",
                                      "regular_only",   "occasional_only",  "common_all",
                                      "cross_all"};
  std::vector<InvolvementRow> rows;
  for (const std::string& list : lists) {
    for (const char* cat : kCategories) {
      InvolvementRow row;
      row.list_id = list;
      row.category = cat;
      for (const ParticipationProfile& prof : profiles) {
        auto mit = prof.messages_per_list.find(list);
        if (mit == prof.messages_per_list.end() || mit->second <= 0) continue;
        bool member = false;
        const std::string disjoint = to_string(prof.category);
        if (disjoint == cat) member = true;
        if (std::string(cat) == "common_all" && prof.is_common) member = true;
        if (std::string(cat) == "cross_all" && prof.is_cross) member = true;
        if (!member) continue;
        ++row.members;
        row.total_messages += mit->second;
      }
      if (row.members == 0) continue;  // absent, not zero
      row.mean = static_cast<double>(row.total_messages) / static_cast<double>(row.members);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::optional<double> mean_opening_delay(const std::vector<Discussion>& discussions) {
  if (discussions.size() < 2) return std::nullopt;
  Timestamp lo = discussions.front().start;
  Timestamp hi = discussions.front().start;
  for (const Discussion& d : discussions) {
    lo = std::min(lo, d.start);
    hi = std::max(hi, d.start);
  }
  // telescoping: the mean consecutive gap is (max - min) / (n - 1)
  return static_cast<double>(hi - lo) / static_cast<double>(discussions.size() - 1) / 86400.0;
}

std::map<std::string, std::vector<std::string>> group_by_design_step(
    const std::vector<Discussion>& discussions, const StageLexicon& lexicon,
    const std::map<std::string, std::string>& overrides) {
  std::set<std::string> known;
  for (const Discussion& d : discussions) known.insert(d.discussion_id);
  for (const auto& [id, stage] : overrides) {
    if (!known.count(id)) {
      throw std::invalid_argument("override references unknown discussion: " + id);
    }
  }

  std::map<std::string, std::vector<std::string>> out;
  std::vector<const Discussion*> sorted;
  for (const Discussion& d : discussions) sorted.push_back(&d);
  std::sort(sorted.begin(), sorted.end(), [](const Discussion* a, const Discussion* b) {
    return a->discussion_id < b->discussion_id;
  });

  for (const Discussion* d : sorted) {
    auto ov = overrides.find(d->discussion_id);
    if (ov != overrides.end()) {
      out[ov->second].push_back(d->discussion_id);
      continue;
    }
    std::string stage = kUnlabeledStage;
    for (const auto& [name, keywords] : lexicon.stages) {
      bool hit = false;
      for (const std::string& kw : keywords) {
        if (d->subject_key.find(to_lower(kw)) != std::string::npos) {
          hit = true;
          break;
        }
      }
      if (hit) {
        stage = name;
        break;
      }
    }
    out[stage].push_back(d->discussion_id);
  }
  return out;
}

std::vector<TimelineRecord> build_timeline(
    const std::vector<Discussion>& discussions, const std::vector<ParallelPair>& pairs,
    const std::map<std::string, std::vector<std::string>>& groups) {
  std::map<std::string, std::string> stage_of;
  for (const auto& [stage, ids] : groups) {
    if (stage == kUnlabeledStage) continue;
    for (const std::string& id : ids) stage_of[id] = stage;
  }
  std::map<std::string, std::string> partner;
  for (const ParallelPair& p : pairs) {
    if (!partner.count(p.discussion_a)) partner[p.discussion_a] = p.discussion_b;
    if (!partner.count(p.discussion_b)) partner[p.discussion_b] = p.discussion_a;
  }

  std::vector<TimelineRecord> records;
  for (const Discussion& d : discussions) {
    TimelineRecord r;
    r.discussion_id = d.discussion_id;
    r.list_id = d.list_id;
    r.start = d.start;
    r.end = d.end;
    auto sit = stage_of.find(d.discussion_id);
    if (sit != stage_of.end()) {
      r.group = sit->second;
      r.label = sit->second;
    } else {
      r.label = d.subject_key;
    }
    auto pit = partner.find(d.discussion_id);
    if (pit != partner.end()) r.parallel_with = pit->second;
    records.push_back(std::move(r));
  }
  std::sort(records.begin(), records.end(), [](const TimelineRecord& a, const TimelineRecord& b) {
    if (a.list_id != b.list_id) return a.list_id < b.list_id;
    if (a.start != b.start) return a.start < b.start;
    return a.discussion_id < b.discussion_id;
  });
  return records;
}

}  // namespace crossbound
