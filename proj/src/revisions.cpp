#include "crossbound/revisions.hpp"

#include <algorithm>

namespace crossbound {

std::map<std::string, int> effective_revision_counts(const std::vector<RevisionRecord>& records,
                                                     std::optional<Space> space_filter) {
  std::map<std::string, int> out;
  for (const RevisionRecord& r : records) {
    if (space_filter && r.space != *space_filter) continue;
    ++out[r.committer];
  }
  return out;
}

std::map<std::string, double> effective_revision_fractions(
    const std::vector<RevisionRecord>& records, std::optional<Space> space_filter) {
  std::map<std::string, int> counts = effective_revision_counts(records, space_filter);
  std::int64_t total = 0;
  for (const auto& [p, c] : counts) total += c;
  std::map<std::string, double> out;
  if (total == 0) return out;
  for (const auto& [p, c] : counts) {
    out[p] = static_cast<double>(c) / static_cast<double>(total);
  }
  return out;
}

std::map<std::string, int> credited_contributions(const std::vector<RevisionRecord>& records) {
  std::map<std::string, int> out;
  for (const RevisionRecord& r : records) {
    for (const std::string& p : r.credited) ++out[p];
  }
  return out;
}

std::map<std::string, int> combined_contributions(const std::vector<RevisionRecord>& records) {
  std::map<std::string, int> out = effective_revision_counts(records, std::nullopt);
  for (const RevisionRecord& r : records) {
    for (const std::string& p : r.credited) ++out[p];
  }
  return out;
}

std::vector<ContributionProfile> contribution_profiles(
    const std::vector<ParticipationProfile>& discussion_profiles,
    const std::vector<RevisionRecord>& records, const Roster& roster) {
  std::map<std::string, ContributionProfile> out;

  for (const ParticipationProfile& prof : discussion_profiles) {
    ContributionProfile& c = out[prof.participant];
    c.participant = prof.participant;
    c.messages_per_list = prof.messages_per_list;
  }
  for (const RevisionRecord& r : records) {
    const bool doc = r.space == Space::Documentation;
    ContributionProfile& c = out[r.committer];
    c.participant = r.committer;
    (doc ? c.doc_effective : c.impl_effective) += 1;
    for (const std::string& p : r.credited) {
      ContributionProfile& k = out[p];
      k.participant = p;
      (doc ? k.doc_credited : k.impl_credited) += 1;
    }
  }
  std::vector<ContributionProfile> profiles;
  profiles.reserve(out.size());
  for (auto& [name, prof] : out) {
    const ParticipantId* entry = roster.find_canonical(name);
    prof.role = entry ? entry->role : Role::Unknown;
    profiles.push_back(std::move(prof));
  }
  return profiles;
}

}  // namespace crossbound
