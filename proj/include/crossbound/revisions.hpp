#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crossbound/identity.hpp"
#include "crossbound/types.hpp"

namespace crossbound {

// Revisions committed per participant, optionally limited to one space.
std::map<std::string, int> effective_revision_counts(const std::vector<RevisionRecord>& records,
                                                     std::optional<Space> space_filter);

// Committer -> fraction of records in the (filtered) set.
std::map<std::string, double> effective_revision_fractions(
    const std::vector<RevisionRecord>& records, std::optional<Space> space_filter);

// Revisions a participant is credited on. A record crediting k participants
// increments k counters.
std::map<std::string, int> credited_contributions(const std::vector<RevisionRecord>& records);

// effective + credited per participant (never double-counts one record).
std::map<std::string, int> combined_contributions(const std::vector<RevisionRecord>& records);

struct ContributionProfile {
  std::string participant;
  Role role = Role::Unknown;
  std::map<std::string, int> messages_per_list;
  int doc_effective = 0;
  int doc_credited = 0;
  int impl_effective = 0;
  int impl_credited = 0;
};

// One profile per participant appearing in any space.
std::vector<ContributionProfile> contribution_profiles(
    const std::vector<ParticipationProfile>& discussion_profiles,
    const std::vector<RevisionRecord>& records, const Roster& roster);

}  // namespace crossbound
