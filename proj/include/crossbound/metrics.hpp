#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crossbound/identity.hpp"
#include "crossbound/types.hpp"

namespace crossbound {

// Distinct discussions each participant posted in, for one list.
std::map<std::string, int> participation_counts(const std::vector<Discussion>& discussions,
                                                const std::string& list_id);

// Nearest-rank 75th percentile: element at 1-based index ceil(0.75 * n).
double third_quartile(std::vector<int> counts);

// Regular iff count is strictly greater than the third quartile.
std::map<std::string, Regularity> classify_regularity(const std::map<std::string, int>& counts);

std::set<std::string> common_participants(const std::vector<Discussion>& list_a,
                                          const std::vector<Discussion>& list_b);

struct ParallelOptions {
  std::optional<double> jaccard;  // token-set similarity threshold; nullopt = exact match
};

std::vector<ParallelPair> find_parallel_discussions(const std::vector<Discussion>& list_a,
                                                    const std::vector<Discussion>& list_b,
                                                    const ParallelOptions& options = {});

// Participants posting in both members of at least one pair.
std::set<std::string> cross_participants(const std::vector<ParallelPair>& pairs,
                                         const std::vector<Discussion>& discussions);

// Per-participant counts, regularity, and the category assignment with
// precedence ProjectLeader > Cross > CommonOnly > RegularOnly > OccasionalOnly.
std::vector<ParticipationProfile> build_profiles(const std::vector<Discussion>& discussions,
                                                 const std::vector<Message>& corpus_messages,
                                                 const Roster& roster,
                                                 const std::set<std::string>& cross);

struct InvolvementRow {
  std::string list_id;
  std::string category;  // five disjoint categories plus common/cross roll-ups
  int members = 0;
  std::int64_t total_messages = 0;
  double mean = 0.0;
};

// Mean messages per active category member, one row per (list, category) with
// at least one active member. Categories with nobody active are absent.
std::vector<InvolvementRow> involvement_by_category(
    const std::vector<ParticipationProfile>& profiles, const std::vector<std::string>& lists);

// (latest start - earliest start) / (n - 1), in days; absent for < 2 discussions.
std::optional<double> mean_opening_delay(const std::vector<Discussion>& discussions);

struct StageLexicon {
  // ordered: the first stage whose keyword hits the subject key wins
  std::vector<std::pair<std::string, std::vector<std::string>>> stages;
};

inline constexpr const char* kUnlabeledStage = "Unlabeled";

// Overrides always win; they encode the by-hand judgment a lexicon cannot.
std::map<std::string, std::vector<std::string>> group_by_design_step(
    const std::vector<Discussion>& discussions, const StageLexicon& lexicon,
    const std::map<std::string, std::string>& overrides);

std::vector<TimelineRecord> build_timeline(
    const std::vector<Discussion>& discussions, const std::vector<ParallelPair>& pairs,
    const std::map<std::string, std::vector<std::string>>& groups);

}  // namespace crossbound
