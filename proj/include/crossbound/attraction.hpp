#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crossbound/identity.hpp"
#include "crossbound/types.hpp"

namespace crossbound {

struct CategoryScheme {
  std::vector<std::string> labels = {"U", "U-C", "A-D", "PL", "CP"};
  std::optional<std::string> champion;           // canonical name mapped to U-C
  std::map<std::string, std::string> overrides;  // participant -> label, wins outright
};

// override > champion > project leader > cross-participant > admin/dev > user.
std::map<std::string, std::string> categorize_participants(
    const std::vector<ParticipationProfile>& profiles, const Roster& roster,
    const std::set<std::string>& cross, const CategoryScheme& scheme);

struct ContingencyTable {
  std::vector<std::string> labels;  // rows and columns share one label list
  std::vector<std::vector<std::int64_t>> counts;
  std::int64_t total = 0;
  std::int64_t excluded_unresolved = 0;
};

// counts[i][j] = resolved edges with quoter category i and quoted category j.
// Unresolved edges are excluded and counted separately.
ContingencyTable contingency_by_category(const std::vector<QuoteEdge>& edges,
                                         const std::map<std::string, std::string>& category_of,
                                         const std::optional<std::string>& list_filter,
                                         const std::vector<std::string>& scheme_labels);

struct RDMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> values;    // (observed - expected) / expected
  std::vector<std::vector<double>> expected;  // row * col / total
  std::vector<std::vector<bool>> defined;     // false where expected == 0
};

RDMatrix relative_deviation(const ContingencyTable& table);  // throws when total == 0

struct AttractionEdge {
  std::string from;
  std::string to;
  double weight = 0.0;       // RD value
  std::int64_t count = 0;    // observed cell count
  std::string list_id;       // empty for pooled tables
};

// Positive-association edges: RD > threshold and cell count >= min_cell,
// sorted by weight descending.
std::vector<AttractionEdge> attraction_edges(const RDMatrix& rd, const ContingencyTable& table,
                                             double threshold = 0.0, std::int64_t min_cell = 5);

// Graphviz digraph; edges of the first list solid, the second dashed.
std::string attraction_dot(const std::string& graph_name,
                           const std::vector<std::string>& labels,
                           const std::vector<AttractionEdge>& edges,
                           const std::vector<std::string>& list_order);

}  // namespace crossbound
