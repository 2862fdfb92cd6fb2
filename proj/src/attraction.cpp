#include "crossbound/attraction.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace crossbound {

std::map<std::string, std::string> categorize_participants(
    const std::vector<ParticipationProfile>& profiles, const Roster& roster,
    const std::set<std::string>& cross, const CategoryScheme& scheme) {
  std::map<std::string, std::string> out;
  for (const ParticipationProfile& prof : profiles) {
    const std::string& name = prof.participant;
    auto ov = scheme.overrides.find(name);
    if (ov != scheme.overrides.end()) {
      out[name] = ov->second;
      continue;
    }
    if (scheme.champion && *scheme.champion == name) {
      out[name] = "U-C";
      continue;
    }
    const ParticipantId* entry = roster.find_canonical(name);
    const Role role = entry ? entry->role : Role::Unknown;
    if (role == Role::ProjectLeader) {
      out[name] = "PL";
    } else if (cross.count(name)) {
      out[name] = "CP";
    } else if (role == Role::Administrator || role == Role::Developer) {
      out[name] = "A-D";
    } else {
      out[name] = "U";
    }
  }
  return out;
}

ContingencyTable contingency_by_category(const std::vector<QuoteEdge>& edges,
                                         const std::map<std::string, std::string>& category_of,
                                         const std::optional<std::string>& list_filter,
                                         const std::vector<std::string>& scheme_labels) {
  ContingencyTable table;
  table.labels = scheme_labels;

  // categories outside the configured scheme are appended, sorted
  std::set<std::string> extra;
  for (const auto& [p, cat] : category_of) {
    if (std::find(table.labels.begin(), table.labels.end(), cat) == table.labels.end()) {
      extra.insert(cat);
    }
  }
  table.labels.insert(table.labels.end(), extra.begin(), extra.end());

  std::map<std::string, size_t> index;
  for (size_t i = 0; i < table.labels.size(); ++i) index[table.labels[i]] = i;
  table.counts.assign(table.labels.size(), std::vector<std::int64_t>(table.labels.size(), 0));

  for (const QuoteEdge& e : edges) {
    if (list_filter && e.list_id != *list_filter) continue;
    if (!e.resolved) {
      ++table.excluded_unresolved;
      continue;
    }
    auto qi = category_of.find(e.quoter);
    auto di = category_of.find(e.quoted);
    if (qi == category_of.end() || di == category_of.end()) {
      ++table.excluded_unresolved;
      continue;
    }
    ++table.counts[index.at(qi->second)][index.at(di->second)];
    ++table.total;
  }
  return table;
}

RDMatrix relative_deviation(const ContingencyTable& table) {
  if (table.total <= 0) throw std::invalid_argument("relative_deviation of an empty table");
  const size_t n = table.labels.size();
  std::vector<double> row(n, 0.0), col(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      row[i] += static_cast<double>(table.counts[i][j]);
      col[j] += static_cast<double>(table.counts[i][j]);
    }
  }
  RDMatrix rd;
  rd.labels = table.labels;
  rd.values.assign(n, std::vector<double>(n, 0.0));
  rd.expected.assign(n, std::vector<double>(n, 0.0));
  rd.defined.assign(n, std::vector<bool>(n, false));
  const double total = static_cast<double>(table.total);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      const double e = row[i] * col[j] / total;
      rd.expected[i][j] = e;
      if (e > 0.0) {
        rd.defined[i][j] = true;
        rd.values[i][j] = (static_cast<double>(table.counts[i][j]) - e) / e;
      }
    }
  }
  return rd;
}

std::vector<AttractionEdge> attraction_edges(const RDMatrix& rd, const ContingencyTable& table,
                                             double threshold, std::int64_t min_cell) {
  if (threshold < 0) throw std::invalid_argument("attraction threshold must be >= 0");
  std::vector<AttractionEdge> out;
  const size_t n = rd.labels.size();
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (!rd.defined[i][j]) continue;
      if (rd.values[i][j] <= threshold) continue;
      if (table.counts[i][j] < min_cell) continue;
      AttractionEdge e;
      e.from = rd.labels[i];
      e.to = rd.labels[j];
      e.weight = rd.values[i][j];
      e.count = table.counts[i][j];
      out.push_back(std::move(e));
    }
  }
  std::sort(out.begin(), out.end(), [](const AttractionEdge& a, const AttractionEdge& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    if (a.from != b.from) return a.from < b.from;
    return a.to < b.to;
  });
  return out;
}

std::string attraction_dot(const std::string& graph_name,
                           const std::vector<std::string>& labels,
                           const std::vector<AttractionEdge>& edges,
                           const std::vector<std::string>& list_order) {
  std::string out;
  out += "digraph \"" + graph_name + "\" {\n";
  out += "  rankdir=LR;\n";
  out += "  node [shape=ellipse];\n";
  if (list_order.size() == 2) {
    out += "  label=\"solid: " + list_order[0] + "   dashed: " + list_order[1] + "\";\n";
  }
  for (const std::string& l : labels) {
    out += "  \"" + l + "\";\n";
  }
  for (const AttractionEdge& e : edges) {
    const char* style = "solid";
    if (list_order.size() == 2 && e.list_id == list_order[1]) style = "dashed";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", e.weight);
    out += "  \"" + e.from + "\" -> \"" + e.to + "\" [label=\"" + buf + "\", style=" + style +
           "];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace crossbound
