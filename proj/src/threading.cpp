#include "crossbound/threading.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "crossbound/text.hpp"

namespace crossbound {

std::string normalize_subject(const std::string& subject_raw) {
  std::string s = subject_raw;
  bool changed = true;
  while (changed) {
    changed = false;
    size_t b = 0;
    while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    if (b > 0) {
      s = s.substr(b);
      changed = true;
      continue;
    }
    if (!s.empty() && s[0] == '[') {
      size_t close = s.find(']');
      if (close != std::string::npos) {
        s = s.substr(close + 1);
        changed = true;
        continue;
      }
    }
    static const char* markers[] = {"re", "fwd", "fw", "aw", "sv"};
    std::string low = to_lower(s);
    for (const char* m : markers) {
      size_t len = std::char_traits<char>::length(m);
      if (low.size() > len && low.compare(0, len, m) == 0 && low[len] == ':') {
        s = s.substr(len + 1);
        changed = true;
        break;
      }
    }
  }
  return normalize_text(s);
}

namespace {

struct Node {
  const Message* msg;
  int parent = -1;  // index into nodes, -1 when rootish
};

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(size_t n) : parent(n) {
    for (size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool date_id_less(const Message* a, const Message* b) {
  if (a->date != b->date) return a->date < b->date;
  return a->message_id < b->message_id;
}

}  // namespace

ThreadingResult build_discussions(const CorpusSelection& selection,
                                  const std::vector<Message>& all_messages,
                                  const ThreadingOptions& options) {
  ThreadingResult result;

  std::map<std::string, const Message*> by_id;
  for (const Message& m : all_messages) by_id.emplace(m.message_id, &m);

  // per-list node tables, messages in (date, id) order
  std::map<std::string, std::vector<Node>> per_list;
  for (const std::string& id : selection.messages) {
    auto it = by_id.find(id);
    if (it == by_id.end()) continue;
    per_list[it->second->list_id].push_back({it->second});
  }

  for (auto& [list_id, nodes] : per_list) {
    std::sort(nodes.begin(), nodes.end(),
              [](const Node& a, const Node& b) { return date_id_less(a.msg, b.msg); });
    std::map<std::string, int> index_of;
    for (size_t i = 0; i < nodes.size(); ++i) index_of[nodes[i].msg->message_id] = static_cast<int>(i);

    // resolve each message's parent: In-Reply-To first, then References
    // newest-first; only parents on the same list count.
    for (size_t i = 0; i < nodes.size(); ++i) {
      const Message* m = nodes[i].msg;
      std::vector<std::string> candidates;
      if (m->in_reply_to) candidates.push_back(*m->in_reply_to);
      for (auto it = m->references.rbegin(); it != m->references.rend(); ++it) {
        candidates.push_back(*it);
      }
      for (const std::string& pid : candidates) {
        auto it = index_of.find(pid);
        if (it == index_of.end() || it->second == static_cast<int>(i)) continue;
        const Message* parent = nodes[it->second].msg;
        if (parent->date > m->date) {
          result.diagnostics.push_back(
              {list_id, m->message_id, "reply header points at a later message, edge dropped"});
          continue;
        }
        nodes[i].parent = it->second;
        break;
      }
    }

    // break reference cycles at the edge whose child is oldest
    std::vector<int> state(nodes.size(), 0);
    for (size_t i = 0; i < nodes.size(); ++i) {
      if (state[i] != 0) continue;
      std::vector<int> path;
      int cur = static_cast<int>(i);
      while (cur != -1 && state[cur] == 0) {
        state[cur] = 1;
        path.push_back(cur);
        cur = nodes[cur].parent;
      }
      if (cur != -1 && state[cur] == 1) {
        // found a cycle: collect it, cut at the oldest child
        std::vector<int> cycle;
        int x = cur;
        do {
          cycle.push_back(x);
          x = nodes[x].parent;
        } while (x != cur);
        int cut = *std::min_element(cycle.begin(), cycle.end(), [&](int a, int b) {
          return date_id_less(nodes[a].msg, nodes[b].msg);
        });
        nodes[cut].parent = -1;
        result.diagnostics.push_back(
            {list_id, nodes[cut].msg->message_id, "reference cycle broken at oldest edge"});
      }
      for (int n : path) state[n] = 2;
    }

    DisjointSet ds(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].parent != -1) ds.unite(static_cast<int>(i), nodes[i].parent);
    }

    // proto-discussions: one per component, keyed by its earliest message
    std::map<int, std::vector<int>> components;
    for (size_t i = 0; i < nodes.size(); ++i) components[ds.find(static_cast<int>(i))].push_back(static_cast<int>(i));

    struct Proto {
      std::vector<int> members;  // sorted by (date, id) since nodes are
      Timestamp start;
      Timestamp end;
      std::string subject_key;
    };
    std::vector<Proto> protos;
    for (auto& [root, members] : components) {
      Proto p;
      p.members = members;
      p.start = nodes[members.front()].msg->date;
      p.end = nodes[members.back()].msg->date;
      p.subject_key = normalize_subject(nodes[members.front()].msg->subject_raw);
      protos.push_back(std::move(p));
    }
    std::sort(protos.begin(), protos.end(), [&](const Proto& a, const Proto& b) {
      if (a.start != b.start) return a.start < b.start;
      return nodes[a.members.front()].msg->message_id < nodes[b.members.front()].msg->message_id;
    });

    // subject fallback: a later component whose root has the same subject key
    // joins an earlier discussion when the gap is inside the window
    const Timestamp window = static_cast<Timestamp>(options.fallback_window_days) * 86400;
    std::vector<Proto> merged;
    std::map<std::string, std::vector<size_t>> open_by_subject;
    for (Proto& p : protos) {
      bool joined = false;
      if (!p.subject_key.empty()) {
        auto it = open_by_subject.find(p.subject_key);
        if (it != open_by_subject.end()) {
          // latest-ending candidate inside the window wins
          size_t best = static_cast<size_t>(-1);
          Timestamp best_end = -1;
          for (size_t idx : it->second) {
            Timestamp gap = p.start - merged[idx].end;
            if (gap <= window && merged[idx].end > best_end) {
              best = idx;
              best_end = merged[idx].end;
            }
          }
          if (best != static_cast<size_t>(-1)) {
            Proto& target = merged[best];
            target.members.insert(target.members.end(), p.members.begin(), p.members.end());
            target.end = std::max(target.end, p.end);
            target.start = std::min(target.start, p.start);
            joined = true;
          }
        }
      }
      if (!joined) {
        merged.push_back(p);
        open_by_subject[p.subject_key].push_back(merged.size() - 1);
      }
    }

    for (Proto& p : merged) {
      std::sort(p.members.begin(), p.members.end(), [&](int a, int b) {
        return date_id_less(nodes[a].msg, nodes[b].msg);
      });
      Discussion d;
      d.list_id = list_id;
      const Message* root = nodes[p.members.front()].msg;
      d.discussion_id = list_id + ":" + root->message_id;
      d.subject_key = normalize_subject(root->subject_raw);
      for (int idx : p.members) {
        const Message* m = nodes[idx].msg;
        d.messages.push_back(m->message_id);
        d.participants.insert(m->sender);
        if (nodes[idx].parent != -1) {
          d.reply_edges.emplace_back(m->message_id, nodes[nodes[idx].parent].msg->message_id);
        }
      }
      d.start = nodes[p.members.front()].msg->date;
      d.end = nodes[p.members.back()].msg->date;
      result.discussions.push_back(std::move(d));
    }
  }

  std::sort(result.discussions.begin(), result.discussions.end(),
            [](const Discussion& a, const Discussion& b) {
              if (a.list_id != b.list_id) return a.list_id < b.list_id;
              if (a.start != b.start) return a.start < b.start;
              return a.discussion_id < b.discussion_id;
            });
  return result;
}

std::pair<Timestamp, Timestamp> discussion_interval(const Discussion& d) {
  return {d.start, d.end};
}

}  // namespace crossbound
