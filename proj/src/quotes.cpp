#include "crossbound/quotes.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "crossbound/text.hpp"

namespace crossbound {

namespace {

struct ParsedLine {
  int depth = 0;
  std::string rest;
  bool introducer = false;
  std::string hint;  // name fragment when introducer
};

ParsedLine parse_line(const std::string& line) {
  ParsedLine out;
  size_t i = 0;
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  while (i < line.size() && line[i] == '>') {
    ++out.depth;
    ++i;
    if (i < line.size() && line[i] == ' ') ++i;
  }
  out.rest = line.substr(i);

  std::string t = trim(out.rest);
  if (!t.empty() && t.back() == ':') {
    std::string low = to_lower(t.substr(0, t.size() - 1));
    for (const char* verb : {" wrote", " writes", " said"}) {
      if (ends_with(low, verb)) {
        out.introducer = true;
        std::string head = trim(t.substr(0, low.size() - std::char_traits<char>::length(verb)));
        size_t comma = head.rfind(',');
        if (comma != std::string::npos) head = trim(head.substr(comma + 1));
        out.hint = head;
        break;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<QuoteBlock> extract_quote_blocks(const std::string& body,
                                             const QuoteOptions& options) {
  std::vector<QuoteBlock> blocks;
  std::vector<std::string> lines = split_lines(body);

  struct Pending {
    std::string hint;
    int depth = -1;
    int line = -1;
  };
  Pending pending;

  QuoteBlock cur;
  std::string raw;
  bool open = false;

  auto flush = [&]() {
    if (!open) return;
    open = false;
    cur.text = normalize_text(raw);
    raw.clear();
    size_t tokens = tokenize(cur.text).size();
    if (cur.text.empty()) return;
    if (static_cast<int>(cur.text.size()) >= options.min_chars ||
        static_cast<int>(tokens) >= options.min_tokens) {
      blocks.push_back(cur);
    }
  };

  for (size_t i = 0; i < lines.size(); ++i) {
    ParsedLine pl = parse_line(lines[i]);
    if (pl.introducer) {
      flush();
      pending = {pl.hint, pl.depth, static_cast<int>(i)};
      continue;
    }
    if (pl.depth == 0) {
      flush();
      if (!trim(pl.rest).empty()) pending = {};  // real text invalidates the hint
      continue;
    }
    if (open && cur.depth == pl.depth) {
      raw += " " + pl.rest;
      cur.line_last = static_cast<int>(i);
      continue;
    }
    flush();
    cur = QuoteBlock{};
    cur.depth = pl.depth;
    cur.line_first = static_cast<int>(i);
    cur.line_last = static_cast<int>(i);
    if (pending.depth >= 0 && static_cast<int>(i) - pending.line <= 3 &&
        (pending.depth == pl.depth - 1 || pending.depth == pl.depth)) {
      cur.hint = pending.hint;
    }
    pending = {};
    raw = pl.rest;
    open = true;
  }
  flush();
  return blocks;
}

std::string own_text(const std::string& body) {
  std::string joined;
  for (const std::string& line : split_lines(body)) {
    ParsedLine pl = parse_line(line);
    if (pl.depth != 0 || pl.introducer) continue;
    joined += pl.rest;
    joined += "\n";
  }
  return normalize_text(joined);
}

CorpusIndex build_corpus_index(const CorpusSelection& selection,
                               const std::vector<Message>& all_messages,
                               const std::vector<Discussion>& discussions) {
  CorpusIndex index;
  for (const Message& m : all_messages) {
    if (!selection.messages.count(m.message_id)) continue;
    index.messages.push_back(&m);
    index.by_id.emplace(m.message_id, &m);
  }
  std::sort(index.messages.begin(), index.messages.end(),
            [](const Message* a, const Message* b) {
              if (a->date != b->date) return a->date < b->date;
              return a->message_id < b->message_id;
            });
  for (const Discussion& d : discussions) {
    for (const std::string& id : d.messages) index.discussion_of.emplace(id, &d);
    for (const auto& [child, parent] : d.reply_edges) index.parent_of.emplace(child, parent);
  }
  std::set<std::string> senders;
  for (const Message* m : index.messages) {
    index.own.emplace(m->message_id, own_text(m->body));
    index.own_tokens.emplace(m->message_id, tokenize(index.own.at(m->message_id)));
    senders.insert(m->sender);
  }
  index.senders.assign(senders.begin(), senders.end());
  return index;
}

namespace {

bool date_id_before(const Message* a, const Message* b) {
  if (a->date != b->date) return a->date < b->date;
  return a->message_id < b->message_id;
}

// Sliding window of block-sized spans over the candidate's own tokens; a
// match needs fuzzy_overlap of the block's tokens inside one window. Handles
// quotes that mailers truncated or re-flowed.
bool fuzzy_contains(const std::vector<std::string>& cand_tokens,
                    const std::vector<std::string>& block_tokens, double overlap) {
  if (block_tokens.empty()) return false;
  const size_t need = static_cast<size_t>(std::ceil(overlap * static_cast<double>(block_tokens.size())));
  // slack covers tokens the mailer dropped between the surviving ones
  const size_t window =
      block_tokens.size() + std::max<size_t>(4, block_tokens.size() / 2);
  if (cand_tokens.size() < need) return false;

  std::map<std::string, int> want;
  for (const std::string& t : block_tokens) ++want[t];

  std::map<std::string, int> have;
  size_t matched = 0;
  size_t lo = 0;
  for (size_t hi = 0; hi < cand_tokens.size(); ++hi) {
    const std::string& t = cand_tokens[hi];
    auto it = want.find(t);
    if (it != want.end()) {
      int& h = have[t];
      ++h;
      if (h <= it->second) ++matched;
    }
    if (hi - lo + 1 > window) {
      const std::string& u = cand_tokens[lo];
      auto iu = want.find(u);
      if (iu != want.end()) {
        int& h = have[u];
        if (h <= iu->second) --matched;
        --h;
      }
      ++lo;
    }
    if (matched >= need) return true;
  }
  return false;
}

std::vector<const Message*> candidate_order(const QuoteBlock& block, const Discussion& discussion,
                                            const CorpusIndex& index) {
  std::vector<const Message*> out;
  std::set<std::string> seen;
  auto it_owner = index.by_id.find(block.owner);
  if (it_owner == index.by_id.end()) return out;
  const Message* owner = it_owner->second;
  seen.insert(owner->message_id);

  // strictly earlier only: a resolved edge must point backward in time
  auto push = [&](const Message* m) {
    if (m->date >= owner->date) return;
    if (seen.insert(m->message_id).second) out.push_back(m);
  };

  // 1. reply-chain ancestors, nearest first
  std::string cur = block.owner;
  std::set<std::string> walked{cur};
  while (true) {
    auto pit = index.parent_of.find(cur);
    if (pit == index.parent_of.end()) break;
    cur = pit->second;
    if (!walked.insert(cur).second) break;
    auto mit = index.by_id.find(cur);
    if (mit == index.by_id.end()) break;
    push(mit->second);
  }

  // 2. earlier messages in the same discussion, newest first
  std::vector<const Message*> disc;
  for (const std::string& id : discussion.messages) {
    auto mit = index.by_id.find(id);
    if (mit != index.by_id.end()) disc.push_back(mit->second);
  }
  std::sort(disc.begin(), disc.end(),
            [](const Message* a, const Message* b) { return date_id_before(b, a); });
  for (const Message* m : disc) push(m);

  // 3. earlier messages anywhere in the corpus, newest first
  for (auto it = index.messages.rbegin(); it != index.messages.rend(); ++it) push(*it);

  return out;
}

}  // namespace

std::optional<std::string> attribute_quote_block(const QuoteBlock& block,
                                                 const Discussion& discussion,
                                                 const CorpusIndex& index,
                                                 const QuoteOptions& options) {
  if (block.text.empty()) return std::nullopt;
  std::vector<const Message*> candidates = candidate_order(block, discussion, index);
  std::vector<std::string> block_tokens = tokenize(block.text);

  std::set<std::string> hinted;
  if (!block.hint.empty()) {
    std::string h = normalize_text(block.hint);
    for (const std::string& s : index.senders) {
      if (s == h || (!s.empty() && h.find(s) != std::string::npos)) hinted.insert(s);
    }
  }

  auto run = [&](bool restricted, bool exact) -> std::optional<std::string> {
    for (const Message* m : candidates) {
      if (restricted && !hinted.count(m->sender)) continue;
      const std::string& text = index.own.at(m->message_id);
      if (exact) {
        if (text.find(block.text) != std::string::npos) return m->message_id;
      } else {
        if (fuzzy_contains(index.own_tokens.at(m->message_id), block_tokens,
                           options.fuzzy_overlap)) {
          return m->message_id;
        }
      }
    }
    return std::nullopt;
  };

  if (!hinted.empty()) {
    if (auto hit = run(true, true)) return hit;
    if (options.fuzzy) {
      if (auto hit = run(true, false)) return hit;
    }
  }
  if (auto hit = run(false, true)) return hit;
  if (options.fuzzy) {
    if (auto hit = run(false, false)) return hit;
  }
  return std::nullopt;
}

namespace {

std::vector<QuoteEdge> attribute_message(const Message* m, const CorpusIndex& index,
                                         const QuoteOptions& options) {
  std::vector<QuoteEdge> edges;
  auto dit = index.discussion_of.find(m->message_id);
  if (dit == index.discussion_of.end()) return edges;
  const Discussion& disc = *dit->second;

  for (QuoteBlock block : extract_quote_blocks(m->body, options)) {
    block.owner = m->message_id;
    QuoteEdge e;
    e.quoter = m->sender;
    e.quoter_message = m->message_id;
    e.list_id = m->list_id;
    e.depth = block.depth;
    e.line_first = block.line_first;
    if (auto src = attribute_quote_block(block, disc, index, options)) {
      e.quoted_message = *src;
      e.quoted = index.by_id.at(*src)->sender;
      e.resolved = true;
      e.self_quote = e.quoted == e.quoter;
    } else {
      e.quoted = kUnknownParticipant;
    }
    edges.push_back(std::move(e));
  }
  return edges;
}

void sort_edges(std::vector<QuoteEdge>& edges) {
  std::sort(edges.begin(), edges.end(), [](const QuoteEdge& a, const QuoteEdge& b) {
    if (a.list_id != b.list_id) return a.list_id < b.list_id;
    if (a.quoter_message != b.quoter_message) return a.quoter_message < b.quoter_message;
    return a.line_first < b.line_first;
  });
}

}  // namespace

std::vector<QuoteEdge> build_quote_graph(const CorpusSelection& selection,
                                         const std::vector<Discussion>& discussions,
                                         const std::vector<Message>& all_messages,
                                         const QuoteOptions& options) {
  CorpusIndex index = build_corpus_index(selection, all_messages, discussions);
  const auto n = static_cast<std::int64_t>(index.messages.size());
  std::vector<std::vector<QuoteEdge>> per_message(index.messages.size());

#pragma omp parallel for schedule(dynamic, 8) if (options.parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    per_message[static_cast<size_t>(i)] =
        attribute_message(index.messages[static_cast<size_t>(i)], index, options);
  }

  std::vector<QuoteEdge> edges;
  for (auto& chunk : per_message) {
    edges.insert(edges.end(), chunk.begin(), chunk.end());
  }
  sort_edges(edges);
  return edges;
}

std::vector<QuoteEdge> build_quote_graph_serial(const CorpusSelection& selection,
                                                const std::vector<Discussion>& discussions,
                                                const std::vector<Message>& all_messages,
                                                const QuoteOptions& options) {
  CorpusIndex index = build_corpus_index(selection, all_messages, discussions);
  std::vector<QuoteEdge> edges;
  for (const Message* m : index.messages) {
    std::vector<QuoteEdge> chunk = attribute_message(m, index, options);
    edges.insert(edges.end(), chunk.begin(), chunk.end());
  }
  sort_edges(edges);
  return edges;
}

}  // namespace crossbound
