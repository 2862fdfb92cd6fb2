#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crossbound/types.hpp"

namespace crossbound {

struct QuoteOptions {
  int min_chars = 20;   // a block survives with >= min_chars
  int min_tokens = 3;   // ... or >= min_tokens
  bool fuzzy = true;    // windowed token-overlap pass after exact containment
  double fuzzy_overlap = 0.9;
  bool parallel = true;  // OpenMP over messages in build_quote_graph
};

// Maximal runs of equally-deep ">"-prefixed lines. "X wrote:" introducer
// lines become attribution hints on the following block, never blocks.
std::vector<QuoteBlock> extract_quote_blocks(const std::string& body,
                                             const QuoteOptions& options = {});

// A message's own (unquoted, non-introducer) lines in normalized form; the
// haystack candidate messages are matched against.
std::string own_text(const std::string& body);

// Read-only view over one corpus used during attribution.
struct CorpusIndex {
  std::vector<const Message*> messages;  // selection only, sorted by (date, id)
  std::map<std::string, const Message*> by_id;
  std::map<std::string, const Discussion*> discussion_of;  // message id -> discussion
  std::map<std::string, std::string> parent_of;            // reply edges
  std::map<std::string, std::string> own;                  // message id -> own_text
  std::map<std::string, std::vector<std::string>> own_tokens;
  std::vector<std::string> senders;  // distinct canonical names, sorted
};

CorpusIndex build_corpus_index(const CorpusSelection& selection,
                               const std::vector<Message>& all_messages,
                               const std::vector<Discussion>& discussions);

// Candidate order: reply-chain ancestors nearest first, then earlier messages
// in the discussion (newest first), then earlier messages anywhere in the
// corpus. A hint restricts candidates to that participant's messages before
// falling back. Returns the source message id, or nullopt when unresolved.
std::optional<std::string> attribute_quote_block(const QuoteBlock& block,
                                                 const Discussion& discussion,
                                                 const CorpusIndex& index,
                                                 const QuoteOptions& options = {});

// One edge per retained block; unresolved blocks keep quoted = "(unknown)".
// Output is sorted by (list, quoter message, first line). The parallel
// variant distributes messages across OpenMP threads; the serial variant is
// the reference the tests compare against.
std::vector<QuoteEdge> build_quote_graph(const CorpusSelection& selection,
                                         const std::vector<Discussion>& discussions,
                                         const std::vector<Message>& all_messages,
                                         const QuoteOptions& options = {});
std::vector<QuoteEdge> build_quote_graph_serial(const CorpusSelection& selection,
                                                const std::vector<Discussion>& discussions,
                                                const std::vector<Message>& all_messages,
                                                const QuoteOptions& options = {});

}  // namespace crossbound
