#pragma once

#include <string>
#include <vector>

#include "crossbound/types.hpp"

namespace crossbound {

struct SelectionOptions {
  bool whole_word = false;  // match keywords as whole tokens instead of substrings
};

// Picks messages whose normalized subject contains a keyword and whose date
// falls inside [date_from, date_to], then pulls in every reply-chain ancestor
// present in the raw archive (flagged as mother-thread).
CorpusSelection select_corpus(const std::string& name, const std::vector<Message>& messages,
                              const std::vector<std::string>& keywords, Timestamp date_from,
                              Timestamp date_to, const SelectionOptions& options = {});

}  // namespace crossbound
