#include "crossbound/corpus.hpp"

#include <deque>
#include <map>
#include <stdexcept>

#include "crossbound/text.hpp"
#include "crossbound/threading.hpp"

namespace crossbound {

namespace {

bool subject_matches(const std::string& subject_key, const std::vector<std::string>& keywords,
                     bool whole_word) {
  if (whole_word) {
    std::vector<std::string> toks = tokenize(subject_key);
    for (const std::string& kw : keywords) {
      for (const std::string& t : toks) {
        if (t == kw) return true;
      }
    }
    return false;
  }
  for (const std::string& kw : keywords) {
    if (subject_key.find(kw) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

CorpusSelection select_corpus(const std::string& name, const std::vector<Message>& messages,
                              const std::vector<std::string>& keywords, Timestamp date_from,
                              Timestamp date_to, const SelectionOptions& options) {
  if (date_from > date_to) throw std::invalid_argument("date_from is after date_to");
  if (keywords.empty()) throw std::invalid_argument("keyword set is empty");

  CorpusSelection sel;
  sel.name = name;
  for (const std::string& kw : keywords) sel.keywords.push_back(to_lower(kw));
  sel.date_from = date_from;
  sel.date_to = date_to;

  std::map<std::string, const Message*> by_id;
  for (const Message& m : messages) by_id.emplace(m.message_id, &m);

  std::deque<const Message*> pending;
  for (const Message& m : messages) {
    sel.lists.insert(m.list_id);
    if (m.date < date_from || m.date > date_to) continue;
    if (!subject_matches(normalize_subject(m.subject_raw), sel.keywords, options.whole_word)) {
      continue;
    }
    if (sel.messages.insert(m.message_id).second) pending.push_back(&m);
  }

  // mother-thread closure over reply headers, transitively
  while (!pending.empty()) {
    const Message* m = pending.front();
    pending.pop_front();
    std::vector<std::string> ancestors;
    if (m->in_reply_to) ancestors.push_back(*m->in_reply_to);
    for (const std::string& r : m->references) ancestors.push_back(r);
    for (const std::string& pid : ancestors) {
      auto it = by_id.find(pid);
      if (it == by_id.end()) continue;
      if (sel.messages.insert(pid).second) {
        sel.mother_thread.insert(pid);
        pending.push_back(it->second);
      }
    }
  }
  return sel;
}

}  // namespace crossbound
