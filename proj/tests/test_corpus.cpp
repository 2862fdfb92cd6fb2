#include <doctest.h>

#include <stdexcept>

#include <random>

#include "crossbound/corpus.hpp"

using namespace crossbound;

namespace {

Message make_msg(const std::string& id, const std::string& subject, Timestamp date,
                 const std::string& parent = "") {
  Message m;
  m.message_id = id;
  m.list_id = "py-list";
  m.sender = "someone";
  m.subject_raw = subject;
  m.date = date;
  if (!parent.empty()) {
    m.in_reply_to = parent;
    m.references = {parent};
  }
  return m;
}

const Timestamp kDay = 86400;

}  // namespace

TEST_CASE("keyword hit in the normalized subject selects the message") {
  std::vector<Message> msgs = {
      make_msg("a", "Re: Add decimal (aka fixed point) to Python", 10 * kDay),
      make_msg("b", "Unicode musings", 11 * kDay),
  };
  CorpusSelection sel = select_corpus("successful", msgs,
                                      {"decimal", "money", "currency", "fixed-point"}, 0,
                                      100 * kDay);
  CHECK(sel.messages.count("a") == 1);
  CHECK(sel.messages.count("b") == 0);
}

TEST_CASE("date range bounds selection") {
  std::vector<Message> msgs = {
      make_msg("early", "decimal stuff", 5 * kDay),
      make_msg("in", "decimal stuff again", 10 * kDay),
      make_msg("late", "more decimal stuff", 50 * kDay),
  };
  CorpusSelection sel = select_corpus("c", msgs, {"decimal"}, 8 * kDay, 20 * kDay);
  CHECK(sel.messages == std::set<std::string>{"in"});
}

TEST_CASE("mother-thread ancestors are pulled in and flagged") {
  // chain a <- b where only b's subject matches
  std::vector<Message> msgs = {
      make_msg("a", "general musings", 10 * kDay),
      make_msg("b", "Re: decimal for money", 12 * kDay, "a"),
  };
  CorpusSelection sel = select_corpus("c", msgs, {"decimal"}, 11 * kDay, 20 * kDay);
  CHECK(sel.messages.count("a") == 1);
  CHECK(sel.messages.count("b") == 1);
  CHECK(sel.mother_thread == std::set<std::string>{"a"});
}

TEST_CASE("mother-thread closure is transitive over references") {
  std::vector<Message> msgs = {
      make_msg("root", "origin", 1 * kDay),
      make_msg("mid", "still origin", 2 * kDay, "root"),
      make_msg("leaf", "decimal proposal", 3 * kDay, "mid"),
  };
  CorpusSelection sel = select_corpus("c", msgs, {"decimal"}, 0, 100 * kDay);
  CHECK(sel.messages.size() == 3);
  CHECK(sel.mother_thread == std::set<std::string>{"root", "mid"});

  // every ancestor present in the archive is selected
  for (const Message& m : msgs) {
    if (!sel.messages.count(m.message_id)) continue;
    if (m.in_reply_to) CHECK(sel.messages.count(*m.in_reply_to) == 1);
  }
}

TEST_CASE("inverted date range is an argument error") {
  std::vector<Message> msgs = {make_msg("a", "decimal", 10 * kDay)};
  CHECK_THROWS_AS(select_corpus("c", msgs, {"decimal"}, 20 * kDay, 10 * kDay),
                  std::invalid_argument);
  CHECK_THROWS_AS(select_corpus("c", msgs, {}, 0, 10 * kDay), std::invalid_argument);
}

TEST_CASE("whole-word mode matches tokens only") {
  std::vector<Message> msgs = {
      make_msg("sub", "decimals everywhere", 10 * kDay),
      make_msg("word", "decimal everywhere", 10 * kDay),
  };
  SelectionOptions whole;
  whole.whole_word = true;
  CorpusSelection sel = select_corpus("c", msgs, {"decimal"}, 0, 100 * kDay, whole);
  CHECK(sel.messages == std::set<std::string>{"word"});
}

TEST_CASE("selection is monotone in keywords and date range") {
  std::mt19937_64 rng(7);
  std::vector<std::string> vocab = {"decimal", "money", "unicode", "parser", "float", "currency"};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Message> msgs;
    for (int i = 0; i < 30; ++i) {
      std::string subject = vocab[rng() % vocab.size()] + " " + vocab[rng() % vocab.size()];
      Message m = make_msg("m" + std::to_string(i), subject, static_cast<Timestamp>(rng() % 50) * kDay);
      if (i > 0 && rng() % 3 == 0) {
        m.in_reply_to = "m" + std::to_string(rng() % i);
        m.references = {*m.in_reply_to};
      }
      msgs.push_back(m);
    }
    CorpusSelection narrow = select_corpus("c", msgs, {"decimal"}, 10 * kDay, 30 * kDay);
    CorpusSelection wide = select_corpus("c", msgs, {"decimal", "money"}, 5 * kDay, 40 * kDay);
    for (const std::string& id : narrow.messages) {
      CHECK(wide.messages.count(id) == 1);
    }
  }
}
