#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <random>

#include "crossbound/metrics.hpp"

using namespace crossbound;

namespace {

const Timestamp kDay = 86400;

Discussion mk_disc(const std::string& id, const std::string& list, Timestamp start, Timestamp end,
                   const std::set<std::string>& participants, const std::string& subject = "") {
  Discussion d;
  d.discussion_id = id;
  d.list_id = list;
  d.subject_key = subject.empty() ? id : subject;
  d.start = start;
  d.end = end;
  d.participants = participants;
  d.messages = {id + ":root"};
  return d;
}

}  // namespace

TEST_CASE("participation counts distinct discussions, not messages") {
  std::vector<Discussion> ds = {
      mk_disc("d1", "py-list", 0, kDay, {"alice", "bob"}),
      mk_disc("d2", "py-list", kDay, 2 * kDay, {"alice"}),
      mk_disc("d3", "py-dev", 0, kDay, {"alice"}),
  };
  // alice posted 3 messages in d1; participants sets already collapse that
  auto counts = participation_counts(ds, "py-list");
  CHECK(counts.at("alice") == 2);
  CHECK(counts.at("bob") == 1);
  CHECK(counts.count("carol") == 0);
}

TEST_CASE("participant in 4 of 6 discussions counts 4") {
  std::vector<Discussion> ds;
  for (int i = 0; i < 6; ++i) {
    std::set<std::string> who = {"filler" + std::to_string(i)};
    if (i < 4) who.insert("alice");
    ds.push_back(mk_disc("d" + std::to_string(i), "py-list", i * kDay, i * kDay, who));
  }
  CHECK(participation_counts(ds, "py-list").at("alice") == 4);
}

TEST_CASE("list totals: 66 participants in the user list, 22 in the developer list") {
  std::vector<Discussion> ds;
  std::set<std::string> user_people, dev_people;
  for (int i = 0; i < 66; ++i) user_people.insert("u" + std::to_string(i));
  for (int i = 0; i < 22; ++i) dev_people.insert("d" + std::to_string(i));
  ds.push_back(mk_disc("du", "py-list", 0, kDay, user_people));
  ds.push_back(mk_disc("dd", "py-dev", 0, kDay, dev_people));
  CHECK(participation_counts(ds, "py-list").size() == 66);
  CHECK(participation_counts(ds, "py-dev").size() == 22);
}

TEST_CASE("nearest-rank third quartile") {
  CHECK(third_quartile({1, 1, 1, 1, 2, 2, 3, 5}) == 2.0);
  CHECK(third_quartile({7}) == 7.0);
  CHECK(third_quartile({2, 2, 2, 2}) == 2.0);
  CHECK_THROWS_AS(third_quartile({}), std::invalid_argument);
}

TEST_CASE("third quartile ignores input order") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> counts;
    int n = 1 + static_cast<int>(rng() % 30);
    for (int i = 0; i < n; ++i) counts.push_back(static_cast<int>(rng() % 10) + 1);
    double q = third_quartile(counts);
    std::vector<int> shuffled = counts;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(third_quartile(shuffled) == q);
  }
}

TEST_CASE("regular means strictly more than the third quartile") {
  std::map<std::string, int> counts = {{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1},
                                       {"e", 2}, {"f", 2}, {"g", 3}, {"h", 5}};
  // Q3 = 2 here
  auto reg = classify_regularity(counts);
  CHECK(reg.at("g") == Regularity::Regular);   // 3 > 2
  CHECK(reg.at("h") == Regularity::Regular);   // 5 > 2
  CHECK(reg.at("e") == Regularity::Occasional);  // 2 is not more than 2
  CHECK(reg.at("a") == Regularity::Occasional);
}

TEST_CASE("regular count never exceeds the nearest-rank tail") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    std::map<std::string, int> counts;
    size_t n = 1 + rng() % 40;
    for (size_t i = 0; i < n; ++i) {
      counts["p" + std::to_string(i)] = static_cast<int>(rng() % 8) + 1;
    }
    auto reg = classify_regularity(counts);
    size_t regulars = 0;
    for (const auto& [p, r] : reg) {
      if (r == Regularity::Regular) ++regulars;
    }
    size_t rank = (3 * n + 3) / 4;
    CHECK(regulars <= n - rank);
  }
}

TEST_CASE("common participants is the intersection of the two lists") {
  std::vector<Discussion> la = {mk_disc("a1", "py-list", 0, kDay, {"p1", "p2"})};
  std::vector<Discussion> lb = {mk_disc("b1", "py-dev", 0, kDay, {"p3", "p4"})};
  CHECK(common_participants(la, lb).empty());

  lb[0].participants = {"p2", "p4"};
  CHECK(common_participants(la, lb) == std::set<std::string>{"p2"});
}

TEST_CASE("planted common sets are recovered with their sizes") {
  // 14 shared of 130 distinct participants
  std::set<std::string> ua, ub;
  for (int i = 0; i < 14; ++i) {
    ua.insert("common" + std::to_string(i));
    ub.insert("common" + std::to_string(i));
  }
  for (int i = 0; i < 81; ++i) ua.insert("userside" + std::to_string(i));
  for (int i = 0; i < 35; ++i) ub.insert("devside" + std::to_string(i));
  std::vector<Discussion> la = {mk_disc("a1", "py-list", 0, kDay, ua)};
  std::vector<Discussion> lb = {mk_disc("b1", "py-dev", 0, kDay, ub)};
  auto common = common_participants(la, lb);
  CHECK(common.size() == 14);
  std::set<std::string> everyone = ua;
  everyone.insert(ub.begin(), ub.end());
  CHECK(everyone.size() == 130);

  // 4 shared of 84
  std::set<std::string> ua2, ub2;
  for (int i = 0; i < 4; ++i) {
    ua2.insert("c" + std::to_string(i));
    ub2.insert("c" + std::to_string(i));
  }
  for (int i = 0; i < 62; ++i) ua2.insert("u" + std::to_string(i));
  for (int i = 0; i < 18; ++i) ub2.insert("d" + std::to_string(i));
  std::vector<Discussion> la2 = {mk_disc("a1", "py-list", 0, kDay, ua2)};
  std::vector<Discussion> lb2 = {mk_disc("b1", "py-dev", 0, kDay, ub2)};
  CHECK(common_participants(la2, lb2).size() == 4);
}

TEST_CASE("same-list arguments are rejected") {
  std::vector<Discussion> la = {mk_disc("a1", "py-list", 0, kDay, {"p1"})};
  std::vector<Discussion> lb = {mk_disc("b1", "py-list", 0, kDay, {"p2"})};
  CHECK_THROWS_AS(common_participants(la, lb), std::invalid_argument);
}

TEST_CASE("parallel pairs need matching subjects and overlapping intervals") {
  std::vector<Discussion> la = {mk_disc("a1", "py-list", 0, 5 * kDay, {"p1"}, "money dt")};
  std::vector<Discussion> lb = {mk_disc("b1", "py-dev", 3 * kDay, 9 * kDay, {"p2"}, "money dt")};
  auto pairs = find_parallel_discussions(la, lb);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].overlap_start == 3 * kDay);
  CHECK(pairs[0].overlap_end == 5 * kDay);

  lb[0].start = 6 * kDay;  // disjoint now
  CHECK(find_parallel_discussions(la, lb).empty());

  lb[0].start = 3 * kDay;
  lb[0].subject_key = "different";
  CHECK(find_parallel_discussions(la, lb).empty());
}

TEST_CASE("five planted pairs are found; none without subject matches") {
  std::vector<Discussion> la, lb;
  for (int i = 0; i < 10; ++i) {
    std::string subject = i < 5 ? "pair " + std::to_string(i) : "ua " + std::to_string(i);
    la.push_back(mk_disc("a" + std::to_string(i), "py-list", i * kDay, (i + 2) * kDay, {"p"},
                         subject));
  }
  for (int i = 0; i < 10; ++i) {
    std::string subject = i < 5 ? "pair " + std::to_string(i) : "ub " + std::to_string(i);
    lb.push_back(mk_disc("b" + std::to_string(i), "py-dev", i * kDay + kDay / 2,
                         (i + 2) * kDay + kDay / 2, {"q"}, subject));
  }
  CHECK(find_parallel_discussions(la, lb).size() == 5);

  for (Discussion& d : lb) d.subject_key = "nothing shared";
  CHECK(find_parallel_discussions(la, lb).empty());
}

TEST_CASE("pair finding is symmetric under swapping the lists") {
  std::vector<Discussion> la = {mk_disc("a1", "py-list", 0, 5 * kDay, {"p"}, "topic x"),
                                mk_disc("a2", "py-list", 9 * kDay, 12 * kDay, {"p"}, "topic y")};
  std::vector<Discussion> lb = {mk_disc("b1", "py-dev", 2 * kDay, 6 * kDay, {"q"}, "topic x")};
  auto fwd = find_parallel_discussions(la, lb);
  auto rev = find_parallel_discussions(lb, la);
  REQUIRE(fwd.size() == rev.size());
  REQUIRE(fwd.size() == 1);
  CHECK(fwd[0].discussion_a == rev[0].discussion_b);
  CHECK(fwd[0].discussion_b == rev[0].discussion_a);
}

TEST_CASE("jaccard mode pairs near-identical subjects") {
  std::vector<Discussion> la = {
      mk_disc("a1", "py-list", 0, 5 * kDay, {"p"}, "decimal data type issues again")};
  std::vector<Discussion> lb = {
      mk_disc("b1", "py-dev", kDay, 6 * kDay, {"q"}, "decimal data type issues")};
  CHECK(find_parallel_discussions(la, lb).empty());
  ParallelOptions fuzzy;
  fuzzy.jaccard = 0.8;
  CHECK(find_parallel_discussions(la, lb, fuzzy).size() == 1);
}

TEST_CASE("cross participants posted in both members of a pair") {
  std::vector<Discussion> ds = {
      mk_disc("a1", "py-list", 0, 5 * kDay, {"cross1", "useronly"}, "pair 0"),
      mk_disc("b1", "py-dev", kDay, 6 * kDay, {"cross1", "devonly"}, "pair 0"),
  };
  auto pairs = find_parallel_discussions({ds[0]}, {ds[1]});
  CHECK(cross_participants(pairs, ds) == std::set<std::string>{"cross1"});
  CHECK(cross_participants({}, ds).empty());

  // one-sided participation is excluded
  ds[1].participants = {"devonly"};
  pairs = find_parallel_discussions({ds[0]}, {ds[1]});
  CHECK(cross_participants(pairs, ds).empty());
}

TEST_CASE("planted cross sets of size 5 are recovered exactly") {
  std::vector<Discussion> ds;
  std::vector<Discussion> la, lb;
  for (int i = 0; i < 5; ++i) {
    std::string who = "cross" + std::to_string(i);
    Discussion a = mk_disc("a" + std::to_string(i), "py-list", i * kDay, (i + 1) * kDay,
                           {who, "ua" + std::to_string(i)}, "pair " + std::to_string(i));
    Discussion b = mk_disc("b" + std::to_string(i), "py-dev", i * kDay, (i + 1) * kDay,
                           {who, "ub" + std::to_string(i)}, "pair " + std::to_string(i));
    la.push_back(a);
    lb.push_back(b);
    ds.push_back(a);
    ds.push_back(b);
  }
  auto pairs = find_parallel_discussions(la, lb);
  auto cross = cross_participants(pairs, ds);
  CHECK(cross == std::set<std::string>{"cross0", "cross1", "cross2", "cross3", "cross4"});
}

TEST_CASE("cross is contained in common, which is contained in the participant union") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Discussion> la, lb, all;
    for (int i = 0; i < 6; ++i) {
      std::set<std::string> wa, wb;
      for (int k = 0; k < 3; ++k) {
        wa.insert("p" + std::to_string(rng() % 10));
        wb.insert("p" + std::to_string(rng() % 10));
      }
      std::string subject = "t" + std::to_string(rng() % 4);
      la.push_back(mk_disc("a" + std::to_string(i), "py-list", i * kDay, (i + 2) * kDay, wa,
                           subject));
      lb.push_back(mk_disc("b" + std::to_string(i), "py-dev", i * kDay, (i + 2) * kDay, wb,
                           subject));
    }
    all = la;
    all.insert(all.end(), lb.begin(), lb.end());
    auto common = common_participants(la, lb);
    auto pairs = find_parallel_discussions(la, lb);
    auto cross = cross_participants(pairs, all);
    std::set<std::string> everyone;
    for (const Discussion& d : all) everyone.insert(d.participants.begin(), d.participants.end());
    for (const std::string& p : cross) CHECK(common.count(p) == 1);
    for (const std::string& p : common) CHECK(everyone.count(p) == 1);
  }
}

TEST_CASE("mean opening delay telescopes to the endpoint span") {
  std::vector<Discussion> ds = {
      mk_disc("d1", "py-list", 0, kDay, {"p"}),
      mk_disc("d2", "py-list", 10 * kDay, 11 * kDay, {"p"}),
      mk_disc("d3", "py-list", 20 * kDay, 21 * kDay, {"p"}),
  };
  CHECK(mean_opening_delay(ds) == 10.0);
  CHECK(!mean_opening_delay({ds[0]}));
  CHECK(!mean_opening_delay({}));
}

TEST_CASE("fixtures tuned to 30- and 63-day mean delays") {
  // 22 discussions spanning 630 days, 10 spanning 567
  std::vector<Discussion> successful, unsuccessful;
  for (int i = 0; i < 22; ++i) {
    successful.push_back(mk_disc("s" + std::to_string(i), "py-list",
                                 static_cast<Timestamp>(i) * 30 * kDay, 0, {"p"}));
  }
  for (int i = 0; i < 10; ++i) {
    unsuccessful.push_back(mk_disc("u" + std::to_string(i), "py-list",
                                   static_cast<Timestamp>(i) * 63 * kDay, 0, {"p"}));
  }
  CHECK(mean_opening_delay(successful) == 30.0);
  CHECK(mean_opening_delay(unsuccessful) == 63.0);
}

TEST_CASE("delay identity holds on random start sets") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    size_t n = 2 + rng() % 30;
    std::vector<Discussion> ds;
    Timestamp lo = 0, hi = 0;
    for (size_t i = 0; i < n; ++i) {
      Timestamp start = static_cast<Timestamp>(rng() % (kDay * 365 * 4));
      if (i == 0) lo = hi = start;
      lo = std::min(lo, start);
      hi = std::max(hi, start);
      ds.push_back(mk_disc("d" + std::to_string(i), "py-list", start, start, {"p"}));
    }
    double expected = static_cast<double>(hi - lo) / static_cast<double>(n - 1) / 86400.0;
    CHECK(mean_opening_delay(ds) == expected);
  }
}

TEST_CASE("profiles classify by precedence and flag common/cross") {
  Roster roster;
  ParticipantId pl;
  pl.canonical_name = "leader";
  pl.role = Role::ProjectLeader;
  roster.entries = {pl};

  std::vector<Discussion> ds;
  // leader posts on both lists; cross1 crosses a pair; commononly posts on
  // both lists but never inside one pair; regularonly dominates one list
  ds.push_back(mk_disc("a0", "py-list", 0, kDay, {"leader", "cross1", "occ"}, "pair 0"));
  ds.push_back(mk_disc("b0", "py-dev", 0, kDay, {"leader", "cross1"}, "pair 0"));
  ds.push_back(mk_disc("a9", "py-list", 5 * kDay, 6 * kDay, {"commononly"}, "side a"));
  ds.push_back(mk_disc("b9", "py-dev", 5 * kDay, 6 * kDay, {"commononly"}, "side b"));
  for (int i = 1; i <= 4; ++i) {
    ds.push_back(mk_disc("a" + std::to_string(i), "py-list", i * kDay, i * kDay,
                         {"regularonly"}, "solo " + std::to_string(i)));
  }

  std::vector<Message> msgs;
  for (const Discussion& d : ds) {
    for (const std::string& p : d.participants) {
      Message m;
      m.message_id = d.discussion_id + ":" + p;
      m.list_id = d.list_id;
      m.sender = p;
      m.date = d.start;
      msgs.push_back(m);
    }
  }

  auto pairs = find_parallel_discussions({ds[0]}, {ds[1]});
  auto cross = cross_participants(pairs, ds);
  auto profiles = build_profiles(ds, msgs, roster, cross);

  std::map<std::string, ParticipationProfile> by_name;
  for (const auto& p : profiles) by_name[p.participant] = p;

  CHECK(by_name.at("leader").category == Category::ProjectLeader);
  CHECK(by_name.at("cross1").category == Category::CrossParticipant);
  CHECK(by_name.at("cross1").is_common);
  CHECK(by_name.at("commononly").category == Category::CommonOnly);
  CHECK(by_name.at("regularonly").category == Category::RegularOnly);
  CHECK(by_name.at("occ").category == Category::OccasionalOnly);
  // cross implies common
  for (const auto& [name, prof] : by_name) {
    if (prof.is_cross) CHECK(prof.is_common);
  }
}

TEST_CASE("involvement means per category, absent when inactive") {
  Roster roster;
  ParticipantId pl;
  pl.canonical_name = "leader";
  pl.role = Role::ProjectLeader;
  roster.entries = {pl};

  std::vector<Discussion> ds = {
      mk_disc("b0", "py-dev", 0, kDay, {"leader", "dev1"}),
  };
  std::vector<Message> msgs;
  for (int i = 0; i < 31; ++i) {
    Message m;
    m.message_id = "pl" + std::to_string(i);
    m.list_id = "py-dev";
    m.sender = "leader";
    msgs.push_back(m);
  }
  Message other;
  other.message_id = "d1";
  other.list_id = "py-dev";
  other.sender = "dev1";
  msgs.push_back(other);

  auto profiles = build_profiles(ds, msgs, roster, {});
  auto rows = involvement_by_category(profiles, {"py-list", "py-dev"});

  bool found_pl = false;
  for (const InvolvementRow& row : rows) {
    CHECK(row.list_id == "py-dev");  // nothing is active on py-list
    if (row.category == "project_leader") {
      found_pl = true;
      CHECK(row.members == 1);
      CHECK(row.mean == 31.0);
    }
  }
  CHECK(found_pl);
}

TEST_CASE("cross-participants averaging 41 messages show mean 41") {
  std::vector<Discussion> ds = {
      mk_disc("a0", "py-list", 0, kDay, {"c1", "c2"}, "pair 0"),
      mk_disc("b0", "py-dev", 0, kDay, {"c1", "c2"}, "pair 0"),
  };
  std::vector<Message> msgs;
  auto post = [&](const std::string& who, int n) {
    for (int i = 0; i < n; ++i) {
      Message m;
      m.message_id = who + std::to_string(i);
      m.list_id = "py-dev";
      m.sender = who;
      msgs.push_back(m);
    }
  };
  post("c1", 40);
  post("c2", 42);

  auto pairs = find_parallel_discussions({ds[0]}, {ds[1]});
  auto cross = cross_participants(pairs, ds);
  auto profiles = build_profiles(ds, msgs, Roster{}, cross);
  auto rows = involvement_by_category(profiles, {"py-list", "py-dev"});
  bool found = false;
  for (const InvolvementRow& row : rows) {
    if (row.category == "cross_all" && row.list_id == "py-dev") {
      found = true;
      CHECK(row.mean == 41.0);
      CHECK(row.members == 2);
    }
  }
  CHECK(found);
}

TEST_CASE("involvement conserves list totals over the disjoint categories") {
  std::mt19937_64 rng(14);
  Roster roster;
  ParticipantId pl;
  pl.canonical_name = "leader";
  pl.role = Role::ProjectLeader;
  roster.entries = {pl};

  std::vector<Discussion> ds;
  std::vector<Message> msgs;
  for (int i = 0; i < 10; ++i) {
    std::set<std::string> who;
    who.insert("leader");
    for (int k = 0; k < 4; ++k) who.insert("p" + std::to_string(rng() % 12));
    std::string list = i % 2 == 0 ? "py-list" : "py-dev";
    ds.push_back(mk_disc("d" + std::to_string(i), list, i * kDay, i * kDay, who,
                         "s" + std::to_string(i)));
    for (const std::string& p : who) {
      int n = 1 + static_cast<int>(rng() % 5);
      for (int m = 0; m < n; ++m) {
        Message msg;
        msg.message_id = "m" + std::to_string(msgs.size());
        msg.list_id = list;
        msg.sender = p;
        msgs.push_back(msg);
      }
    }
  }
  auto profiles = build_profiles(ds, msgs, roster, {});
  auto rows = involvement_by_category(profiles, {"py-list", "py-dev"});
  for (const char* list : {"py-list", "py-dev"}) {
    double covered = 0;
    for (const InvolvementRow& row : rows) {
      if (row.list_id != list) continue;
      if (row.category == "common_all" || row.category == "cross_all") continue;
      covered += row.mean * row.members;
    }
    std::int64_t total = 0;
    for (const Message& m : msgs) {
      if (m.list_id == list) ++total;
    }
    CHECK(covered == doctest::Approx(static_cast<double>(total)).epsilon(1e-12));
  }
}

TEST_CASE("design-step grouping: lexicon, default, override") {
  std::vector<Discussion> ds = {
      mk_disc("d1", "py-list", 0, kDay, {"p"}, "pre-pep decimal data type"),
      mk_disc("d2", "py-list", kDay, 2 * kDay, {"p"}, "money type ideas"),
      mk_disc("d3", "py-list", 2 * kDay, 3 * kDay, {"p"}, "decimal tutorial"),
  };
  StageLexicon lex;
  lex.stages = {{"PEP-design", {"pep"}}, {"Tutorials", {"tutorial"}}};

  auto groups = group_by_design_step(ds, lex, {});
  CHECK(groups.at("PEP-design") == std::vector<std::string>{"d1"});
  CHECK(groups.at("Tutorials") == std::vector<std::string>{"d3"});
  CHECK(groups.at(kUnlabeledStage) == std::vector<std::string>{"d2"});

  // override wins over the lexicon
  auto with_override = group_by_design_step(ds, lex, {{"d1", "Elicitation"}});
  CHECK(with_override.at("Elicitation") == std::vector<std::string>{"d1"});
  CHECK(with_override.count("PEP-design") == 0);

  CHECK_THROWS_AS(group_by_design_step(ds, lex, {{"nope", "Elicitation"}}),
                  std::invalid_argument);
}

TEST_CASE("first matching lexicon stage wins") {
  std::vector<Discussion> ds = {
      mk_disc("d1", "py-list", 0, kDay, {"p"}, "pep tutorial hybrid"),
  };
  StageLexicon lex;
  lex.stages = {{"PEP-design", {"pep"}}, {"Tutorials", {"tutorial"}}};
  CHECK(group_by_design_step(ds, lex, {}).at("PEP-design").size() == 1);
}

TEST_CASE("timeline carries intervals, groups, and parallel links") {
  std::vector<Discussion> ds = {
      mk_disc("a1", "py-list", 0, 5 * kDay, {"p"}, "pair topic"),
      mk_disc("b1", "py-dev", kDay, 6 * kDay, {"q"}, "pair topic"),
      mk_disc("a2", "py-list", 10 * kDay, 11 * kDay, {"p"}, "solo pep topic"),
  };
  auto pairs = find_parallel_discussions({ds[0], ds[2]}, {ds[1]});
  StageLexicon lex;
  lex.stages = {{"PEP-design", {"pep"}}};
  auto groups = group_by_design_step(ds, lex, {});
  auto records = build_timeline(ds, pairs, groups);

  REQUIRE(records.size() == 3);
  int with_parallel = 0;
  for (const TimelineRecord& r : records) {
    if (r.parallel_with) ++with_parallel;
    if (r.discussion_id == "a2") {
      CHECK(r.group == "PEP-design");
      CHECK(r.label == "PEP-design");
    }
    if (r.discussion_id == "a1") CHECK(r.label == "pair topic");
  }
  CHECK(with_parallel == 2);

  CHECK(build_timeline({}, {}, {}).empty());
}
