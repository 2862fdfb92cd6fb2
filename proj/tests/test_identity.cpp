#include <doctest.h>

#include <stdexcept>

#include "crossbound/identity.hpp"

using namespace crossbound;

namespace {

Roster fixture_roster() {
  Roster r;
  ParticipantId guido;
  guido.canonical_name = "guido";
  guido.role = Role::ProjectLeader;
  guido.aliases = {{"Guido", "g@x.org"}, {"guido van rossum", "guido@python.org"}};
  ParticipantId tim;
  tim.canonical_name = "tim";
  tim.role = Role::Developer;
  tim.aliases = {{"Tim Peters", "tim@x.org"}};
  r.entries = {guido, tim};
  r.validate();
  return r;
}

}  // namespace

TEST_CASE("address parsing") {
  ParsedAddress a = parse_address("Guido <g@x.org>");
  CHECK(a.ok);
  CHECK(a.name == "Guido");
  CHECK(a.email == "g@x.org");

  a = parse_address("g@x.org (Guido)");
  CHECK(a.name == "Guido");
  CHECK(a.email == "g@x.org");

  a = parse_address("\"Peters, Tim\" <tim@x.org>");
  CHECK(a.name == "Peters, Tim");

  a = parse_address("bare@addr.org");
  CHECK(a.name.empty());
  CHECK(a.email == "bare@addr.org");

  a = parse_address("guido at python.org");
  CHECK(a.email == "guido@python.org");

  CHECK(!parse_address("").ok);
}

TEST_CASE("exact alias email hit wins") {
  Roster roster = fixture_roster();
  ParticipantId p = resolve_identity("Guido <g@x.org>", roster);
  CHECK(p.canonical_name == "guido");
  CHECK(p.role == Role::ProjectLeader);
}

TEST_CASE("name match is case-insensitive and used when the email is unknown") {
  Roster roster = fixture_roster();
  ParticipantId p = resolve_identity("Guido van Rossum <other@y.com>", roster);
  CHECK(p.canonical_name == "guido");
}

TEST_CASE("email match takes precedence over a colliding name") {
  Roster roster = fixture_roster();
  // display name says Tim, address belongs to guido's alias set
  ParticipantId p = resolve_identity("Tim Peters <guido@python.org>", roster);
  CHECK(p.canonical_name == "guido");
}

TEST_CASE("unknown sender becomes a fresh Unknown participant") {
  Roster roster = fixture_roster();
  ParticipantId p = resolve_identity("alice <a@b.c>", roster);
  CHECK(p.canonical_name == "alice");
  CHECK(p.role == Role::Unknown);
  CHECK(!p.flagged);
}

TEST_CASE("unparseable From header is flagged and kept raw") {
  Roster roster = fixture_roster();
  ParticipantId p = resolve_identity("", roster);
  CHECK(p.flagged);
  CHECK(p.role == Role::Unknown);
}

TEST_CASE("resolution is idempotent") {
  Roster roster = fixture_roster();
  for (const char* raw : {"Guido <g@x.org>", "alice <a@b.c>", "Bob <bob@q.r>"}) {
    ParticipantId p1 = resolve_identity(raw, roster);
    ParticipantId p2 = resolve_identity(raw, roster);
    CHECK(p1 == p2);
  }
}

TEST_CASE("overlapping alias sets are rejected") {
  Roster r = fixture_roster();
  ParticipantId clash;
  clash.canonical_name = "impostor";
  clash.aliases = {{"Somebody", "g@x.org"}};
  r.entries.push_back(clash);
  CHECK_THROWS_AS(r.validate(), std::invalid_argument);
}
