#include <doctest.h>

#include <sstream>

#include "crossbound/mbox.hpp"
#include "crossbound/mime.hpp"

using namespace crossbound;

namespace {

// three well-formed messages, the middle one a reply
const char* kThreeMessageMbox =
    "From alice@example.org Thu Jan  1 00:00:00 2004\n"
    "From: Alice <alice@example.org>\n"
    "Date: Thu, 1 Jan 2004 10:00:00 +0000\n"
    "Subject: Add decimal to the stdlib\n"
    "Message-ID: <a1@example.org>\n"
    "\n"
    "We should add a decimal type.\n"
    "\n"
    "From bob@example.org Thu Jan  1 01:00:00 2004\n"
    "From: Bob <bob@example.org>\n"
    "Date: Thu, 1 Jan 2004 11:30:00 +0000\n"
    "Subject: Re: Add decimal to the stdlib\n"
    "Message-ID: <b1@example.org>\n"
    "In-Reply-To: <a1@example.org>\n"
    "References: <a1@example.org>\n"
    "\n"
    "> We should add a decimal type.\n"
    "Agreed, floats keep surprising users.\n"
    "\n"
    "From carol@example.org Thu Jan  1 02:00:00 2004\n"
    "From: carol@example.org (Carol)\n"
    "Date: Thu, 1 Jan 2004 12:00:00 +0000\n"
    "Subject: Unicode musings\n"
    "Message-ID: <c1@example.org>\n"
    "\n"
    "Different topic entirely.\n";

}  // namespace

TEST_CASE("well-formed mbox parses one message per entry") {
  MboxParseResult r = parse_mbox(std::string(kThreeMessageMbox), "py-list");
  REQUIRE(r.messages.size() == 3);
  CHECK(r.diagnostics.empty());
  CHECK(r.messages[0].message_id == "a1@example.org");
  CHECK(r.messages[0].sender_raw == "Alice <alice@example.org>");
  CHECK(r.messages[0].subject_raw == "Add decimal to the stdlib");
  CHECK(r.messages[0].date == 1072951200);
  CHECK(r.messages[0].body == "We should add a decimal type.\n\n");
  CHECK(r.messages[1].in_reply_to == "a1@example.org");
  REQUIRE(r.messages[1].references.size() == 1);
  CHECK(r.messages[1].references[0] == "a1@example.org");
  CHECK(r.messages[2].list_id == "py-list");
}

TEST_CASE("empty stream yields an empty list") {
  MboxParseResult r = parse_mbox(std::string(""), "py-list");
  CHECK(r.messages.empty());
}

TEST_CASE("missing Message-ID gets a deterministic synthetic id") {
  std::string data =
      "From x@example.org Thu Jan  1 00:00:00 2004\n"
      "From: x@example.org\n"
      "Date: Thu, 1 Jan 2004 10:00:00 +0000\n"
      "Subject: no id here\n"
      "\n"
      "body\n";
  MboxParseResult r1 = parse_mbox(data, "py-list");
  MboxParseResult r2 = parse_mbox(data, "py-list");
  REQUIRE(r1.messages.size() == 1);
  CHECK(r1.messages[0].message_id == r2.messages[0].message_id);
  CHECK(r1.messages[0].message_id == "synthetic-py-list-0");

  // a different byte offset produces a different id
  MboxParseResult r3 = parse_mbox("From y@e Thu\nFrom: y@e\nDate: Thu, 1 Jan 2004 09:00:00 +0000\nSubject: s\nMessage-ID: <y@e>\n\nb\n" + data, "py-list");
  REQUIRE(r3.messages.size() == 2);
  CHECK(r3.messages[1].message_id != "synthetic-py-list-0");
}

TEST_CASE("a malformed message is skipped with a diagnostic, not fatal") {
  std::string data =
      "From bad@example.org Thu Jan  1 00:00:00 2004\n"
      "From: bad@example.org\n"
      "Date: yesterday-ish\n"
      "Subject: broken\n"
      "\n"
      "body\n"
      "From ok@example.org Thu Jan  1 00:00:00 2004\n"
      "From: ok@example.org\n"
      "Date: Thu, 1 Jan 2004 10:00:00 +0000\n"
      "Subject: fine\n"
      "Message-ID: <ok@example.org>\n"
      "\n"
      "body\n";
  MboxParseResult r = parse_mbox(data, "py-list");
  REQUIRE(r.messages.size() == 1);
  CHECK(r.messages[0].message_id == "ok@example.org");
  REQUIRE(r.diagnostics.size() == 1);
  CHECK(r.diagnostics[0].what.find("Date") != std::string::npos);
}

TEST_CASE("duplicate message ids within a list are dropped with a diagnostic") {
  std::string one =
      "From a@e Thu Jan  1 00:00:00 2004\n"
      "From: a@e\n"
      "Date: Thu, 1 Jan 2004 10:00:00 +0000\n"
      "Subject: s\n"
      "Message-ID: <dup@e>\n"
      "\n"
      "b\n";
  MboxParseResult r = parse_mbox(one + one, "py-list");
  CHECK(r.messages.size() == 1);
  CHECK(r.diagnostics.size() == 1);
}

TEST_CASE("mboxrd From-escaping is undone") {
  std::string data =
      "From a@e Thu Jan  1 00:00:00 2004\n"
      "From: a@e\n"
      "Date: Thu, 1 Jan 2004 10:00:00 +0000\n"
      "Subject: s\n"
      "Message-ID: <esc@e>\n"
      "\n"
      ">From my point of view this works.\n"
      ">>From here too.\n";
  MboxParseResult r = parse_mbox(data, "py-list");
  REQUIRE(r.messages.size() == 1);
  CHECK(r.messages[0].body == "From my point of view this works.\n>From here too.\n");
}

TEST_CASE("quoted-printable and base64 bodies are decoded") {
  std::string qp =
      "From a@e Thu Jan  1 00:00:00 2004\n"
      "From: a@e\n"
      "Date: Thu, 1 Jan 2004 10:00:00 +0000\n"
      "Subject: s\n"
      "Message-ID: <qp@e>\n"
      "Content-Transfer-Encoding: quoted-printable\n"
      "\n"
      "caf=C3=A9 decimal=\n"
      " arithmetic\n";
  MboxParseResult r = parse_mbox(qp, "py-list");
  REQUIRE(r.messages.size() == 1);
  CHECK(r.messages[0].body == "caf\xc3\xa9 decimal arithmetic\n");

  CHECK(decode_base64("aGVsbG8gd29ybGQ=") == "hello world");
  CHECK(decode_quoted_printable("a=20b", false) == "a b");
}

TEST_CASE("rfc2047 encoded headers are decoded") {
  CHECK(decode_rfc2047("=?utf-8?q?caf=C3=A9?=") == "caf\xc3\xa9");
  CHECK(decode_rfc2047("=?utf-8?B?aGVsbG8=?=") == "hello");
  CHECK(decode_rfc2047("plain text") == "plain text");
  CHECK(decode_rfc2047("=?utf-8?q?a?= =?utf-8?q?b?=") == "ab");
}

TEST_CASE("multipart bodies keep only text parts") {
  std::string data =
      "From a@e Thu Jan  1 00:00:00 2004\n"
      "From: a@e\n"
      "Date: Thu, 1 Jan 2004 10:00:00 +0000\n"
      "Subject: s\n"
      "Message-ID: <mp@e>\n"
      "Content-Type: multipart/mixed; boundary=\"XX\"\n"
      "\n"
      "--XX\n"
      "Content-Type: text/plain\n"
      "\n"
      "visible text\n"
      "--XX\n"
      "Content-Type: application/octet-stream\n"
      "\n"
      "BINARYJUNK\n"
      "--XX--\n";
  MboxParseResult r = parse_mbox(data, "py-list");
  REQUIRE(r.messages.size() == 1);
  CHECK(r.messages[0].body.find("visible text") != std::string::npos);
  CHECK(r.messages[0].body.find("BINARYJUNK") == std::string::npos);
}

TEST_CASE("leading bytes before the first separator are skipped with a note") {
  std::string data = "garbage preamble\n" + std::string(kThreeMessageMbox);
  MboxParseResult r = parse_mbox(data, "py-list");
  CHECK(r.messages.size() == 3);
  REQUIRE(!r.diagnostics.empty());
  CHECK(r.diagnostics[0].what.find("leading") != std::string::npos);
}

TEST_CASE("the stream overload matches the string overload") {
  std::istringstream in{std::string(kThreeMessageMbox)};
  MboxParseResult a = parse_mbox(in, "py-list");
  MboxParseResult b = parse_mbox(std::string(kThreeMessageMbox), "py-list");
  REQUIRE(a.messages.size() == b.messages.size());
  for (size_t i = 0; i < a.messages.size(); ++i) {
    CHECK(a.messages[i].message_id == b.messages[i].message_id);
  }
}

TEST_CASE("parsing the same bytes twice is structurally identical") {
  MboxParseResult a = parse_mbox(std::string(kThreeMessageMbox), "py-list");
  MboxParseResult b = parse_mbox(std::string(kThreeMessageMbox), "py-list");
  REQUIRE(a.messages.size() == b.messages.size());
  for (size_t i = 0; i < a.messages.size(); ++i) {
    CHECK(a.messages[i].message_id == b.messages[i].message_id);
    CHECK(a.messages[i].date == b.messages[i].date);
    CHECK(a.messages[i].body == b.messages[i].body);
    CHECK(a.messages[i].subject_raw == b.messages[i].subject_raw);
  }
}
