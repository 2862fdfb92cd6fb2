#include <doctest.h>

#include "crossbound/datetime.hpp"

using namespace crossbound;

TEST_CASE("rfc2822 date parsing") {
  CHECK(parse_rfc2822_date("Thu, 1 Jan 2004 00:00:00 +0000") == 1072915200);
  CHECK(parse_rfc2822_date("1 Jan 2004 00:00:00 +0000") == 1072915200);
  CHECK(parse_rfc2822_date("Thu, 1 Jan 2004 01:00:00 +0100") == 1072915200);
  CHECK(parse_rfc2822_date("Wed, 31 Dec 2003 19:00:00 -0500") == 1072915200);
  CHECK(parse_rfc2822_date("Thu, 1 Jan 2004 00:00:00 GMT") == 1072915200);
  CHECK(parse_rfc2822_date("Thu, 01 Jan 2004 00:00:00 UT") == 1072915200);
  // comments and missing seconds
  CHECK(parse_rfc2822_date("Thu, 1 Jan 2004 00:00 +0000 (CET)") == 1072915200);
  // two-digit obsolete years
  CHECK(parse_rfc2822_date("1 Jan 04 00:00:00 +0000") == 1072915200);
  CHECK(!parse_rfc2822_date(""));
  CHECK(!parse_rfc2822_date("not a valid date"));
  CHECK(!parse_rfc2822_date("32 Jan 2004 00:00:00 +0000"));
}

TEST_CASE("iso8601 parsing and formatting") {
  CHECK(parse_iso8601("2004-01-01T00:00:00Z") == 1072915200);
  CHECK(parse_iso8601("2004-01-01T01:00:00+01:00") == 1072915200);
  CHECK(parse_iso8601("2004-01-01") == 1072915200);
  CHECK(!parse_iso8601("2004-13-01T00:00:00Z"));
  CHECK(format_iso8601(1072915200) == "2004-01-01T00:00:00Z");
}

TEST_CASE("formatting round trips") {
  for (Timestamp t : {Timestamp(0), Timestamp(1072915200), Timestamp(1147305600),
                      Timestamp(988675200)}) {
    CHECK(parse_rfc2822_date(format_rfc2822(t)) == t);
    CHECK(parse_iso8601(format_iso8601(t)) == t);
  }
}

TEST_CASE("civil date conversions agree in both directions") {
  for (std::int64_t day : {0, 100, 12418, 13000, -1, -400}) {
    int y, m, d;
    civil_from_days(day, y, m, d);
    CHECK(days_from_civil(y, m, d) == day);
  }
}
