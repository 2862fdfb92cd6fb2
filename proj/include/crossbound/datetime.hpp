#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "crossbound/types.hpp"

namespace crossbound {

// Days relative to 1970-01-01 for a proleptic Gregorian civil date.
std::int64_t days_from_civil(int year, int month, int day);
void civil_from_days(std::int64_t days, int& year, int& month, int& day);

Timestamp make_utc(int year, int month, int day, int hour, int minute, int second,
                   int offset_minutes);

// "Tue, 18 Nov 2003 10:11:12 +0100" and the usual obsolete variants.
std::optional<Timestamp> parse_rfc2822_date(const std::string& s);

// "2003-11-18T10:11:12Z", offset forms, or a bare date (midnight UTC).
std::optional<Timestamp> parse_iso8601(const std::string& s);

std::string format_iso8601(Timestamp t);
std::string format_rfc2822(Timestamp t);

}  // namespace crossbound
