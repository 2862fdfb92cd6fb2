#include "crossbound/datetime.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <cstdlib>

#include "crossbound/text.hpp"

namespace crossbound {

std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                       static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& year, int& month, int& day) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;
  year = static_cast<int>(y + (m <= 2));
  month = static_cast<int>(m);
  day = static_cast<int>(d);
}

Timestamp make_utc(int year, int month, int day, int hour, int minute, int second,
                   int offset_minutes) {
  const std::int64_t days = days_from_civil(year, month, day);
  Timestamp t = days * 86400 + hour * 3600 + minute * 60 + second;
  return t - static_cast<Timestamp>(offset_minutes) * 60;
}

namespace {

const std::array<const char*, 12> kMonths = {"jan", "feb", "mar", "apr", "may", "jun",
                                             "jul", "aug", "sep", "oct", "nov", "dec"};

int month_from_name(const std::string& m) {
  std::string low = to_lower(m);
  if (low.size() > 3) low = low.substr(0, 3);
  for (size_t i = 0; i < kMonths.size(); ++i) {
    if (low == kMonths[i]) return static_cast<int>(i) + 1;
  }
  return 0;
}

// RFC 2822 zone token to offset minutes; unrecognized names count as +0000.
bool zone_offset(const std::string& z, int& minutes) {
  if (z.empty()) return false;
  if (z[0] == '+' || z[0] == '-') {
    if (z.size() < 5) return false;
    for (size_t i = 1; i < 5; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(z[i]))) return false;
    }
    int hh = (z[1] - '0') * 10 + (z[2] - '0');
    int mm = (z[3] - '0') * 10 + (z[4] - '0');
    minutes = hh * 60 + mm;
    if (z[0] == '-') minutes = -minutes;
    return true;
  }
  std::string n = to_lower(z);
  if (n == "ut" || n == "gmt" || n == "utc" || n == "z") { minutes = 0; return true; }
  if (n == "est") { minutes = -5 * 60; return true; }
  if (n == "edt") { minutes = -4 * 60; return true; }
  if (n == "cst") { minutes = -6 * 60; return true; }
  if (n == "cdt") { minutes = -5 * 60; return true; }
  if (n == "mst") { minutes = -7 * 60; return true; }
  if (n == "mdt") { minutes = -6 * 60; return true; }
  if (n == "pst") { minutes = -8 * 60; return true; }
  if (n == "pdt") { minutes = -7 * 60; return true; }
  if (n.size() == 1 && std::isalpha(static_cast<unsigned char>(n[0]))) {
    minutes = 0;
    return true;
  }
  return false;
}

std::string strip_comments(const std::string& s) {
  std::string out;
  int depth = 0;
  for (char c : s) {
    if (c == '(') { ++depth; continue; }
    if (c == ')') { if (depth > 0) --depth; continue; }
    if (depth == 0) out.push_back(c);
  }
  return out;
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

std::optional<Timestamp> parse_rfc2822_date(const std::string& raw) {
  std::string s = strip_comments(raw);
  for (char& c : s) {
    if (c == ',') c = ' ';
  }
  std::vector<std::string> tok = tokenize(s);
  size_t i = 0;
  // optional day-of-week name
  if (i < tok.size() && !all_digits(tok[i]) && month_from_name(tok[i]) == 0) ++i;
  if (i + 2 >= tok.size()) return std::nullopt;

  int day = 0, month = 0, year = 0;
  if (all_digits(tok[i])) {
    day = std::atoi(tok[i].c_str());
    month = month_from_name(tok[i + 1]);
    if (month == 0 || !all_digits(tok[i + 2])) return std::nullopt;
    year = std::atoi(tok[i + 2].c_str());
  } else {
    // asctime style: "Nov 18 10:11:12 2003"
    month = month_from_name(tok[i]);
    if (month == 0 || i + 3 >= tok.size() || !all_digits(tok[i + 1])) return std::nullopt;
    day = std::atoi(tok[i + 1].c_str());
    int h = 0, m = 0, sec = 0;
    if (std::sscanf(tok[i + 2].c_str(), "%d:%d:%d", &h, &m, &sec) < 2) return std::nullopt;
    if (!all_digits(tok[i + 3])) return std::nullopt;
    year = std::atoi(tok[i + 3].c_str());
    if (day < 1 || day > 31 || h > 23 || m > 59 || sec > 60) return std::nullopt;
    return make_utc(year, month, day, h, m, sec, 0);
  }
  i += 3;
  if (tok[i - 1].size() <= 2) {
    year += year < 50 ? 2000 : 1900;
  }
  if (i >= tok.size()) return std::nullopt;

  int h = 0, m = 0, sec = 0;
  int fields = std::sscanf(tok[i].c_str(), "%d:%d:%d", &h, &m, &sec);
  if (fields < 2) return std::nullopt;
  ++i;

  int offset = 0;
  if (i < tok.size()) {
    if (!zone_offset(tok[i], offset)) offset = 0;
  }
  if (day < 1 || day > 31 || month < 1 || month > 12 || h > 23 || m > 59 || sec > 60) {
    return std::nullopt;
  }
  return make_utc(year, month, day, h, m, sec, offset);
}

std::optional<Timestamp> parse_iso8601(const std::string& raw) {
  std::string s = trim(raw);
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
  int n = 0;
  if (std::sscanf(s.c_str(), "%4d-%2d-%2d%n", &y, &mo, &d, &n) != 3) return std::nullopt;
  if (mo < 1 || mo > 12 || d < 1 || d > 31) return std::nullopt;
  std::string rest = s.substr(static_cast<size_t>(n));
  if (rest.empty()) return make_utc(y, mo, d, 0, 0, 0, 0);
  if (rest[0] != 'T' && rest[0] != 't' && rest[0] != ' ') return std::nullopt;
  rest = rest.substr(1);
  if (std::sscanf(rest.c_str(), "%2d:%2d:%2d%n", &h, &mi, &sec, &n) != 3) {
    sec = 0;
    if (std::sscanf(rest.c_str(), "%2d:%2d%n", &h, &mi, &n) != 2) return std::nullopt;
  }
  if (h > 23 || mi > 59 || sec > 60) return std::nullopt;
  rest = rest.substr(static_cast<size_t>(n));
  int offset = 0;
  if (!rest.empty()) {
    if (rest == "Z" || rest == "z") {
      offset = 0;
    } else if (rest[0] == '+' || rest[0] == '-') {
      int oh = 0, om = 0;
      if (std::sscanf(rest.c_str() + 1, "%2d:%2d", &oh, &om) < 1 &&
          std::sscanf(rest.c_str() + 1, "%2d%2d", &oh, &om) < 1) {
        return std::nullopt;
      }
      // "+HHMM" without a colon
      if (rest.size() >= 5 && rest[3] != ':') {
        oh = (rest[1] - '0') * 10 + (rest[2] - '0');
        om = (rest[3] - '0') * 10 + (rest[4] - '0');
      }
      offset = oh * 60 + om;
      if (rest[0] == '-') offset = -offset;
    } else {
      return std::nullopt;
    }
  }
  return make_utc(y, mo, d, h, mi, sec, offset);
}

std::string format_iso8601(Timestamp t) {
  std::int64_t days = t / 86400;
  std::int64_t rem = t % 86400;
  if (rem < 0) {
    rem += 86400;
    days -= 1;
  }
  int y, m, d;
  civil_from_days(days, y, m, d);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m, d,
                static_cast<int>(rem / 3600), static_cast<int>((rem / 60) % 60),
                static_cast<int>(rem % 60));
  return buf;
}

std::string format_rfc2822(Timestamp t) {
  static const char* dows[7] = {"Thu", "Fri", "Sat", "Sun", "Mon", "Tue", "Wed"};
  static const char* months[12] = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                   "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
  std::int64_t days = t / 86400;
  std::int64_t rem = t % 86400;
  if (rem < 0) {
    rem += 86400;
    days -= 1;
  }
  int y, m, d;
  civil_from_days(days, y, m, d);
  std::int64_t dow = ((days % 7) + 7) % 7;  // 1970-01-01 was a Thursday
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%s, %d %s %04d %02d:%02d:%02d +0000", dows[dow], d,
                months[m - 1], y, static_cast<int>(rem / 3600),
                static_cast<int>((rem / 60) % 60), static_cast<int>(rem % 60));
  return buf;
}

}  // namespace crossbound
