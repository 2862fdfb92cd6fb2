#include "crossbound/mbox.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "crossbound/datetime.hpp"
#include "crossbound/mime.hpp"
#include "crossbound/text.hpp"

namespace crossbound {

namespace {

bool is_separator_at(const std::string& data, size_t pos) {
  if (pos != 0 && data[pos - 1] != '\n') return false;
  return data.compare(pos, 5, "From ") == 0;
}

// Angle-bracketed ids, in order. Falls back to the whole trimmed value when
// no brackets are present.
std::vector<std::string> extract_message_ids(const std::string& value) {
  std::vector<std::string> out;
  size_t i = 0;
  while (true) {
    size_t open = value.find('<', i);
    if (open == std::string::npos) break;
    size_t close = value.find('>', open + 1);
    if (close == std::string::npos) break;
    std::string id = trim(value.substr(open + 1, close - open - 1));
    if (!id.empty()) out.push_back(id);
    i = close + 1;
  }
  if (out.empty()) {
    std::string t = trim(value);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

std::string unescape_mboxrd(const std::string& body) {
  std::string out;
  out.reserve(body.size());
  for (const std::string& line : split_lines(body)) {
    size_t gt = 0;
    while (gt < line.size() && line[gt] == '>') ++gt;
    if (gt > 0 && line.compare(gt, 5, "From ") == 0) {
      out += line.substr(1);
    } else {
      out += line;
    }
    out += "\n";
  }
  return out;
}

}  // namespace

MboxParseResult parse_mbox(const std::string& data, const std::string& list_id) {
  MboxParseResult result;
  if (data.empty()) return result;

  std::vector<size_t> starts;
  for (size_t pos = 0; pos < data.size();) {
    if (is_separator_at(data, pos)) starts.push_back(pos);
    size_t nl = data.find('\n', pos);
    if (nl == std::string::npos) break;
    pos = nl + 1;
  }
  if (starts.empty()) {
    result.diagnostics.push_back({list_id, "0", "no mbox separator found"});
    return result;
  }
  if (starts[0] != 0) {
    result.diagnostics.push_back({list_id, "0", "leading bytes before first separator skipped"});
  }

  std::set<std::string> seen_ids;
  for (size_t k = 0; k < starts.size(); ++k) {
    size_t begin = starts[k];
    size_t end = k + 1 < starts.size() ? starts[k + 1] : data.size();
    std::string offset_str = std::to_string(begin);

    size_t first_nl = data.find('\n', begin);
    if (first_nl == std::string::npos || first_nl + 1 >= end) {
      result.diagnostics.push_back({list_id, offset_str, "empty mbox entry"});
      continue;
    }
    std::string entry = data.substr(first_nl + 1, end - first_nl - 1);

    size_t blank = entry.find("\n\n");
    size_t blank_crlf = entry.find("\r\n\r\n");
    std::string head;
    std::string raw_body;
    if (blank_crlf != std::string::npos && (blank == std::string::npos || blank_crlf < blank)) {
      head = entry.substr(0, blank_crlf);
      raw_body = entry.substr(blank_crlf + 4);
    } else if (blank != std::string::npos) {
      head = entry.substr(0, blank);
      raw_body = entry.substr(blank + 2);
    } else {
      head = entry;
    }

    HeaderBlock headers = parse_headers(head);
    if (headers.fields.empty()) {
      result.diagnostics.push_back({list_id, offset_str, "entry without parseable headers skipped"});
      continue;
    }

    Message msg;
    msg.list_id = list_id;

    std::string mid_raw = headers.get("message-id");
    if (mid_raw.empty()) {
      msg.message_id = "synthetic-" + list_id + "-" + offset_str;
    } else {
      auto ids = extract_message_ids(mid_raw);
      msg.message_id = ids.empty() ? "synthetic-" + list_id + "-" + offset_str : ids[0];
    }
    if (!seen_ids.insert(msg.message_id).second) {
      result.diagnostics.push_back(
          {list_id, msg.message_id, "duplicate message id at offset " + offset_str + " skipped"});
      continue;
    }

    std::string date_raw = headers.get("date");
    auto date = parse_rfc2822_date(date_raw);
    if (!date) {
      result.diagnostics.push_back(
          {list_id, msg.message_id, "unparseable Date header '" + date_raw + "', message skipped"});
      continue;
    }
    msg.date = *date;

    msg.sender_raw = decode_rfc2047(headers.get("from"));
    msg.subject_raw = decode_rfc2047(headers.get("subject"));

    std::string irt = headers.get("in-reply-to");
    if (!irt.empty()) {
      auto ids = extract_message_ids(irt);
      if (!ids.empty()) msg.in_reply_to = ids[0];
    }
    std::string refs = headers.get("references");
    if (!refs.empty()) msg.references = extract_message_ids(refs);

    msg.body = unescape_mboxrd(extract_text_body(headers, raw_body));
    result.messages.push_back(std::move(msg));
  }
  return result;
}

MboxParseResult parse_mbox(std::istream& in, const std::string& list_id) {
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) {
    MboxParseResult r;
    r.diagnostics.push_back({list_id, "-", "unreadable stream"});
    return r;
  }
  return parse_mbox(ss.str(), list_id);
}

MboxParseResult parse_mbox_file(const std::filesystem::path& path, const std::string& list_id) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    MboxParseResult r;
    r.diagnostics.push_back({path.string(), "-", "cannot open archive"});
    return r;
  }
  return parse_mbox(in, list_id);
}

}  // namespace crossbound
