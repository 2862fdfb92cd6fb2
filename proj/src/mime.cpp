#include "crossbound/mime.hpp"

#include <cctype>

#include "crossbound/text.hpp"

namespace crossbound {

std::string HeaderBlock::get(const std::string& lower_name) const {
  for (const auto& [name, value] : fields) {
    if (name == lower_name) return value;
  }
  return "";
}

bool HeaderBlock::has(const std::string& lower_name) const {
  for (const auto& [name, value] : fields) {
    if (name == lower_name) return true;
  }
  return false;
}

HeaderBlock parse_headers(const std::string& raw) {
  HeaderBlock out;
  for (const std::string& line : split_lines(raw)) {
    if (line.empty()) continue;
    if (line[0] == ' ' || line[0] == '\t') {
      // folded continuation
      if (!out.fields.empty()) {
        out.fields.back().second += " " + trim(line);
      }
      continue;
    }
    size_t colon = line.find(':');
    if (colon == std::string::npos) continue;  // tolerated garbage line
    std::string name = to_lower(trim(line.substr(0, colon)));
    std::string value = trim(line.substr(colon + 1));
    if (name.empty()) continue;
    out.fields.emplace_back(std::move(name), std::move(value));
  }
  return out;
}

namespace {

int hex_val(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

int b64_val(char c) {
  if (c >= 'A' && c <= 'Z') return c - 'A';
  if (c >= 'a' && c <= 'z') return c - 'a' + 26;
  if (c >= '0' && c <= '9') return c - '0' + 52;
  if (c == '+') return 62;
  if (c == '/') return 63;
  return -1;
}

// Value of a Content-Type parameter such as boundary="...".
std::string ct_param(const std::string& content_type, const std::string& param) {
  std::string low = to_lower(content_type);
  std::string key = param + "=";
  size_t pos = low.find(key);
  if (pos == std::string::npos) return "";
  pos += key.size();
  if (pos >= content_type.size()) return "";
  if (content_type[pos] == '"') {
    size_t end = content_type.find('"', pos + 1);
    if (end == std::string::npos) return "";
    return content_type.substr(pos + 1, end - pos - 1);
  }
  size_t end = pos;
  while (end < content_type.size() && content_type[end] != ';' &&
         !std::isspace(static_cast<unsigned char>(content_type[end]))) {
    ++end;
  }
  return content_type.substr(pos, end - pos);
}

std::string media_type(const std::string& content_type) {
  std::string t = to_lower(trim(content_type));
  size_t semi = t.find(';');
  if (semi != std::string::npos) t = trim(t.substr(0, semi));
  return t;
}

}  // namespace

std::string decode_quoted_printable(const std::string& s, bool underscore_is_space) {
  std::string out;
  out.reserve(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '_' && underscore_is_space) {
      out.push_back(' ');
      continue;
    }
    if (c != '=') {
      out.push_back(c);
      continue;
    }
    // soft line break
    if (i + 1 < s.size() && s[i + 1] == '\n') {
      ++i;
      continue;
    }
    if (i + 2 < s.size() && s[i + 1] == '\r' && s[i + 2] == '\n') {
      i += 2;
      continue;
    }
    if (i + 2 < s.size()) {
      int hi = hex_val(s[i + 1]);
      int lo = hex_val(s[i + 2]);
      if (hi >= 0 && lo >= 0) {
        out.push_back(static_cast<char>(hi * 16 + lo));
        i += 2;
        continue;
      }
    }
    out.push_back(c);
  }
  return out;
}

std::string decode_base64(const std::string& s) {
  std::string out;
  int acc = 0;
  int bits = 0;
  for (char c : s) {
    int v = b64_val(c);
    if (v < 0) continue;  // whitespace, padding, stray bytes
    acc = (acc << 6) | v;
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<char>((acc >> bits) & 0xff));
    }
  }
  return out;
}

std::string decode_rfc2047(const std::string& s) {
  std::string out;
  size_t i = 0;
  while (i < s.size()) {
    size_t start = s.find("=?", i);
    if (start == std::string::npos) {
      out += s.substr(i);
      break;
    }
    size_t q1 = s.find('?', start + 2);
    if (q1 == std::string::npos) {
      out += s.substr(i);
      break;
    }
    size_t q2 = s.find('?', q1 + 1);
    size_t end = q2 == std::string::npos ? std::string::npos : s.find("?=", q2 + 1);
    if (q2 == std::string::npos || end == std::string::npos || q2 != q1 + 2) {
      out += s.substr(i, start + 2 - i);
      i = start + 2;
      continue;
    }
    out += s.substr(i, start - i);
    char enc = static_cast<char>(std::tolower(static_cast<unsigned char>(s[q1 + 1])));
    std::string payload = s.substr(q2 + 1, end - q2 - 1);
    if (enc == 'b') {
      out += decode_base64(payload);
    } else if (enc == 'q') {
      out += decode_quoted_printable(payload, /*underscore_is_space=*/true);
    } else {
      out += payload;
    }
    i = end + 2;
    // whitespace between adjacent encoded words is dropped
    size_t j = i;
    while (j < s.size() && std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j + 1 < s.size() && s[j] == '=' && s[j + 1] == '?') i = j;
  }
  return out;
}

std::string extract_text_body(const HeaderBlock& headers, const std::string& raw_body) {
  std::string ct = headers.get("content-type");
  std::string type = media_type(ct);

  if (starts_with(type, "multipart/")) {
    std::string boundary = ct_param(ct, "boundary");
    if (boundary.empty()) return raw_body;
    std::string sep = "--" + boundary;
    std::vector<std::string> lines = split_lines(raw_body);
    std::vector<std::string> parts;
    std::string cur;
    bool in_part = false;
    for (const std::string& line : lines) {
      if (line == sep || line == sep + "--") {
        if (in_part && !cur.empty()) parts.push_back(cur);
        cur.clear();
        in_part = line == sep;
        continue;
      }
      if (in_part) cur += line + "\n";
    }
    if (in_part && !cur.empty()) parts.push_back(cur);

    std::string joined;
    for (const std::string& part : parts) {
      size_t blank = part.find("\n\n");
      HeaderBlock ph;
      std::string pbody;
      if (blank == std::string::npos) {
        pbody = part;
      } else {
        ph = parse_headers(part.substr(0, blank));
        pbody = part.substr(blank + 2);
      }
      std::string text = extract_text_body(ph, pbody);
      if (text.empty()) continue;
      if (!joined.empty()) joined += "\n";
      joined += text;
    }
    return joined;
  }

  if (!type.empty() && !starts_with(type, "text/") && type != "message/rfc822") {
    return "";  // attachment
  }

  std::string cte = to_lower(trim(headers.get("content-transfer-encoding")));
  if (cte == "base64") return decode_base64(raw_body);
  if (cte == "quoted-printable") {
    return decode_quoted_printable(raw_body, /*underscore_is_space=*/false);
  }
  return raw_body;
}

}  // namespace crossbound
