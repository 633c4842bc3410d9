#include "ideascore/text.hpp"

#include <algorithm>

namespace ideascore::text {
namespace {

// Length of the UTF-8 sequence starting at s[i], or 0 if it is malformed.
std::size_t sequence_length(std::string_view s, std::size_t i) {
  const auto lead = static_cast<unsigned char>(s[i]);
  std::size_t len = 0;
  if (lead < 0x80) return 1;
  if ((lead & 0xE0) == 0xC0 && lead >= 0xC2) len = 2;
  else if ((lead & 0xF0) == 0xE0) len = 3;
  else if ((lead & 0xF8) == 0xF0 && lead <= 0xF4) len = 4;
  else return 0;
  if (i + len > s.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return 0;
  }
  return len;
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

std::vector<std::string> split_code_points(std::string_view utf8) {
  std::vector<std::string> out;
  out.reserve(utf8.size());
  std::size_t i = 0;
  while (i < utf8.size()) {
    std::size_t len = sequence_length(utf8, i);
    if (len == 0) len = 1;
    out.emplace_back(utf8.substr(i, len));
    i += len;
  }
  return out;
}

std::u32string decode(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  std::size_t i = 0;
  while (i < utf8.size()) {
    const std::size_t len = sequence_length(utf8, i);
    if (len == 0) {
      out.push_back(U'�');
      ++i;
      continue;
    }
    auto byte = [&](std::size_t k) { return static_cast<char32_t>(static_cast<unsigned char>(utf8[i + k])); };
    char32_t cp = 0;
    switch (len) {
      case 1: cp = byte(0); break;
      case 2: cp = ((byte(0) & 0x1F) << 6) | (byte(1) & 0x3F); break;
      case 3: cp = ((byte(0) & 0x0F) << 12) | ((byte(1) & 0x3F) << 6) | (byte(2) & 0x3F); break;
      default:
        cp = ((byte(0) & 0x07) << 18) | ((byte(1) & 0x3F) << 12) | ((byte(2) & 0x3F) << 6) | (byte(3) & 0x3F);
        break;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::size_t count_code_points(std::string_view utf8) {
  std::size_t n = 0;
  std::size_t i = 0;
  while (i < utf8.size()) {
    const std::size_t len = sequence_length(utf8, i);
    i += len == 0 ? 1 : len;
    ++n;
  }
  return n;
}

bool is_blank(std::string_view utf8) {
  return std::all_of(utf8.begin(), utf8.end(), is_space);
}

std::vector<std::string_view> stripped_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    while (!line.empty() && is_space(line.front())) line.remove_prefix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

bool starts_with_any(std::string_view line, std::span<const std::string> prefixes) {
  return std::any_of(prefixes.begin(), prefixes.end(), [&](const std::string& p) {
    return !p.empty() && line.starts_with(p);
  });
}

std::string_view overview_slice(std::string_view text, std::span<const std::string> header_prefixes) {
  int headers_seen = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    while (!line.empty() && is_space(line.front())) line.remove_prefix(1);
    if (starts_with_any(line, header_prefixes) && ++headers_seen == 2) {
      return text.substr(0, start);
    }
    start = end + 1;
  }
  return text;
}

std::string join_input(std::string_view context, std::string_view motivation) {
  std::string q;
  q.reserve(context.size() + motivation.size() + 1);
  q.append(context);
  q.push_back('\n');
  q.append(motivation);
  return q;
}

}  // namespace ideascore::text
