#include "ags/types.hpp"

#include <unicode/utf8.h>

#include <charconv>
#include <iostream>
#include <mutex>
#include <set>
#include <system_error>

namespace ags {

DialectId::DialectId(std::string code) : code_(std::move(code)) {
  if (code_.empty()) throw ArgumentError("dialect code must be non-empty");
}

const DialectId& DialectId::pooled() {
  static const DialectId id{"*"};
  return id;
}

const DialectId& DialectId::anchor() {
  static const DialectId id{"MSA"};
  return id;
}

ParseError::ParseError(std::string_view source, std::size_t line, std::string_view what)
    : Error(std::string(source) + ":" + std::to_string(line) + ": " + std::string(what)), line_(line) {}

ValidationError::ValidationError(std::string_view source, std::size_t line, std::string_view what)
    : Error(std::string(source) + ":" + std::to_string(line) + ": " + std::string(what)) {}

SymbolSeq split_graphemes(std::string_view utf8) {
  SymbolSeq out;
  const auto* s = reinterpret_cast<const uint8_t*>(utf8.data());
  const int32_t length = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t start = i;
    UChar32 c = 0;
    U8_NEXT(s, i, length, c);
    if (c < 0) throw ArgumentError("invalid UTF-8 in '" + std::string(utf8) + "'");
    out.emplace_back(utf8.substr(start, i - start));
  }
  return out;
}

std::size_t codepoint_count(std::string_view utf8) {
  const auto* s = reinterpret_cast<const uint8_t*>(utf8.data());
  const int32_t length = static_cast<int32_t>(utf8.size());
  std::size_t n = 0;
  int32_t i = 0;
  while (i < length) {
    UChar32 c = 0;
    U8_NEXT(s, i, length, c);
    ++n;
  }
  return n;
}

std::string join(const SymbolSeq& symbols, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i) out += sep;
    out += symbols[i];
  }
  return out;
}

std::vector<std::string> split_fields(std::string_view line, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      break;
    }
    out.emplace_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  auto space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; };
  while (i < text.size()) {
    while (i < text.size() && space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !space(text[i])) ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc{} || res.ptr != end) throw ArgumentError("not a number: '" + std::string(text) + "'");
  return value;
}

namespace {
std::mutex g_warn_mutex;
std::set<std::string> g_warnings;
}  // namespace

void warn_once(const std::string& message) {
  std::lock_guard lock(g_warn_mutex);
  if (g_warnings.insert(message).second) std::cerr << "warning: " << message << '\n';
}

std::size_t warning_count() {
  std::lock_guard lock(g_warn_mutex);
  return g_warnings.size();
}

}  // namespace ags
