#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ags {

// One grapheme (a single Unicode code point) or one CAPHI phoneme symbol.
using Symbol = std::string;
using SymbolSeq = std::vector<Symbol>;

// Reserved alignment gap. Loaders reject it as a real symbol.
inline constexpr std::string_view kGap = "<GAP>";

inline bool is_gap(std::string_view s) { return s == kGap; }

class DialectId {
 public:
  DialectId() = default;
  explicit DialectId(std::string code);

  // Key used by probability tables for the all-dialect distribution.
  static const DialectId& pooled();
  static const DialectId& anchor();  // MSA

  const std::string& code() const noexcept { return code_; }
  bool is_pooled() const noexcept { return code_ == "*"; }

  auto operator<=>(const DialectId&) const = default;
  bool operator==(const DialectId&) const = default;

 private:
  std::string code_;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::string_view source, std::size_t line, std::string_view what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_ = 0;
};

class ValidationError : public Error {
 public:
  using Error::Error;
  ValidationError(std::string_view source, std::size_t line, std::string_view what);
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

// Splits a UTF-8 string into code points. Throws ArgumentError on invalid UTF-8.
SymbolSeq split_graphemes(std::string_view utf8);
std::size_t codepoint_count(std::string_view utf8);
std::string join(const SymbolSeq& symbols, std::string_view sep = "");

// Splits on runs of ASCII whitespace.
std::vector<std::string> split_fields(std::string_view line, char delim);
std::vector<std::string> split_words(std::string_view text);

// Shortest round-trip decimal form of a double.
std::string format_double(double value);
double parse_double(std::string_view text);

// Process-wide, thread-safe warning sink; each distinct message prints once.
void warn_once(const std::string& message);
std::size_t warning_count();

}  // namespace ags
