#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace eicv {

inline bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

inline bool is_ascii_alpha(char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline bool is_ascii_digit(char c) noexcept { return c >= '0' && c <= '9'; }

inline char to_lower_ascii(char c) noexcept {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string to_lower(std::string_view s);

std::string_view trim(std::string_view s) noexcept;

// Lowercase, trim, and collapse internal whitespace runs to a single space.
// Every topic, tag, and redundant word goes through this before storage.
std::string canonicalize(std::string_view s);

std::vector<std::string> split_whitespace(std::string_view s);

// Number of UTF-8 code points (continuation bytes are not counted).
std::size_t utf8_length(std::string_view s) noexcept;

}  // namespace eicv
