#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stance::utf8 {

// Byte length of the sequence starting at s[pos]. Invalid or truncated
// sequences count as a single byte so that splitting never loses input.
std::size_t sequence_length(std::string_view s, std::size_t pos);

// Splits into one substring per character. Concatenating the pieces gives
// back the input byte for byte, including invalid bytes.
std::vector<std::string_view> split_chars(std::string_view s);

std::size_t char_count(std::string_view s);

// Offset of the first invalid byte, or nullopt for valid UTF-8.
std::optional<std::size_t> first_invalid(std::string_view s);

// Code point of a single valid character; U+FFFD otherwise.
char32_t decode(std::string_view ch);
std::string encode(char32_t cp);

// First `n` characters of s.
std::string_view prefix_chars(std::string_view s, std::size_t n);

bool is_whitespace(char32_t cp);
// ASCII punctuation, general punctuation, CJK symbols and full-width forms.
bool is_punctuation(char32_t cp);

std::string_view trim(std::string_view s);

}  // namespace stance::utf8
