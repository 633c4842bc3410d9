#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ideascore::text {

// Splits UTF-8 text into one string per code point. Invalid bytes become
// single-byte pieces so that joining the result reproduces the input.
std::vector<std::string> split_code_points(std::string_view utf8);

// Decodes UTF-8 into code points; invalid bytes decode to U+FFFD.
std::u32string decode(std::string_view utf8);

std::size_t count_code_points(std::string_view utf8);

bool is_blank(std::string_view utf8);

// Lines of `text` with leading whitespace removed, in order.
std::vector<std::string_view> stripped_lines(std::string_view text);

bool starts_with_any(std::string_view line, std::span<const std::string> prefixes);

// Text up to (not including) the second line that begins with one of
// `header_prefixes` after leading whitespace; the whole text when fewer
// than two such lines exist.
std::string_view overview_slice(std::string_view text, std::span<const std::string> header_prefixes);

// q = context + "\n" + motivation.
std::string join_input(std::string_view context, std::string_view motivation);

}  // namespace ideascore::text
