#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace tvnet::text {

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

/// Strict full-string parses; throw format-error naming `what`.
double parse_double(std::string_view s, std::string_view what);
long long parse_int(std::string_view s, std::string_view what);

std::vector<std::string> split(std::string_view line, char sep);
std::string_view trim(std::string_view s);

std::vector<std::string> read_lines(const std::filesystem::path& path);

/// Writes `contents` to a sibling temporary file, then renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace tvnet::text
