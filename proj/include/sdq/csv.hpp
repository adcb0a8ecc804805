#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sdq {

/// Shortest representation that parses back to the same double (std::to_chars).
/// Locale-independent: '.' decimal separator always.
std::string format_double(double v);

/// Splits one CSV line on commas (no quoting; the schemas here never need it).
std::vector<std::string> split_csv_row(const std::string& line);

double parse_double(const std::string& s);
std::uint64_t parse_u64(const std::string& s);

/// Writes content verbatim (UTF-8, LF endings come from the content itself).
/// Throws FilesystemError on failure.
void write_text_file(const std::string& path, const std::string& content);

std::string read_text_file(const std::string& path);

}  // namespace sdq
