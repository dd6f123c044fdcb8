#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace attsp {

// Shortest round-trip decimal rendering of a double.
std::string format_double(double v);

// FNV-1a 64-bit over a file's bytes, rendered as 16 hex digits.
std::string hash_file(const std::string& path);

std::vector<std::vector<std::string>> read_csv(const std::string& path);
void write_csv(const std::vector<std::vector<std::string>>& rows,
               const std::string& path);

}  // namespace attsp
