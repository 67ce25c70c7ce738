#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace eraser {

/// Column-labelled numeric table; the common currency of the sweep commands
/// and plot writer.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Deterministic numeric formatting used by every text output (%.12g,
/// C locale). Identical inputs always serialize to identical bytes.
std::string format_double(double value);

/// CSV with a header row, '.' decimal separator, '\n' line endings.
std::string to_csv(const Table& table);

/// Writes via a temp file in the same directory followed by an atomic
/// rename, creating parent directories as needed.
void atomic_write_text(const std::filesystem::path& path,
                       const std::string& text);

}  // namespace eraser
