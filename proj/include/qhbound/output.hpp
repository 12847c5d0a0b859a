#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace qhbound {

/// Scientific notation with 17 significant digits.
std::string format_number(double v);

/// CSV text: a "# config_hash=... tool=..." line, a header row and data rows,
/// '\n' line endings.
class CsvTable {
 public:
  CsvTable(std::string config_hash, std::vector<std::string> columns);
  void add_row(const std::vector<double>& values);
  std::string str() const;

 private:
  std::string text_;
  std::size_t width_;
};

/// Writes via a temporary file in the same directory and a rename.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

/// Writes several files; nothing is renamed into place until every temporary
/// file has been written.
void write_all_atomic(const std::vector<std::pair<std::filesystem::path, std::string>>& files);

inline constexpr const char* kToolVersion = "qhbound 0.1.0";

}  // namespace qhbound
