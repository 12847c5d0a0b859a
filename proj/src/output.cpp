#include "qhbound/output.hpp"

#include <charconv>
#include <fstream>
#include <system_error>
#include <unistd.h>

#include "qhbound/error.hpp"

namespace qhbound {

std::string format_number(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 16);
  return std::string(buf, r.ptr);
}

CsvTable::CsvTable(std::string config_hash, std::vector<std::string> columns) : width_(columns.size()) {
  text_ = "# config_hash=" + config_hash + " tool=" + kToolVersion + "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) text_ += (i ? "," : "") + columns[i];
  text_ += '\n';
}

void CsvTable::add_row(const std::vector<double>& values) {
  if (values.size() != width_) throw Error(Errc::InvalidArgument, "CSV row width does not match the header");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) text_ += ',';
    text_ += format_number(values[i]);
  }
  text_ += '\n';
}

std::string CsvTable::str() const { return text_; }

namespace {

std::filesystem::path temp_for(const std::filesystem::path& path) {
  return path.parent_path() / ("." + path.filename().string() + ".tmp" + std::to_string(::getpid()));
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path.string());
}

}  // namespace

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  write_all_atomic({{path, contents}});
}

void write_all_atomic(const std::vector<std::pair<std::filesystem::path, std::string>>& files) {
  std::vector<std::filesystem::path> temps;
  try {
    for (const auto& [path, contents] : files) {
      temps.push_back(temp_for(path));
      write_file(temps.back(), contents);
    }
    for (std::size_t i = 0; i < files.size(); ++i) std::filesystem::rename(temps[i], files[i].first);
  } catch (...) {
    std::error_code ec;
    for (const auto& t : temps) std::filesystem::remove(t, ec);
    throw;
  }
}

}  // namespace qhbound
