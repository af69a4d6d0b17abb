#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace gordon::cli {

struct FileRecord {
  std::string path;  // relative to the output root, '/'-separated
  std::string sha256;
  std::size_t bytes = 0;
};

std::string sha256_hex(std::string_view data);

/// %.17g, which round-trips every double.
std::string format_number(double x);

/// Writes files under a root directory and remembers what was written so a
/// manifest can be produced. Throws IoError on any filesystem failure.
class OutputDir {
public:
  explicit OutputDir(std::filesystem::path root);

  const std::filesystem::path& root() const noexcept { return root_; }
  void write(const std::string& relative, std::string_view content);
  /// Adds records for files written elsewhere (e.g. a sub-run), prefixed.
  void adopt(const std::string& prefix, const std::vector<FileRecord>& records);
  const std::vector<FileRecord>& records() const noexcept { return records_; }

  /// manifest.json listing every record sorted by path. Not listed in itself.
  void write_manifest();

private:
  std::filesystem::path root_;
  std::vector<FileRecord> records_;
};

/// Incremental CSV text with a fixed header.
class CsvWriter {
public:
  explicit CsvWriter(std::initializer_list<std::string_view> header);

  CsvWriter& row(std::initializer_list<double> values);
  /// Row with preformatted cells (empty string for a missing value).
  CsvWriter& cells(const std::vector<std::string>& values);
  const std::string& str() const noexcept { return text_; }

private:
  std::size_t columns_;
  std::string text_;
};

} // namespace gordon::cli
