#include "gordon/cli/output.hpp"

#include <algorithm>
#include <fstream>
#include <system_error>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "json.hpp"
#include "gordon/cli/scenario.hpp"

namespace gordon::cli {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 digest failed");
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

std::string format_number(double x) { return fmt::format("{:.17g}", x); }

OutputDir::OutputDir(std::filesystem::path root) : root_(std::move(root)) {
  std::error_code ec;
  std::filesystem::create_directories(root_, ec);
  if (ec) throw IoError(fmt::format("cannot create '{}': {}", root_.string(), ec.message()));
}

void OutputDir::write(const std::string& relative, std::string_view content) {
  const std::filesystem::path target = root_ / relative;
  std::error_code ec;
  std::filesystem::create_directories(target.parent_path(), ec);
  if (ec) throw IoError(fmt::format("cannot create '{}': {}", target.parent_path().string(), ec.message()));
  std::ofstream out(target, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", target.string()));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw IoError(fmt::format("failed writing '{}'", target.string()));
  records_.push_back({relative, sha256_hex(content), content.size()});
}

void OutputDir::adopt(const std::string& prefix, const std::vector<FileRecord>& records) {
  for (const auto& r : records) records_.push_back({prefix + "/" + r.path, r.sha256, r.bytes});
}

void OutputDir::write_manifest() {
  std::vector<FileRecord> sorted = records_;
  std::sort(sorted.begin(), sorted.end(),
            [](const FileRecord& a, const FileRecord& b) { return a.path < b.path; });
  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  for (const auto& r : sorted)
    files.push_back({{"path", r.path}, {"sha256", r.sha256}, {"bytes", r.bytes}});
  nlohmann::ordered_json doc{{"schema", "gordon-manifest/1"}, {"files", files}};
  const std::string text = doc.dump(2) + "\n";
  const std::filesystem::path target = root_ / "manifest.json";
  std::ofstream out(target, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", target.string()));
  out << text;
  out.close();
  if (!out) throw IoError(fmt::format("failed writing '{}'", target.string()));
}

CsvWriter::CsvWriter(std::initializer_list<std::string_view> header) : columns_(header.size()) {
  bool first = true;
  for (auto h : header) {
    if (!first) text_ += ',';
    text_ += h;
    first = false;
  }
  text_ += '\n';
}

CsvWriter& CsvWriter::row(std::initializer_list<double> values) {
  if (values.size() != columns_) throw Error("CSV row width does not match the header");
  bool first = true;
  for (double v : values) {
    if (!first) text_ += ',';
    text_ += format_number(v);
    first = false;
  }
  text_ += '\n';
  return *this;
}

CsvWriter& CsvWriter::cells(const std::vector<std::string>& values) {
  if (values.size() != columns_) throw Error("CSV row width does not match the header");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) text_ += ',';
    text_ += values[i];
  }
  text_ += '\n';
  return *this;
}

} // namespace gordon::cli
