#include "stratsim/kv_format.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace stratsim {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<KvEntry> parse_kv(std::string_view text) {
  std::vector<KvEntry> entries;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw FormatError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    KvEntry entry;
    entry.key = std::string(trim(line.substr(0, eq)));
    entry.line = line_no;
    if (entry.key.empty()) throw FormatError("line " + std::to_string(line_no) + ": empty key");
    if (!seen.insert(entry.key).second) {
      throw FormatError("line " + std::to_string(line_no) + ": duplicate key '" + entry.key + "'");
    }

    const std::string_view value = trim(line.substr(eq + 1));
    if (!value.empty() && value.front() == '[') {
      if (value.back() != ']') {
        throw FormatError("line " + std::to_string(line_no) + ": unterminated list");
      }
      entry.is_list = true;
      const std::string_view body = trim(value.substr(1, value.size() - 2));
      if (!body.empty()) {
        for (auto& item : split(body, ',')) {
          if (item.empty()) throw FormatError("line " + std::to_string(line_no) + ": empty list item");
          entry.values.push_back(std::move(item));
        }
      }
    } else {
      if (value.empty()) throw FormatError("line " + std::to_string(line_no) + ": missing value");
      entry.values.emplace_back(value);
    }
    entries.push_back(std::move(entry));
    if (end == text.size()) break;
  }
  return entries;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  // Write-then-rename so readers never observe a half-written file.
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("write failed for '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace stratsim
