#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stratsim {

// Flat "key = value" files. A value wrapped in brackets is a list:
//
//   # comment
//   weekdays = [5, 15, 25]
//   heuristic = intelligent
//
// Blank lines and text after '#' are ignored. Keys may not repeat.

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct KvEntry {
  std::string key;
  std::vector<std::string> values;
  bool is_list = false;
  int line = 0;
};

std::vector<KvEntry> parse_kv(std::string_view text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

}  // namespace stratsim
