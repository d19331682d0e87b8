#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace testutil {

struct Csv {
  std::vector<std::string> metadata;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw std::out_of_range("no column " + name);
  }
};

inline std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      csv.metadata.push_back(line);
    } else if (csv.header.empty()) {
      csv.header = split(line);
    } else {
      csv.rows.push_back(split(line));
    }
  }
  return csv;
}

inline std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  std::ostringstream s;
  s << file.rdbuf();
  return s.str();
}

/// Removes one named column from every row, keeping everything else byte-exact.
inline std::string drop_column(const std::string& text, const std::string& name) {
  const Csv csv = parse_csv(text);
  const std::size_t col = csv.column(name);
  std::ostringstream out;
  for (const auto& m : csv.metadata) out << m << '\n';
  const auto emit = [&](const std::vector<std::string>& row) {
    bool first = true;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i == col) continue;
      if (!first) out << ',';
      out << row[i];
      first = false;
    }
    out << '\n';
  };
  emit(csv.header);
  for (const auto& r : csv.rows) emit(r);
  return out.str();
}

}  // namespace testutil
