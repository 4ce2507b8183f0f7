#include "morop/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>

#include "morop/errors.hpp"

namespace morop::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int Csv::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      out.push_back(trim(field));
      field.clear();
    } else {
      field += c;
    }
  }
  out.push_back(trim(field));
  return out;
}

}  // namespace

Csv read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("config-error", "cannot open file: " + path);
  Csv csv;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split_fields(line);
    if (csv.header.empty()) {
      csv.header = std::move(fields);
    } else {
      if (fields.size() != csv.header.size())
        throw Error("schema-mismatch", "ragged CSV row in " + path);
      csv.rows.push_back(std::move(fields));
    }
  }
  if (csv.header.empty())
    throw Error("schema-mismatch", "CSV has no header: " + path);
  return csv;
}

void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw Error("config-error", "cannot write file: " + path);
  auto write_row = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out << ',';
      out << fields[i];
    }
    out << '\n';
  };
  write_row(header);
  for (const auto& row : rows) write_row(row);
}

std::vector<std::pair<std::string, DesignVector>> read_archive_csv(
    const std::string& path, std::size_t n) {
  Csv csv = read_csv(path);
  int id_col = csv.column("id");
  if (id_col < 0)
    throw Error("schema-mismatch", "archive CSV is missing the id column");
  std::vector<int> x_cols(n);
  for (std::size_t l = 0; l < n; ++l) {
    x_cols[l] = csv.column("x" + std::to_string(l + 1));
    if (x_cols[l] < 0)
      throw Error("schema-mismatch",
                  "archive CSV is missing column x" + std::to_string(l + 1));
  }
  if (csv.rows.empty())
    throw Error("empty-archive", "archive CSV has no data rows: " + path);

  std::vector<std::pair<std::string, DesignVector>> out;
  out.reserve(csv.rows.size());
  for (const auto& row : csv.rows) {
    DesignVector x(n);
    for (std::size_t l = 0; l < n; ++l) {
      try {
        std::size_t used = 0;
        x[l] = std::stod(row[x_cols[l]], &used);
        if (used != row[x_cols[l]].size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw Error("schema-mismatch",
                    "non-numeric DV value in archive CSV: " + row[x_cols[l]]);
      }
    }
    out.emplace_back(row[id_col], std::move(x));
  }
  return out;
}

}  // namespace morop::io
