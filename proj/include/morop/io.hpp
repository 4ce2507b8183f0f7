#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "morop/core.hpp"

namespace morop::io {

/// Shortest representation with 17 significant digits (lossless double
/// round-trip).
std::string format_double(double v);

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 if absent
};

/// Comma-separated, first non-comment line is the header, '#' starts a
/// comment line, fields are trimmed. Throws Error("schema-mismatch") on
/// ragged rows and Error("config-error") if unreadable.
Csv read_csv(const std::string& path);

void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Archive interchange: required columns id, x1..xn (extra columns such as
/// objective values are ignored; DVs are re-evaluated downstream). Throws
/// Error("empty-archive") when no data rows and Error("schema-mismatch")
/// when columns are missing or non-numeric.
std::vector<std::pair<std::string, DesignVector>> read_archive_csv(
    const std::string& path, std::size_t n);

}  // namespace morop::io
