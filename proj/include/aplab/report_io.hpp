#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "aplab/complexity.hpp"

namespace aplab {

/// Exact CSV header of a complexity report.
const std::string& report_header();

/// One CSV line (no newline) for a row. Reals use %.17g.
std::string format_row(const ComplexityRow& row);

void write_report(std::ostream& os, const std::vector<ComplexityRow>& rows);

/// Header plus one line per row, written to a temporary sibling and renamed
/// into place. Throws std::invalid_argument for empty rows and
/// IoError naming the path when the file cannot be written.
void emit_report(const std::vector<ComplexityRow>& rows,
                 const std::filesystem::path& destination);

/// Writes `contents` to `destination` via write-then-rename.
void write_file_atomic(const std::filesystem::path& destination,
                       const std::string& contents);

}  // namespace aplab
