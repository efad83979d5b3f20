#pragma once

#include "isee/types.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace isee::io {

struct CsvTable {
  Matrix values;
  std::vector<std::string> header;  // empty when the file has no header row
};

/// Reads a numeric CSV. A first row containing any non-numeric field is
/// taken as a header. Throws InvalidInput with the row/column of malformed
/// or non-finite fields and IoError when the file cannot be read.
CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(const std::string& text, const std::string& source = "<memory>");

void write_csv(const std::filesystem::path& path, const Matrix& values,
               const std::vector<std::string>& header = {});

/// One value per line (or a single column/row CSV).
Vector read_vector(const std::filesystem::path& path);
void write_vector(const std::filesystem::path& path, const Vector& values,
                  const std::string& header = {});

/// Sparse symmetric triplets: a "p=<p>" line, then "i,j,value" lines with
/// 1-based i <= j for every nonzero upper-triangle entry.
void write_triplets(const std::filesystem::path& path, const Matrix& symmetric);
std::string format_triplets(const Matrix& symmetric);
Matrix read_triplets(const std::filesystem::path& path);
Matrix parse_triplets(const std::string& text, const std::string& source = "<memory>");

/// Shortest decimal form that reads back to the same double.
std::string format_double(double value);

/// FNV-1a 64-bit hash of a file's bytes, as 16 hex digits.
std::string file_checksum(const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace isee::io
