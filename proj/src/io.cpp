#include "isee/io.hpp"

#include "isee/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <system_error>

namespace isee::io {
namespace {

std::string trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (const char c : line) {
    if (c == ',') {
      fields.push_back(trim(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(trim(current));
  return fields;
}

bool parse_number(const std::string& field, double& out) {
  if (field.empty()) return false;
  const char* begin = field.data();
  const char* end = begin + field.size();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw NumericalFailure("cannot format number");
  return std::string(buf, ptr);
}

CsvTable parse_csv(const std::string& text, const std::string& source) {
  CsvTable table;
  std::vector<std::vector<double>> rows;
  size_t width = 0;
  size_t line_no = 0;
  for (const auto& raw : lines_of(text)) {
    ++line_no;
    if (trim(raw).empty()) continue;
    const auto fields = split_fields(raw);
    std::vector<double> row(fields.size());
    bool numeric = true;
    for (size_t c = 0; c < fields.size(); ++c) {
      if (!parse_number(fields[c], row[c])) {
        numeric = false;
        break;
      }
    }
    if (!numeric && rows.empty() && table.header.empty()) {
      table.header = fields;
      width = fields.size();
      continue;
    }
    if (width == 0) width = fields.size();
    if (fields.size() != width) {
      throw InvalidInput(source + ": row " + std::to_string(line_no) + " has " +
                         std::to_string(fields.size()) + " fields, expected " +
                         std::to_string(width));
    }
    for (size_t c = 0; c < fields.size(); ++c) {
      if (!parse_number(fields[c], row[c])) {
        throw InvalidInput(source + ": row " + std::to_string(line_no) +
                           ", column " + std::to_string(c + 1) +
                           ": malformed number '" + fields[c] + "'");
      }
      if (!std::isfinite(row[c])) {
        throw InvalidInput(source + ": row " + std::to_string(line_no) +
                           ", column " + std::to_string(c + 1) +
                           ": non-finite value");
      }
    }
    rows.push_back(std::move(row));
  }
  table.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(width));
  for (size_t r = 0; r < rows.size(); ++r) {
    for (size_t c = 0; c < width; ++c) {
      table.values(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
    }
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  return parse_csv(read_text(path), path.string());
}

void write_csv(const std::filesystem::path& path, const Matrix& values,
               const std::vector<std::string>& header) {
  std::string out;
  if (!header.empty()) {
    for (size_t c = 0; c < header.size(); ++c) {
      if (c) out += ',';
      out += header[c];
    }
    out += '\n';
  }
  for (Index r = 0; r < values.rows(); ++r) {
    for (Index c = 0; c < values.cols(); ++c) {
      if (c) out += ',';
      out += format_double(values(r, c));
    }
    out += '\n';
  }
  write_text(path, out);
}

Vector read_vector(const std::filesystem::path& path) {
  const auto table = read_csv(path);
  if (table.values.cols() == 1) return table.values.col(0);
  if (table.values.rows() == 1) return table.values.row(0).transpose();
  throw InvalidInput(path.string() + ": expected a single row or column of values");
}

void write_vector(const std::filesystem::path& path, const Vector& values,
                  const std::string& header) {
  write_csv(path, values, header.empty() ? std::vector<std::string>{}
                                         : std::vector<std::string>{header});
}

std::string format_triplets(const Matrix& symmetric) {
  if (symmetric.rows() != symmetric.cols()) throw InvalidInput("triplets need a square matrix");
  std::string out = "p=" + std::to_string(symmetric.rows()) + "\n";
  for (Index i = 0; i < symmetric.rows(); ++i) {
    for (Index j = i; j < symmetric.cols(); ++j) {
      const double v = symmetric(i, j);
      if (v == 0.0) continue;
      out += std::to_string(i + 1);
      out += ',';
      out += std::to_string(j + 1);
      out += ',';
      out += format_double(v);
      out += '\n';
    }
  }
  return out;
}

void write_triplets(const std::filesystem::path& path, const Matrix& symmetric) {
  write_text(path, format_triplets(symmetric));
}

Matrix parse_triplets(const std::string& text, const std::string& source) {
  const auto lines = lines_of(text);
  size_t line_no = 0;
  Index p = -1;
  Matrix out;
  for (const auto& raw : lines) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    if (p < 0) {
      double value = 0;
      if (line.rfind("p=", 0) != 0 || !parse_number(line.substr(2), value) ||
          value < 1 || value != std::floor(value)) {
        throw InvalidInput(source + ": first line must be 'p=<nodes>'");
      }
      p = static_cast<Index>(value);
      out = Matrix::Zero(p, p);
      continue;
    }
    const auto fields = split_fields(line);
    double i = 0, j = 0, v = 0;
    if (fields.size() != 3 || !parse_number(fields[0], i) ||
        !parse_number(fields[1], j) || !parse_number(fields[2], v)) {
      throw InvalidInput(source + ": row " + std::to_string(line_no) +
                         ": expected 'i,j,value'");
    }
    if (i < 1 || j < i || j > static_cast<double>(p) || i != std::floor(i) ||
        j != std::floor(j)) {
      throw InvalidInput(source + ": row " + std::to_string(line_no) +
                         ": indices must satisfy 1 <= i <= j <= p");
    }
    if (!std::isfinite(v)) {
      throw InvalidInput(source + ": row " + std::to_string(line_no) + ": non-finite value");
    }
    const auto r = static_cast<Index>(i) - 1;
    const auto c = static_cast<Index>(j) - 1;
    out(r, c) = v;
    out(c, r) = v;
  }
  if (p < 0) throw InvalidInput(source + ": missing 'p=<nodes>' header");
  return out;
}

Matrix read_triplets(const std::filesystem::path& path) {
  return parse_triplets(read_text(path), path.string());
}

std::string file_checksum(const std::filesystem::path& path) {
  const std::string bytes = read_text(path);
  std::uint64_t hash = 1469598103934665603ULL;
  for (const unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << hash;
  return out.str();
}

}  // namespace isee::io
