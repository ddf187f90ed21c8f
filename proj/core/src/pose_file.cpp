#include "dvpr/pose_file.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "dvpr/csv.hpp"
#include "dvpr/errors.hpp"

namespace dvpr {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

double parse_real(const std::string& token, std::size_t line_no) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw FormatError("pose line " + std::to_string(line_no) +
                      ": bad number '" + token + "'");
  if (!std::isfinite(value))
    throw DataError("pose line " + std::to_string(line_no) + ": non-finite value");
  return value;
}

}  // namespace

std::vector<Position> read_poses(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open pose file: " + path);

  std::vector<Position> positions;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && is_space(line[i])) ++i;
      std::size_t start = i;
      while (i < line.size() && !is_space(line[i])) ++i;
      if (i > start) tokens.push_back(line.substr(start, i - start));
    }
    if (tokens.empty()) continue;
    if (tokens.size() != 12)
      throw FormatError("pose line " + std::to_string(line_no) + ": expected 12 values, got " +
                        std::to_string(tokens.size()));
    std::array<double, 12> row{};
    for (std::size_t t = 0; t < 12; ++t) row[t] = parse_real(tokens[t], line_no);
    positions.push_back(Position{row[3], row[7], row[11]});
  }
  if (in.bad()) throw FormatError("read failed: " + path);
  return positions;
}

void write_poses(const std::string& path, std::span<const Position> positions) {
  std::ostringstream out;
  for (const Position& p : positions) {
    out << "1 0 0 " << format_real_roundtrip(p[0]) << " 0 1 0 "
        << format_real_roundtrip(p[1]) << " 0 0 1 "
        << format_real_roundtrip(p[2]) << '\n';
  }
  std::ofstream file(path, std::ios::trunc);
  if (!file) throw Error("cannot open output file: " + path);
  file << out.str();
  file.flush();
  if (!file) throw Error("write failed: " + path);
}

}  // namespace dvpr
