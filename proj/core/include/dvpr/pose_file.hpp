#pragma once

#include <span>
#include <string>
#include <vector>

#include "dvpr/simulation.hpp"

namespace dvpr {

// Plain-text pose file: one pose per line as 12 whitespace-separated reals,
// the top three rows of a row-major 4x4 transform. The translation lives at
// token indices 3, 7 and 11; nothing else is used. Blank lines are skipped;
// any other token count is a FormatError, unparseable numbers are
// FormatError, non-finite values are DataError.
std::vector<Position> read_poses(const std::string& path);

// Writes positions as identity-rotation pose lines.
void write_poses(const std::string& path, std::span<const Position> positions);

}  // namespace dvpr
