#pragma once

#include <string>

namespace dvpr {

// Locale-independent real formatting for report files. Nine significant
// digits in general (fixed/scientific) form; byte-stable across platforms
// for equal inputs.
std::string format_real(double value);

// Shortest digit string that round-trips to the same double.
std::string format_real_roundtrip(double value);

}  // namespace dvpr
