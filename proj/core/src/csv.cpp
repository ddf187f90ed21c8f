#include "dvpr/csv.hpp"

#include <charconv>
#include <cmath>

#include "dvpr/errors.hpp"

namespace dvpr {

namespace {

std::string to_chars_string(double value, int precision) {
  // inf/nan never belong in a report; callers emit them deliberately (the
  // confusion matrix writes "inf" cells itself).
  if (!std::isfinite(value)) throw DataError("cannot format non-finite real");
  char buf[64];
  const auto [ptr, ec] =
      precision < 0
          ? std::to_chars(buf, buf + sizeof(buf), value)
          : std::to_chars(buf, buf + sizeof(buf), value,
                          std::chars_format::general, precision);
  if (ec != std::errc()) throw Error("real formatting failed");
  return std::string(buf, ptr);
}

}  // namespace

std::string format_real(double value) { return to_chars_string(value, 9); }

std::string format_real_roundtrip(double value) { return to_chars_string(value, -1); }

}  // namespace dvpr
