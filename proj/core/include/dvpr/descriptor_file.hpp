#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dvpr/descriptor.hpp"

namespace dvpr {

// Binary descriptor container:
//   bytes 0..3   magic "DVPR"
//   bytes 4..7   format version, little-endian u32, currently 1
//   bytes 8..11  descriptor count, little-endian u32
//   bytes 12..15 dimension, little-endian u32, must be nonzero
//   then count*dim little-endian IEEE-754 binary32 values, row-major.
// The file length must equal 16 + 4*count*dim exactly.
inline constexpr std::uint32_t kDescriptorFileVersion = 1;

struct DescriptorFileContents {
  std::size_t dim = 0;
  std::vector<Descriptor> descriptors;
};

// Throws FormatError on bad magic, version, or zero dim; TruncationError when
// the byte length disagrees with the header; DataError on non-finite values.
DescriptorFileContents read_descriptor_file(const std::string& path);

// dim must be nonzero and shared by every descriptor. Values are narrowed to
// binary32; values that are non-finite or overflow the narrowing are refused
// with DataError rather than silently written as inf.
void write_descriptor_file(const std::string& path,
                           std::span<const Descriptor> descriptors,
                           std::size_t dim);

}  // namespace dvpr
