#include "dvpr/descriptor_file.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include "dvpr/errors.hpp"

namespace dvpr {

namespace {

std::uint32_t read_u32_le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 |
         static_cast<std::uint32_t>(p[3]) << 24;
}

void append_u32_le(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 16) & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 24) & 0xff));
}

constexpr std::size_t kHeaderBytes = 16;

}  // namespace

DescriptorFileContents read_descriptor_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open descriptor file: " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (in.bad()) throw FormatError("read failed: " + path);

  if (bytes.size() < kHeaderBytes)
    throw TruncationError("descriptor file shorter than its header: " + path);
  if (std::memcmp(bytes.data(), "DVPR", 4) != 0)
    throw FormatError("bad descriptor file magic: " + path);
  const std::uint32_t version = read_u32_le(bytes.data() + 4);
  if (version != kDescriptorFileVersion)
    throw FormatError("unsupported descriptor file version " +
                      std::to_string(version) + ": " + path);
  const std::uint32_t count = read_u32_le(bytes.data() + 8);
  const std::uint32_t dim = read_u32_le(bytes.data() + 12);
  if (dim == 0) throw FormatError("descriptor file declares dim 0: " + path);

  const std::uint64_t expected =
      kHeaderBytes + 4ull * static_cast<std::uint64_t>(count) * dim;
  if (bytes.size() != expected)
    throw TruncationError("descriptor file length mismatch (expected " +
                          std::to_string(expected) + " bytes, got " +
                          std::to_string(bytes.size()) + "): " + path);

  DescriptorFileContents contents;
  contents.dim = dim;
  contents.descriptors.resize(count);
  const unsigned char* p = bytes.data() + kHeaderBytes;
  for (std::uint32_t i = 0; i < count; ++i) {
    Descriptor& d = contents.descriptors[i];
    d.values.resize(dim);
    for (std::uint32_t j = 0; j < dim; ++j, p += 4) {
      const float v = std::bit_cast<float>(read_u32_le(p));
      if (!std::isfinite(v))
        throw DataError("non-finite descriptor value in " + path);
      d.values[j] = static_cast<double>(v);
    }
  }
  return contents;
}

void write_descriptor_file(const std::string& path,
                           std::span<const Descriptor> descriptors,
                           std::size_t dim) {
  if (dim == 0) throw ConfigError("descriptor file dim must be nonzero");
  if (dim > std::numeric_limits<std::uint32_t>::max() ||
      descriptors.size() > std::numeric_limits<std::uint32_t>::max())
    throw ConfigError("descriptor file header fields are 32-bit");

  std::vector<unsigned char> bytes;
  bytes.reserve(kHeaderBytes + 4 * descriptors.size() * dim);
  bytes.insert(bytes.end(), {'D', 'V', 'P', 'R'});
  append_u32_le(bytes, kDescriptorFileVersion);
  append_u32_le(bytes, static_cast<std::uint32_t>(descriptors.size()));
  append_u32_le(bytes, static_cast<std::uint32_t>(dim));
  for (const Descriptor& d : descriptors) {
    if (d.dim() != dim)
      throw DimensionMismatchError("descriptor dim does not match file dim");
    for (double v : d.values) {
      const float narrowed = static_cast<float>(v);
      if (!std::isfinite(narrowed))
        throw DataError("descriptor value not representable as binary32");
      append_u32_le(bytes, std::bit_cast<std::uint32_t>(narrowed));
    }
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open output file: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw Error("write failed: " + path);
}

}  // namespace dvpr
