#include "pvol/pgm.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <string>

namespace pvol {
namespace {

// PNM token scanner: skips whitespace and '#' comments between header fields.
struct HeaderScanner {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;

  void skip_separators() {
    while (pos < bytes.size()) {
      const char c = static_cast<char>(bytes[pos]);
      if (c == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
      } else {
        break;
      }
    }
  }

  long next_int() {
    skip_separators();
    if (pos >= bytes.size() ||
        !std::isdigit(static_cast<unsigned char>(bytes[pos])))
      throw FormatError("PGM header: expected an integer field");
    long value = 0;
    while (pos < bytes.size() &&
           std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
      value = value * 10 + (bytes[pos] - '0');
      if (value > std::numeric_limits<int>::max())
        throw FormatError("PGM header: field out of range");
      ++pos;
    }
    return value;
  }
};

}  // namespace

FrameMask decode_mask(std::span<const std::uint8_t> bytes,
                      PixelSpacing spacing) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
    throw FormatError("not a P5 PGM (bad magic)");

  HeaderScanner scan{bytes, 2};
  const long width = scan.next_int();
  const long height = scan.next_int();
  const long maxval = scan.next_int();
  if (width < 1 || height < 1)
    throw FormatError("PGM header: non-positive dimensions");
  if (maxval != 255) throw FormatError("PGM header: maxval must be 255");
  if (scan.pos >= bytes.size() ||
      !std::isspace(static_cast<unsigned char>(bytes[scan.pos])))
    throw FormatError("PGM header: missing separator before payload");
  ++scan.pos;  // single whitespace byte, then raw payload

  const std::size_t expected = static_cast<std::size_t>(width) * height;
  if (bytes.size() - scan.pos < expected)
    throw FormatError("PGM payload truncated: expected " +
                      std::to_string(expected) + " bytes, got " +
                      std::to_string(bytes.size() - scan.pos));

  std::vector<std::uint8_t> pixels(expected);
  for (std::size_t i = 0; i < expected; ++i)
    pixels[i] = bytes[scan.pos + i] > 127 ? 1 : 0;
  return FrameMask(static_cast<int>(width), static_cast<int>(height), spacing,
                   std::move(pixels));
}

std::vector<std::uint8_t> encode_mask(const FrameMask& mask) {
  const std::string header = "P5\n" + std::to_string(mask.width()) + " " +
                             std::to_string(mask.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + mask.size());
  for (const std::uint8_t p : mask.pixels()) out.push_back(p ? 255 : 0);
  return out;
}

FrameMask read_mask_file(const std::filesystem::path& path,
                         PixelSpacing spacing) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open mask file: " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return decode_mask(bytes, spacing);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_mask_file(const std::filesystem::path& path,
                     const FrameMask& mask) {
  const auto bytes = encode_mask(mask);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write mask file: " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ParseError("short write: " + path.string());
}

}  // namespace pvol
