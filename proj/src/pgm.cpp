#include "deblur/pgm.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

namespace deblur {

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  // Skips whitespace and '#' comments, then reads one unsigned decimal field.
  long next_number(const char* field) {
    skip_blanks();
    if (pos_ >= bytes_.size() || !std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      throw IoError(std::string("malformed PGM header: expected ") + field);
    }
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > std::numeric_limits<int>::max()) {
        throw IoError(std::string("malformed PGM header: ") + field + " out of range");
      }
      ++pos_;
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw IoError("malformed PGM header: missing whitespace before raster");
    }
    return pos_ + 1;
  }

 private:
  void skip_blanks() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  std::string_view bytes_;
  std::size_t pos_ = 2;
};

}  // namespace

Image decode_pgm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') throw IoError("unsupported format: not a PNM file");
  switch (bytes[1]) {
    case '5':
      break;
    case '3':
    case '6':
      throw IoError("non-grayscale content: PPM color images are not supported");
    case '2':
      throw IoError("unsupported format: ASCII PGM (P2); only binary P5 is supported");
    default:
      throw IoError(std::string("unsupported format: PNM variant P") + bytes[1]);
  }

  HeaderReader header(bytes);
  const long width = header.next_number("width");
  const long height = header.next_number("height");
  const long maxval = header.next_number("maxval");
  if (width < 1 || height < 1) throw IoError("malformed PGM header: zero dimension");
  if (maxval != 255) {
    throw IoError("unsupported PGM maxval " + std::to_string(maxval) + " (only 255)");
  }
  const std::size_t offset = header.raster_offset();
  const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() - offset < count) {
    throw IoError("truncated PGM raster: expected " + std::to_string(count) + " bytes, found " +
                  std::to_string(bytes.size() - offset));
  }

  Grid g(height, width);
  for (std::size_t i = 0; i < count; ++i) {
    g.data()[i] = static_cast<double>(static_cast<unsigned char>(bytes[offset + i]));
  }
  return Image(std::move(g));
}

std::string encode_pgm(const Image& img) {
  const Image q = quantize(img);
  std::string out = "P5\n" + std::to_string(img.cols()) + " " + std::to_string(img.rows()) +
                    "\n255\n";
  const std::size_t header = out.size();
  out.resize(header + static_cast<std::size_t>(img.size()));
  const auto data = q.data();
  for (std::size_t i = 0; i < data.size(); ++i) {
    out[header + i] = static_cast<char>(static_cast<unsigned char>(data[i]));
  }
  return out;
}

Image load_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  try {
    return decode_pgm(bytes);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void save_image(const Image& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  const std::string bytes = encode_pgm(img);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace deblur
