#include "sigscan/pnm.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include "sigscan/errors.hpp"

namespace sigscan {

namespace {

// Skips whitespace and '#' comments between header tokens.
void skip_separators(std::istream& in) {
  while (true) {
    const int c = in.peek();
    if (c == '#') {
      in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
    } else if (c != EOF && std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

long read_header_int(std::istream& in, const char* what) {
  skip_separators(in);
  long value = 0;
  if (!(in >> value) || value < 0) {
    throw FormatError(std::string("bad PNM header: ") + what);
  }
  return value;
}

}  // namespace

BinaryImage read_pnm(std::istream& in, std::optional<int> gray_threshold) {
  char magic[2] = {0, 0};
  if (!in.read(magic, 2) || magic[0] != 'P' || magic[1] < '1' || magic[1] > '6') {
    throw FormatError("not a PNM file");
  }
  const char kind = magic[1];
  if (kind == '3' || kind == '6') {
    throw FormatError("color maps are not accepted as binary input");
  }
  const bool gray = kind == '2' || kind == '5';
  if (gray && !gray_threshold) {
    throw FormatError("gray map input requires a threshold");
  }
  const long cols = read_header_int(in, "width");
  const long rows = read_header_int(in, "height");
  if (cols < 1 || rows < 1 || cols > (1 << 16) || rows > (1 << 16)) {
    throw FormatError("PNM dimensions out of range");
  }
  long maxval = 1;
  if (gray) {
    maxval = read_header_int(in, "maxval");
    if (maxval < 1 || maxval > 65535) {
      throw FormatError("PNM maxval out of range");
    }
  }
  BinaryImage image(static_cast<int>(cols), static_cast<int>(rows));

  if (kind == '1' || kind == '2') {
    for (int y = 1; y <= rows; ++y) {
      for (int x = 1; x <= cols; ++x) {
        skip_separators(in);
        long v = 0;
        if (kind == '1') {
          // Plain bitmaps may pack digits without separators.
          const int c = in.get();
          if (c != '0' && c != '1') {
            throw FormatError("bad P1 pixel data");
          }
          v = c - '0';
          image.set(x, y, v == 1);
        } else {
          if (!(in >> v) || v > maxval) {
            throw FormatError("bad P2 pixel data");
          }
          image.set(x, y, v >= *gray_threshold);
        }
      }
    }
    return image;
  }

  // Raw formats: exactly one whitespace byte after the header.
  if (!std::isspace(in.get())) {
    throw FormatError("bad PNM header terminator");
  }
  if (kind == '4') {
    const std::size_t row_bytes = static_cast<std::size_t>((cols + 7) / 8);
    std::vector<char> row(row_bytes);
    for (int y = 1; y <= rows; ++y) {
      if (!in.read(row.data(), static_cast<std::streamsize>(row_bytes))) {
        throw FormatError("truncated P4 data");
      }
      for (int x = 1; x <= cols; ++x) {
        const auto byte = static_cast<unsigned char>(row[static_cast<std::size_t>((x - 1) / 8)]);
        image.set(x, y, (byte >> (7 - (x - 1) % 8)) & 1u);
      }
    }
    return image;
  }

  const int bytes = maxval > 255 ? 2 : 1;
  for (int y = 1; y <= rows; ++y) {
    for (int x = 1; x <= cols; ++x) {
      long v = 0;
      for (int b = 0; b < bytes; ++b) {
        const int c = in.get();
        if (c == EOF) {
          throw FormatError("truncated P5 data");
        }
        v = (v << 8) | c;
      }
      image.set(x, y, v >= *gray_threshold);
    }
  }
  return image;
}

BinaryImage read_pnm(const std::filesystem::path& path, std::optional<int> gray_threshold) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FormatError("cannot open " + path.string());
  }
  return read_pnm(in, gray_threshold);
}

void write_pbm(std::ostream& out, const BinaryImage& image, PbmEncoding encoding,
               const std::vector<std::string>& comments) {
  out << (encoding == PbmEncoding::Plain ? "P1\n" : "P4\n");
  for (const auto& c : comments) {
    out << "# " << c << '\n';
  }
  out << image.cols() << ' ' << image.rows() << '\n';
  if (encoding == PbmEncoding::Plain) {
    for (int y = 1; y <= image.rows(); ++y) {
      for (int x = 1; x <= image.cols(); ++x) {
        // Plain PBM lines should stay under 70 characters.
        out << (image.get(x, y) ? '1' : '0') << ((x % 35 == 0 || x == image.cols()) ? '\n' : ' ');
      }
    }
    return;
  }
  const std::size_t row_bytes = static_cast<std::size_t>((image.cols() + 7) / 8);
  std::vector<char> row(row_bytes);
  for (int y = 1; y <= image.rows(); ++y) {
    std::fill(row.begin(), row.end(), 0);
    for (int x = 1; x <= image.cols(); ++x) {
      if (image.get(x, y)) {
        row[static_cast<std::size_t>((x - 1) / 8)] |= static_cast<char>(1u << (7 - (x - 1) % 8));
      }
    }
    out.write(row.data(), static_cast<std::streamsize>(row_bytes));
  }
}

void write_pbm(const std::filesystem::path& path, const BinaryImage& image, PbmEncoding encoding,
               const std::vector<std::string>& comments) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw FormatError("cannot write " + path.string());
  }
  write_pbm(out, image, encoding, comments);
}

void write_ppm(std::ostream& out, const RgbImage& image) {
  out << "P6\n" << image.cols << ' ' << image.rows << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.rgb.data()), static_cast<std::streamsize>(image.rgb.size()));
}

void write_ppm(const std::filesystem::path& path, const RgbImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw FormatError("cannot write " + path.string());
  }
  write_ppm(out, image);
}

}  // namespace sigscan
