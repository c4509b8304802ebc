#pragma once

#include <png.h>

#include <algorithm>
#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "logpix/image.hpp"

// 8-bit image storage: PNG (gray/RGB, via libpng) and binary PGM/PPM
// (P5/P6, maxval 255), plus the bidirectional mapping between storage
// levels and the open interval (0,1).

namespace logpix {

// Half-level offset keeps all 256 levels strictly inside (0,1); n/255
// would hit both endpoints where phi diverges.
inline UnitValue dequantize(int n) {
  if (n < 0 || n > 255)
    throw std::invalid_argument("dequantize: level outside 0..255");
  return UnitValue((n + 0.5) / 256.0);
}

// floor(256 v), clamped; exact inverse of dequantize on 0..255.
inline int quantize(UnitValue v) {
  const int n = static_cast<int>(256.0 * v.value());
  return std::clamp(n, 0, 255);
}

namespace detail {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

inline FilePtr open_file(const std::string& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw std::runtime_error(path + ": cannot open file");
  return f;
}

// Next integer token of a PNM header; skips whitespace and # comments.
inline int pnm_next_int(std::FILE* f, const std::string& path) {
  int c = std::fgetc(f);
  while (c != EOF && (std::isspace(c) || c == '#')) {
    if (c == '#')
      while (c != EOF && c != '\n') c = std::fgetc(f);
    c = std::fgetc(f);
  }
  if (c == EOF || !std::isdigit(c))
    throw std::runtime_error(path + ": malformed PNM header");
  long value = 0;
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + (c - '0');
    if (value > 1 << 30) throw std::runtime_error(path + ": malformed PNM header");
    c = std::fgetc(f);
  }
  if (c == EOF) throw std::runtime_error(path + ": truncated PNM header");
  // c is the single whitespace byte terminating the token
  if (!std::isspace(c)) throw std::runtime_error(path + ": malformed PNM header");
  return static_cast<int>(value);
}

inline RasterImage image_from_bytes(const std::vector<unsigned char>& bytes,
                                    int width, int height, int channels) {
  RasterImage img(width, height, channels);
  const std::size_t npx = img.pixel_count();
  for (int p = 0; p < channels; ++p) {
    auto plane = img.plane(p);
    for (std::size_t k = 0; k < npx; ++k)
      plane[k] = dequantize(bytes[k * static_cast<std::size_t>(channels) +
                                  static_cast<std::size_t>(p)]);
  }
  return img;
}

inline RasterImage load_pnm(std::FILE* f, const std::string& path) {
  const int magic0 = std::fgetc(f);
  const int magic1 = std::fgetc(f);
  if (magic0 != 'P' || (magic1 != '5' && magic1 != '6'))
    throw std::runtime_error(path + ": not a binary PGM/PPM file");
  const int channels = magic1 == '5' ? 1 : 3;
  const int width = pnm_next_int(f, path);
  const int height = pnm_next_int(f, path);
  const int maxval = pnm_next_int(f, path);
  if (width < 1 || height < 1)
    throw std::runtime_error(path + ": malformed PNM dimensions");
  if (maxval != 255)
    throw std::runtime_error(path + ": unsupported PNM depth (maxval must be 255)");
  std::vector<unsigned char> bytes(static_cast<std::size_t>(width) *
                                   static_cast<std::size_t>(height) *
                                   static_cast<std::size_t>(channels));
  if (std::fread(bytes.data(), 1, bytes.size(), f) != bytes.size())
    throw std::runtime_error(path + ": truncated PNM raster");
  return image_from_bytes(bytes, width, height, channels);
}

inline void save_pnm(const RasterImage& img, const std::string& path) {
  detail::FilePtr f = open_file(path, "wb");
  const int channels = img.plane_count();
  std::string header = channels == 1 ? "P5" : "P6";
  header += "\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) +
            "\n255\n";
  std::vector<unsigned char> bytes(img.pixel_count() * static_cast<std::size_t>(channels));
  for (int p = 0; p < channels; ++p) {
    auto plane = img.plane(p);
    for (std::size_t k = 0; k < img.pixel_count(); ++k)
      bytes[k * static_cast<std::size_t>(channels) + static_cast<std::size_t>(p)] =
          static_cast<unsigned char>(quantize(plane[k]));
  }
  if (std::fwrite(header.data(), 1, header.size(), f.get()) != header.size() ||
      std::fwrite(bytes.data(), 1, bytes.size(), f.get()) != bytes.size())
    throw std::runtime_error(path + ": write failed");
}

inline RasterImage load_png(std::FILE* f, const std::string& path) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error(path + ": libpng initialization failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw std::runtime_error(path + ": libpng initialization failed");
  }

  std::vector<png_byte> data;
  std::vector<png_bytep> rows;
  std::string error;
  int width = 0, height = 0, channels = 0;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error(path + (error.empty() ? ": failed to decode PNG" : error));
  }

  png_init_io(png, f);
  png_read_info(png, info);
  const int depth = png_get_bit_depth(png, info);
  const int ctype = png_get_color_type(png, info);
  width = static_cast<int>(png_get_image_width(png, info));
  height = static_cast<int>(png_get_image_height(png, info));
  if (depth != 8) {
    error = ": unsupported PNG bit depth " + std::to_string(depth) + " (need 8)";
    longjmp(png_jmpbuf(png), 1);
  }
  if (ctype == PNG_COLOR_TYPE_GRAY) {
    channels = 1;
  } else if (ctype == PNG_COLOR_TYPE_RGB) {
    channels = 3;
  } else {
    error = ": unsupported PNG color type (need 8-bit gray or RGB)";
    longjmp(png_jmpbuf(png), 1);
  }
  png_set_interlace_handling(png);
  png_read_update_info(png, info);
  const std::size_t rowbytes = png_get_rowbytes(png, info);
  data.resize(rowbytes * static_cast<std::size_t>(height));
  rows.resize(static_cast<std::size_t>(height));
  for (int r = 0; r < height; ++r)
    rows[static_cast<std::size_t>(r)] = data.data() + rowbytes * static_cast<std::size_t>(r);
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  std::vector<unsigned char> bytes(static_cast<std::size_t>(width) *
                                   static_cast<std::size_t>(height) *
                                   static_cast<std::size_t>(channels));
  for (int r = 0; r < height; ++r)
    std::memcpy(bytes.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(width) *
                                   static_cast<std::size_t>(channels),
                data.data() + rowbytes * static_cast<std::size_t>(r),
                static_cast<std::size_t>(width) * static_cast<std::size_t>(channels));
  return image_from_bytes(bytes, width, height, channels);
}

inline void save_png(const RasterImage& img, const std::string& path) {
  detail::FilePtr f = open_file(path, "wb");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error(path + ": libpng initialization failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw std::runtime_error(path + ": libpng initialization failed");
  }

  const int channels = img.plane_count();
  std::vector<png_byte> data(img.pixel_count() * static_cast<std::size_t>(channels));
  std::vector<png_bytep> rows(static_cast<std::size_t>(img.height()));
  for (int p = 0; p < channels; ++p) {
    auto plane = img.plane(p);
    for (std::size_t k = 0; k < img.pixel_count(); ++k)
      data[k * static_cast<std::size_t>(channels) + static_cast<std::size_t>(p)] =
          static_cast<png_byte>(quantize(plane[k]));
  }
  const std::size_t rowbytes =
      static_cast<std::size_t>(img.width()) * static_cast<std::size_t>(channels);
  for (int r = 0; r < img.height(); ++r)
    rows[static_cast<std::size_t>(r)] = data.data() + rowbytes * static_cast<std::size_t>(r);

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error(path + ": failed to encode PNG");
  }
  png_init_io(png, f.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.width()),
               static_cast<png_uint_32>(img.height()), 8,
               channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, info);
  png_destroy_write_struct(&png, &info);
}

inline std::string lower_extension(const std::string& path) {
  const std::size_t dot = path.find_last_of('.');
  if (dot == std::string::npos) return {};
  std::string ext = path.substr(dot);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

}  // namespace detail

// Loads an 8-bit PNG, PGM (P5) or PPM (P6); gray files become 1-plane
// images, color files 3-plane. The format is detected from the content.
inline RasterImage load_image(const std::string& path) {
  detail::FilePtr f = detail::open_file(path, "rb");
  unsigned char sig[8] = {};
  const std::size_t got = std::fread(sig, 1, sizeof sig, f.get());
  std::rewind(f.get());
  if (got >= 8 && png_sig_cmp(sig, 0, 8) == 0) return detail::load_png(f.get(), path);
  if (got >= 2 && sig[0] == 'P' && (sig[1] == '5' || sig[1] == '6'))
    return detail::load_pnm(f.get(), path);
  throw std::runtime_error(path + ": unrecognized image format (need PNG, PGM or PPM)");
}

// Saves by extension: .png (any), .pgm (mono), .ppm (color).
inline void save_image(const RasterImage& img, const std::string& path) {
  const std::string ext = detail::lower_extension(path);
  if (ext == ".png") {
    detail::save_png(img, path);
  } else if (ext == ".pgm") {
    if (!img.mono()) throw std::runtime_error(path + ": PGM requires a 1-plane image");
    detail::save_pnm(img, path);
  } else if (ext == ".ppm") {
    if (img.mono()) throw std::runtime_error(path + ": PPM requires a 3-plane image");
    detail::save_pnm(img, path);
  } else {
    throw std::runtime_error(path + ": unsupported output format (use .png, .pgm or .ppm)");
  }
}

}  // namespace logpix
