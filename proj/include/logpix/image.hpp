#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "logpix/logcalc.hpp"

namespace logpix {

// Rectangular image support in continuous coordinates.
struct SupportRect {
  double x0 = 0.0, x1 = 1.0;
  double y0 = 0.0, y1 = 1.0;

  constexpr double width() const { return x1 - x0; }
  constexpr double height() const { return y1 - y0; }
  constexpr bool valid() const { return x0 < x1 && y0 < y1; }
  constexpr bool contains(double x, double y) const {
    return x >= x0 && x <= x1 && y >= y0 && y <= y1;
  }
};

// Planar raster over a rectangular support: one plane (mono) or three
// (RGB), row-major, every sample strictly inside (0,1).
class RasterImage {
 public:
  RasterImage(int width, int height, int plane_count)
      : width_(width), height_(height) {
    if (width < 1 || height < 1)
      throw std::invalid_argument("RasterImage: dimensions must be positive");
    if (plane_count != 1 && plane_count != 3)
      throw std::invalid_argument("RasterImage: plane count must be 1 or 3");
    planes_.assign(static_cast<std::size_t>(plane_count),
                   std::vector<UnitValue>(pixel_count()));
  }

  int width() const { return width_; }
  int height() const { return height_; }
  int plane_count() const { return static_cast<int>(planes_.size()); }
  bool mono() const { return planes_.size() == 1; }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  std::span<UnitValue> plane(int p) { return planes_.at(static_cast<std::size_t>(p)); }
  std::span<const UnitValue> plane(int p) const {
    return planes_.at(static_cast<std::size_t>(p));
  }

  std::size_t index(int col, int row) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(col);
  }
  UnitValue at(int p, int col, int row) const {
    return planes_[static_cast<std::size_t>(p)][index(col, row)];
  }
  void set(int p, int col, int row, UnitValue v) {
    planes_[static_cast<std::size_t>(p)][index(col, row)] = v;
  }

  // Support is [0,width] x [0,height]; pixel (col,row) sits at the
  // continuous point (col + 0.5, row + 0.5).
  SupportRect support() const {
    return {0.0, static_cast<double>(width_), 0.0, static_cast<double>(height_)};
  }

 private:
  int width_ = 0, height_ = 0;
  std::vector<std::vector<UnitValue>> planes_;
};

}  // namespace logpix
