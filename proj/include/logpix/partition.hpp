#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "logpix/image.hpp"
#include "logpix/reduce.hpp"

// Fuzzy partition of a rectangular support into (m+1) x (n+1) Bernstein
// windows. Membership degrees are gamma-sharpened, normalized Bernstein
// weights; they sum to one at every point and pin to the corner window
// at each support corner. A crisp equal-tile partition is provided as
// the classical baseline.

namespace logpix {

struct WindowId {
  int i = 0;
  int j = 0;
};

namespace detail {

inline double binomial(int n, int k) {
  double c = 1.0;
  for (int t = 0; t < k; ++t) c = c * static_cast<double>(n - t) / static_cast<double>(t + 1);
  return c;
}

// All m+1 degree-m Bernstein basis values at t in [0,1].
inline std::vector<double> bernstein_basis(int m, double t) {
  std::vector<double> out(static_cast<std::size_t>(m) + 1);
  const double u = 1.0 - t;
  for (int i = 0; i <= m; ++i)
    out[static_cast<std::size_t>(i)] = binomial(m, i) * std::pow(t, i) * std::pow(u, m - i);
  return out;
}

// In-place w_k = p_k^gamma / sum_l p_l^gamma. Powers are taken as
// shifted exponentials so a large gamma cannot underflow every term at
// once; p = 0 is short-circuited to 0.
inline void gamma_normalize(std::vector<double>& p, double gamma) {
  if (gamma == 1.0) {
    double sum = 0.0;
    for (double v : p) sum += v;
    for (double& v : p) v /= sum;
    return;
  }
  double pmax = 0.0;
  for (double v : p) pmax = std::max(pmax, v);
  const double logmax = std::log(pmax);
  double sum = 0.0;
  for (double& v : p) {
    v = v > 0.0 ? std::exp(gamma * (std::log(v) - logmax)) : 0.0;
    sum += v;
  }
  for (double& v : p) v /= sum;
}

}  // namespace detail

// Rasterized membership degrees at the pixel centers of a width x height
// grid. Both Bernstein memberships (for any gamma) and crisp tiles
// factor per axis, so the field stores one table per axis and evaluates
// w_ij(col,row) = wx[i][col] * wy[j][row].
class MembershipField {
 public:
  int width() const { return width_; }
  int height() const { return height_; }
  int m() const { return m_; }
  int n() const { return n_; }
  int window_count() const { return (m_ + 1) * (n_ + 1); }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  double at(WindowId id, int col, int row) const {
    return wx_[static_cast<std::size_t>(id.i) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(col)] *
           wy_[static_cast<std::size_t>(id.j) * static_cast<std::size_t>(height_) +
               static_cast<std::size_t>(row)];
  }

  // Row-major plane of one window's memberships.
  void fill_plane(WindowId id, std::vector<double>& out) const {
    if (id.i < 0 || id.i > m_ || id.j < 0 || id.j > n_)
      throw std::out_of_range("MembershipField: window index outside the grid");
    out.resize(pixel_count());
    const double* ux = &wx_[static_cast<std::size_t>(id.i) * static_cast<std::size_t>(width_)];
    const double* uy = &wy_[static_cast<std::size_t>(id.j) * static_cast<std::size_t>(height_)];
    std::size_t k = 0;
    for (int row = 0; row < height_; ++row)
      for (int col = 0; col < width_; ++col) out[k++] = uy[row] * ux[col];
  }

  std::vector<double> plane(WindowId id) const {
    std::vector<double> out;
    fill_plane(id, out);
    return out;
  }

  // All (m+1)(n+1) planes, windows ordered row-major in (j, i).
  std::vector<std::vector<double>> planes() const {
    std::vector<std::vector<double>> out;
    out.reserve(static_cast<std::size_t>(window_count()));
    for (int j = 0; j <= n_; ++j)
      for (int i = 0; i <= m_; ++i) out.push_back(plane({i, j}));
    return out;
  }

  // card(W_ij) = sum over the support of w_ij
  double cardinality(WindowId id) const {
    const std::vector<double> w = plane(id);
    return detail::pairwise_sum(0, w.size(), [&](std::size_t k) { return w[k]; });
  }

 private:
  friend class FuzzyPartition;
  MembershipField(int width, int height, int m, int n)
      : width_(width), height_(height), m_(m), n_(n),
        wx_(static_cast<std::size_t>(m + 1) * static_cast<std::size_t>(width)),
        wy_(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(height)) {}

  int width_, height_, m_, n_;
  std::vector<double> wx_, wy_;
};

class FuzzyPartition {
 public:
  // Window grid is (m+1) x (n+1); gamma > 0 tunes the sharpness (1 keeps
  // the raw Bernstein weights, large values approach a crisp tiling).
  FuzzyPartition(const SupportRect& support, int m, int n, double gamma = 1.0)
      : support_(support), m_(m), n_(n), gamma_(gamma) {
    if (!support.valid())
      throw std::invalid_argument("FuzzyPartition: degenerate support rectangle");
    if (m < 0 || n < 0)
      throw std::invalid_argument("FuzzyPartition: window indices need m,n >= 0");
    if (!(gamma > 0.0))
      throw std::invalid_argument("FuzzyPartition: gamma must be positive");
  }

  const SupportRect& support() const { return support_; }
  int m() const { return m_; }
  int n() const { return n_; }
  double gamma() const { return gamma_; }
  int window_count() const { return (m_ + 1) * (n_ + 1); }

  // Raw 2-D Bernstein weight p_ij at a point of the support.
  double bernstein_weight(WindowId id, double x, double y) const {
    require_window(id);
    require_inside(x, y);
    const std::vector<double> bx = detail::bernstein_basis(m_, normal_x(x));
    const std::vector<double> by = detail::bernstein_basis(n_, normal_y(y));
    return bx[static_cast<std::size_t>(id.i)] * by[static_cast<std::size_t>(id.j)];
  }

  // Membership degree w_ij: gamma-th powers of the Bernstein weights,
  // normalized over all windows of the partition.
  double membership(WindowId id, double x, double y) const {
    require_window(id);
    require_inside(x, y);
    const std::vector<double> bx = detail::bernstein_basis(m_, normal_x(x));
    const std::vector<double> by = detail::bernstein_basis(n_, normal_y(y));
    std::vector<double> p(static_cast<std::size_t>(window_count()));
    std::size_t k = 0;
    for (int j = 0; j <= n_; ++j)
      for (int i = 0; i <= m_; ++i)
        p[k++] = bx[static_cast<std::size_t>(i)] * by[static_cast<std::size_t>(j)];
    detail::gamma_normalize(p, gamma_);
    return p[static_cast<std::size_t>(id.j) * static_cast<std::size_t>(m_ + 1) +
             static_cast<std::size_t>(id.i)];
  }

  // Memberships at the pixel centers of a width x height raster.
  MembershipField rasterize(int width, int height) const {
    check_raster(width, height);
    MembershipField f(width, height, m_, n_);
    fill_axis(f.wx_, width, m_);
    fill_axis(f.wy_, height, n_);
    return f;
  }

  // Indicator field of the classical partition into equal rectangular
  // tiles; exactly one window is 1 at each pixel.
  MembershipField rasterize_crisp(int width, int height) const {
    check_raster(width, height);
    MembershipField f(width, height, m_, n_);
    fill_axis_crisp(f.wx_, width, m_);
    fill_axis_crisp(f.wy_, height, n_);
    return f;
  }

 private:
  double normal_x(double x) const { return (x - support_.x0) / support_.width(); }
  double normal_y(double y) const { return (y - support_.y0) / support_.height(); }

  void require_window(WindowId id) const {
    if (id.i < 0 || id.i > m_ || id.j < 0 || id.j > n_)
      throw std::out_of_range("FuzzyPartition: window index outside the grid");
  }
  void require_inside(double x, double y) const {
    if (!support_.contains(x, y))
      throw std::domain_error("FuzzyPartition: point outside the support");
  }
  static void check_raster(int width, int height) {
    if (width < 1 || height < 1)
      throw std::invalid_argument("FuzzyPartition: raster dimensions must be positive");
  }

  void fill_axis(std::vector<double>& table, int extent, int degree) const {
    std::vector<double> basis;
    for (int c = 0; c < extent; ++c) {
      const double t = (c + 0.5) / static_cast<double>(extent);
      basis = detail::bernstein_basis(degree, t);
      detail::gamma_normalize(basis, gamma_);
      for (int i = 0; i <= degree; ++i)
        table[static_cast<std::size_t>(i) * static_cast<std::size_t>(extent) +
              static_cast<std::size_t>(c)] = basis[static_cast<std::size_t>(i)];
    }
  }

  void fill_axis_crisp(std::vector<double>& table, int extent, int degree) const {
    for (int c = 0; c < extent; ++c) {
      const double t = (c + 0.5) / static_cast<double>(extent);
      const int tile = std::min(degree, static_cast<int>(t * (degree + 1)));
      for (int i = 0; i <= degree; ++i)
        table[static_cast<std::size_t>(i) * static_cast<std::size_t>(extent) +
              static_cast<std::size_t>(c)] = (i == tile) ? 1.0 : 0.0;
    }
  }

  SupportRect support_;
  int m_, n_;
  double gamma_;
};

// Free-function spellings used by the pipelines and the CLI.
inline std::vector<std::vector<double>> membership_field(const FuzzyPartition& part,
                                                         int width, int height) {
  return part.rasterize(width, height).planes();
}

inline std::vector<std::vector<double>> crisp_membership(const FuzzyPartition& part,
                                                         int width, int height) {
  return part.rasterize_crisp(width, height).planes();
}

inline double fuzzy_cardinality(WindowId id, const MembershipField& field) {
  return field.cardinality(id);
}

}  // namespace logpix
