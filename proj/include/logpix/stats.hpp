#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "logpix/logcalc.hpp"
#include "logpix/reduce.hpp"

// Weighted logarithmic statistics of image planes, computed in
// phi-space: the fuzzy mean, the fuzzy variance about it, and the mean
// saturation energy of a color decomposition. All accumulations use the
// deterministic pairwise reduction in row-major order.

namespace logpix {

// Windows with smaller cardinality than this are degenerate.
inline constexpr double kMinCardinality = 1e-9;

// Fuzzy moments of one window.
struct WindowStats {
  UnitValue mu_phi;           // logarithmic mean
  double sigma_phi_sq = 0.0;  // phi-space variance
  double gamma_phi_sq = 0.0;  // mean saturation energy (0 for mono)
  double card = 0.0;          // fuzzy cardinality
};

// Moments of the uniform-distribution target the enhancement aims for.
inline const double kSigmaUniform = std::sqrt(1.0 / 12.0);

struct TargetStats {
  double mu = 0.5;
  double sigma = kSigmaUniform;  // sqrt(1/12)
};

namespace detail {

inline void require_card(double card) {
  if (!(card > kMinCardinality))
    throw std::domain_error("stats: degenerate window (cardinality not positive)");
}

inline void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("stats: plane and weight sizes differ");
}

}  // namespace detail

// Weighted average sum(w*x)/card of raw values (phi coordinates,
// saturation energies, ...).
inline double weighted_average(std::span<const double> values,
                               std::span<const double> weights, double card) {
  detail::require_same_size(values.size(), weights.size());
  detail::require_card(card);
  const double s = detail::pairwise_sum(
      0, values.size(), [&](std::size_t k) { return weights[k] * values[k]; });
  return s / card;
}

// Weighted average of (x - center)^2.
inline double weighted_sq_deviation(std::span<const double> values, double center,
                                    std::span<const double> weights, double card) {
  detail::require_same_size(values.size(), weights.size());
  detail::require_card(card);
  const double s = detail::pairwise_sum(0, values.size(), [&](std::size_t k) {
    const double d = values[k] - center;
    return weights[k] * d * d;
  });
  return s / card;
}

inline std::vector<double> phi_plane_of(std::span<const UnitValue> plane) {
  std::vector<double> out(plane.size());
  for (std::size_t k = 0; k < plane.size(); ++k) out[k] = phi_of(plane[k].value());
  return out;
}

// mu_phi = <+> over the plane of (w/card <x> f); equivalently phi_inv of
// the weighted arithmetic mean of phi(f).
inline UnitValue log_mean(std::span<const UnitValue> plane,
                          std::span<const double> weights, double card) {
  const std::vector<double> f = phi_plane_of(plane);
  return UnitValue(phi_inv_of(weighted_average(f, weights, card)));
}

// sigma_phi^2 = sum w * ||f <-> mu||^2 / card
inline double log_variance(std::span<const UnitValue> plane, UnitValue mu,
                           std::span<const double> weights, double card) {
  const std::vector<double> f = phi_plane_of(plane);
  return weighted_sq_deviation(f, phi_of(mu.value()), weights, card);
}

// gamma_phi^2 = sum w * s_phi^2(r,g,b) / card for lrgb chroma planes.
inline double log_saturation_energy(std::span<const UnitValue> r,
                                    std::span<const UnitValue> g,
                                    std::span<const UnitValue> b,
                                    std::span<const double> weights, double card) {
  detail::require_same_size(r.size(), g.size());
  detail::require_same_size(r.size(), b.size());
  detail::require_same_size(r.size(), weights.size());
  detail::require_card(card);
  const double s = detail::pairwise_sum(0, r.size(), [&](std::size_t k) {
    const double fr = phi_of(r[k].value());
    const double fg = phi_of(g[k].value());
    const double fb = phi_of(b[k].value());
    return weights[k] * (fr * fr + fg * fg + fb * fb) / 3.0;
  });
  return s / card;
}

// Unweighted whole-plane statistics (the global case of the above).
inline WindowStats global_stats(std::span<const UnitValue> plane) {
  const std::vector<double> ones(plane.size(), 1.0);
  const double card =
      detail::pairwise_sum(0, ones.size(), [&](std::size_t k) { return ones[k]; });
  const std::vector<double> f = phi_plane_of(plane);
  const double m = weighted_average(f, ones, card);
  WindowStats st;
  st.mu_phi = UnitValue(phi_inv_of(m));
  st.sigma_phi_sq = weighted_sq_deviation(f, m, ones, card);
  st.card = card;
  return st;
}

}  // namespace logpix
