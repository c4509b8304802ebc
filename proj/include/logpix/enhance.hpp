#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "logpix/color.hpp"
#include "logpix/image.hpp"
#include "logpix/imageio.hpp"
#include "logpix/partition.hpp"
#include "logpix/stats.hpp"

// Enhancement pipelines. Every path computes in phi-space end to end:
// one phi per input channel value, linear work in between, one phi_inv
// per output channel value. Parameters (lambda, tau, omega) are derived
// from window statistics so the output matches the moments of a
// uniformly distributed image; a configurable gain cap absorbs flat or
// achromatic windows whose statistics would otherwise divide to infinity.

namespace logpix {

enum class EnhanceMode {
  GlobalMono,
  GlobalColor2,
  GlobalColor3,
  FuzzyMono,
  FuzzyColor,
  CrispColor,
  HistEq,
};

inline const char* to_string(EnhanceMode mode) {
  switch (mode) {
    case EnhanceMode::GlobalMono: return "global-mono";
    case EnhanceMode::GlobalColor2: return "global-color2";
    case EnhanceMode::GlobalColor3: return "global-color3";
    case EnhanceMode::FuzzyMono: return "fuzzy-mono";
    case EnhanceMode::FuzzyColor: return "fuzzy-color";
    case EnhanceMode::CrispColor: return "crisp-color";
    case EnhanceMode::HistEq: return "histeq";
  }
  return "unknown";
}

inline std::optional<EnhanceMode> parse_mode(std::string_view name) {
  if (name == "global-mono") return EnhanceMode::GlobalMono;
  if (name == "global-color2") return EnhanceMode::GlobalColor2;
  if (name == "global-color3") return EnhanceMode::GlobalColor3;
  if (name == "fuzzy-mono") return EnhanceMode::FuzzyMono;
  if (name == "fuzzy-color") return EnhanceMode::FuzzyColor;
  if (name == "crisp-color") return EnhanceMode::CrispColor;
  if (name == "histeq") return EnhanceMode::HistEq;
  return std::nullopt;
}

struct EnhanceConfig {
  EnhanceMode mode = EnhanceMode::FuzzyColor;
  int windows_x = 1;  // window counts per axis; the grid degree is count-1
  int windows_y = 1;
  double gamma = 1.0;
  double gain_cap = 10.0;
  double variance_floor = 1e-8;

  void validate() const {
    if (windows_x < 1 || windows_y < 1)
      throw std::invalid_argument("config: window counts must be >= 1");
    if (!(gamma > 0.0)) throw std::invalid_argument("config: gamma must be positive");
    if (!(gain_cap > 0.0)) throw std::invalid_argument("config: gain cap must be positive");
    if (!(variance_floor > 0.0))
      throw std::invalid_argument("config: variance floor must be positive");
  }
};

// The affine transform of one window: tau shifts brightness, lambda
// rescales luminosity contrast, omega rescales chroma.
struct AffineParams {
  double lambda = 1.0;
  UnitValue tau;
  double omega = 1.0;
  bool lambda_capped = false;
  bool omega_capped = false;
};

// lambda = sigma(u) / sigma_phi (floored, capped), tau = <-> mu_phi
inline AffineParams derive_params_mono(const WindowStats& st, const TargetStats& target,
                                       const EnhanceConfig& cfg) {
  AffineParams p;
  const double sigma = std::sqrt(std::max(st.sigma_phi_sq, 0.0));
  const double raw = target.sigma / std::max(sigma, cfg.variance_floor);
  p.lambda_capped = raw > cfg.gain_cap;
  p.lambda = p.lambda_capped ? cfg.gain_cap : raw;
  p.tau = log_neg(st.mu_phi);
  return p;
}

// adds omega = sigma(u) / gamma_phi (floored, capped)
inline AffineParams derive_params_color(const WindowStats& st, const TargetStats& target,
                                        const EnhanceConfig& cfg) {
  AffineParams p = derive_params_mono(st, target, cfg);
  const double gphi = std::sqrt(std::max(st.gamma_phi_sq, 0.0));
  const double raw = target.sigma / std::max(gphi, cfg.variance_floor);
  p.omega_capped = raw > cfg.gain_cap;
  p.omega = p.omega_capped ? cfg.gain_cap : raw;
  return p;
}

// psi(f) = lambda <x> (f <+> tau)
inline UnitValue affine_mono(UnitValue f, const AffineParams& p) {
  return log_smul(p.lambda, log_add(f, p.tau));
}

// Each channel through the same (lambda, tau) map.
inline RgbPixel affine_color2(const RgbPixel& px, const AffineParams& p) {
  return {affine_mono(px.r, p), affine_mono(px.g, p), affine_mono(px.b, p)};
}

// C = lambda <x> (l <+> tau) <+> omega <x> c for each channel's chroma c;
// luminosity gets (lambda, tau), chroma is rescaled by omega.
inline RgbPixel affine_color3(const LrgbLog& q, const AffineParams& p) {
  const double lum = p.lambda * (phi_of(q.l.value()) + phi_of(p.tau.value()));
  const auto chan = [&](UnitValue c) {
    return UnitValue(phi_inv_of(lum + p.omega * phi_of(c.value())));
  };
  return {chan(q.r), chan(q.g), chan(q.b)};
}

// phi-space moments of a plane; gamma_phi_sq only for color runs.
struct PlaneSummary {
  double phi_mean = 0.0;
  double phi_variance = 0.0;
  std::optional<double> gamma_phi_sq;
};

struct WindowParamRecord {
  WindowId id;
  AffineParams params;
  WindowStats stats;
};

// The metrics record a pipeline run emits.
struct RunMetrics {
  EnhanceMode mode = EnhanceMode::GlobalMono;
  int m = 0, n = 0;
  double gamma = 1.0;
  std::vector<WindowParamRecord> windows;
  PlaneSummary pre, post;
  bool cap_engaged = false;
};

namespace detail {

struct ColorPhiPlanes {
  std::vector<double> fr, fg, fb, fl, sat2;
};

inline ColorPhiPlanes color_phi_planes(const RasterImage& img) {
  ColorPhiPlanes c;
  c.fr = phi_plane_of(img.plane(0));
  c.fg = phi_plane_of(img.plane(1));
  c.fb = phi_plane_of(img.plane(2));
  const std::size_t npx = img.pixel_count();
  c.fl.resize(npx);
  c.sat2.resize(npx);
  for (std::size_t k = 0; k < npx; ++k) {
    c.fl[k] = (c.fr[k] + c.fg[k] + c.fb[k]) / 3.0;
    const double dr = c.fr[k] - c.fl[k];
    const double dg = c.fg[k] - c.fl[k];
    const double db = c.fb[k] - c.fl[k];
    c.sat2[k] = (dr * dr + dg * dg + db * db) / 3.0;
  }
  return c;
}

inline std::vector<double> ones(std::size_t n) { return std::vector<double>(n, 1.0); }

inline double plain_sum(std::span<const double> v) {
  return pairwise_sum(0, v.size(), [&](std::size_t k) { return v[k]; });
}

inline PlaneSummary summarize_phi(std::span<const double> f,
                                  const std::vector<double>* sat2 = nullptr) {
  const std::vector<double> w = ones(f.size());
  const double card = plain_sum(w);
  PlaneSummary s;
  s.phi_mean = weighted_average(f, w, card);
  s.phi_variance = weighted_sq_deviation(f, s.phi_mean, w, card);
  if (sat2) s.gamma_phi_sq = weighted_average(*sat2, w, card);
  return s;
}

inline PlaneSummary summarize_image(const RasterImage& img) {
  if (img.mono()) return summarize_phi(phi_plane_of(img.plane(0)));
  const ColorPhiPlanes c = color_phi_planes(img);
  return summarize_phi(c.fl, &c.sat2);
}

inline void require_mono(const RasterImage& img, const char* what) {
  if (!img.mono())
    throw std::invalid_argument(std::string(what) + ": requires a 1-plane (mono) image");
}

inline void require_color(const RasterImage& img, const char* what) {
  if (img.mono())
    throw std::invalid_argument(std::string(what) + ": requires a 3-plane (color) image");
}

inline void require_matching_support(const RasterImage& img, const FuzzyPartition& part,
                                     const char* what) {
  const SupportRect a = img.support(), b = part.support();
  if (a.x0 != b.x0 || a.x1 != b.x1 || a.y0 != b.y0 || a.y1 != b.y1)
    throw std::invalid_argument(std::string(what) +
                                ": partition support does not match the image");
}

// Per-window stats and parameters over a membership field.
struct WindowPlan {
  std::vector<double> lambda, omega, mphi;
  bool cap_engaged = false;
};

template <class StatsFn>
WindowPlan plan_windows(const MembershipField& field, const EnhanceConfig& cfg,
                        bool color, const StatsFn& window_stats,
                        std::vector<WindowParamRecord>* records) {
  const TargetStats target;
  const int count = field.window_count();
  WindowPlan plan;
  plan.lambda.resize(static_cast<std::size_t>(count));
  plan.omega.resize(static_cast<std::size_t>(count));
  plan.mphi.resize(static_cast<std::size_t>(count));
  std::vector<double> wbuf;
  std::size_t idx = 0;
  for (int j = 0; j <= field.n(); ++j) {
    for (int i = 0; i <= field.m(); ++i, ++idx) {
      const WindowId id{i, j};
      field.fill_plane(id, wbuf);
      double mphi = 0.0;
      const WindowStats st = window_stats(wbuf, &mphi);
      const AffineParams p = color ? derive_params_color(st, target, cfg)
                                   : derive_params_mono(st, target, cfg);
      plan.lambda[idx] = p.lambda;
      plan.omega[idx] = p.omega;
      plan.mphi[idx] = mphi;
      plan.cap_engaged = plan.cap_engaged || p.lambda_capped || p.omega_capped;
      if (records) records->push_back({id, p, st});
    }
  }
  return plan;
}

inline void finalize_metrics(RunMetrics* metrics, EnhanceMode mode, int m, int n,
                             double gamma, std::vector<WindowParamRecord>&& records,
                             bool cap_engaged, const RasterImage& input,
                             const RasterImage& output) {
  if (!metrics) return;
  metrics->mode = mode;
  metrics->m = m;
  metrics->n = n;
  metrics->gamma = gamma;
  metrics->windows = std::move(records);
  metrics->cap_engaged = cap_engaged;
  metrics->pre = summarize_image(input);
  metrics->post = summarize_image(output);
}

// Shared engine for the windowed (fuzzy or crisp) mono pipeline.
inline RasterImage windowed_mono(const RasterImage& img, const MembershipField& field,
                                 double gamma, EnhanceMode mode, const EnhanceConfig& cfg,
                                 RunMetrics* metrics) {
  const std::vector<double> f = phi_plane_of(img.plane(0));
  std::vector<WindowParamRecord> records;
  const WindowPlan plan = plan_windows(
      field, cfg, /*color=*/false,
      [&](const std::vector<double>& w, double* mphi) {
        const double card = plain_sum(w);
        const double m = weighted_average(f, w, card);
        *mphi = m;
        WindowStats st;
        st.mu_phi = UnitValue(phi_inv_of(m));
        st.sigma_phi_sq = weighted_sq_deviation(f, m, w, card);
        st.card = card;
        return st;
      },
      metrics ? &records : nullptr);

  RasterImage out(img.width(), img.height(), 1);
  auto dst = out.plane(0);
  const int mw = field.m(), nw = field.n();
  for (int row = 0; row < img.height(); ++row) {
    for (int col = 0; col < img.width(); ++col) {
      const std::size_t k = img.index(col, row);
      double acc = 0.0;
      std::size_t idx = 0;
      for (int j = 0; j <= nw; ++j)
        for (int i = 0; i <= mw; ++i, ++idx)
          acc += field.at({i, j}, col, row) *
                 (plan.lambda[idx] * (f[k] - plan.mphi[idx]));
      dst[k] = UnitValue(phi_inv_of(acc));
    }
  }
  finalize_metrics(metrics, mode, field.m(), field.n(), gamma, std::move(records),
                   plan.cap_engaged, img, out);
  return out;
}

// Shared engine for the windowed color pipeline (three-parameter form).
inline RasterImage windowed_color(const RasterImage& img, const MembershipField& field,
                                  double gamma, EnhanceMode mode, const EnhanceConfig& cfg,
                                  RunMetrics* metrics) {
  const ColorPhiPlanes c = color_phi_planes(img);
  std::vector<WindowParamRecord> records;
  const WindowPlan plan = plan_windows(
      field, cfg, /*color=*/true,
      [&](const std::vector<double>& w, double* mphi) {
        const double card = plain_sum(w);
        const double m = weighted_average(c.fl, w, card);
        *mphi = m;
        WindowStats st;
        st.mu_phi = UnitValue(phi_inv_of(m));
        st.sigma_phi_sq = weighted_sq_deviation(c.fl, m, w, card);
        st.gamma_phi_sq = weighted_average(c.sat2, w, card);
        st.card = card;
        return st;
      },
      metrics ? &records : nullptr);

  RasterImage out(img.width(), img.height(), 3);
  auto dr = out.plane(0);
  auto dg = out.plane(1);
  auto db = out.plane(2);
  const int mw = field.m(), nw = field.n();
  for (int row = 0; row < img.height(); ++row) {
    for (int col = 0; col < img.width(); ++col) {
      const std::size_t k = img.index(col, row);
      double lum = 0.0, wom = 0.0;
      std::size_t idx = 0;
      for (int j = 0; j <= nw; ++j) {
        for (int i = 0; i <= mw; ++i, ++idx) {
          const double w = field.at({i, j}, col, row);
          lum += w * (plan.lambda[idx] * (c.fl[k] - plan.mphi[idx]));
          wom += w * plan.omega[idx];
        }
      }
      dr[k] = UnitValue(phi_inv_of(lum + wom * (c.fr[k] - c.fl[k])));
      dg[k] = UnitValue(phi_inv_of(lum + wom * (c.fg[k] - c.fl[k])));
      db[k] = UnitValue(phi_inv_of(lum + wom * (c.fb[k] - c.fl[k])));
    }
  }
  finalize_metrics(metrics, mode, field.m(), field.n(), gamma, std::move(records),
                   plan.cap_engaged, img, out);
  return out;
}

}  // namespace detail

// psi(f) = (sigma(u)/sigma_phi(f)) <x> (f <-> mu_phi(f)) over the whole
// image; absent cap engagement the output has phi-mean 0 and phi-std
// sigma(u) exactly.
inline RasterImage enhance_global_mono(const RasterImage& img, const EnhanceConfig& cfg,
                                       RunMetrics* metrics = nullptr) {
  cfg.validate();
  detail::require_mono(img, "global-mono");
  const TargetStats target;
  const std::vector<double> f = phi_plane_of(img.plane(0));
  const std::vector<double> w = detail::ones(f.size());
  const double card = detail::plain_sum(w);
  const double m = weighted_average(f, w, card);
  WindowStats st;
  st.mu_phi = UnitValue(phi_inv_of(m));
  st.sigma_phi_sq = weighted_sq_deviation(f, m, w, card);
  st.card = card;
  const AffineParams p = derive_params_mono(st, target, cfg);

  RasterImage out(img.width(), img.height(), 1);
  auto dst = out.plane(0);
  for (std::size_t k = 0; k < f.size(); ++k)
    dst[k] = UnitValue(phi_inv_of(p.lambda * (f[k] - m)));
  detail::finalize_metrics(metrics, EnhanceMode::GlobalMono, 0, 0, cfg.gamma,
                           {{WindowId{0, 0}, p, st}}, p.lambda_capped, img, out);
  return out;
}

// Every channel through the same (lambda, tau) derived from luminosity.
inline RasterImage enhance_global_color2(const RasterImage& img, const EnhanceConfig& cfg,
                                         RunMetrics* metrics = nullptr) {
  cfg.validate();
  detail::require_color(img, "global-color2");
  const TargetStats target;
  const detail::ColorPhiPlanes c = detail::color_phi_planes(img);
  const std::vector<double> w = detail::ones(c.fl.size());
  const double card = detail::plain_sum(w);
  const double m = weighted_average(c.fl, w, card);
  WindowStats st;
  st.mu_phi = UnitValue(phi_inv_of(m));
  st.sigma_phi_sq = weighted_sq_deviation(c.fl, m, w, card);
  st.gamma_phi_sq = weighted_average(c.sat2, w, card);
  st.card = card;
  const AffineParams p = derive_params_mono(st, target, cfg);

  RasterImage out(img.width(), img.height(), 3);
  for (int plane = 0; plane < 3; ++plane) {
    const std::vector<double>& f = plane == 0 ? c.fr : plane == 1 ? c.fg : c.fb;
    auto dst = out.plane(plane);
    for (std::size_t k = 0; k < f.size(); ++k)
      dst[k] = UnitValue(phi_inv_of(p.lambda * (f[k] - m)));
  }
  detail::finalize_metrics(metrics, EnhanceMode::GlobalColor2, 0, 0, cfg.gamma,
                           {{WindowId{0, 0}, p, st}}, p.lambda_capped, img, out);
  return out;
}

// Three-parameter transform: (lambda, tau) on luminosity, omega on
// chroma, derived from whole-image statistics.
inline RasterImage enhance_global_color3(const RasterImage& img, const EnhanceConfig& cfg,
                                         RunMetrics* metrics = nullptr) {
  cfg.validate();
  detail::require_color(img, "global-color3");
  const TargetStats target;
  const detail::ColorPhiPlanes c = detail::color_phi_planes(img);
  const std::vector<double> w = detail::ones(c.fl.size());
  const double card = detail::plain_sum(w);
  const double m = weighted_average(c.fl, w, card);
  WindowStats st;
  st.mu_phi = UnitValue(phi_inv_of(m));
  st.sigma_phi_sq = weighted_sq_deviation(c.fl, m, w, card);
  st.gamma_phi_sq = weighted_average(c.sat2, w, card);
  st.card = card;
  const AffineParams p = derive_params_color(st, target, cfg);

  RasterImage out(img.width(), img.height(), 3);
  auto dr = out.plane(0);
  auto dg = out.plane(1);
  auto db = out.plane(2);
  for (std::size_t k = 0; k < c.fl.size(); ++k) {
    const double lum = p.lambda * (c.fl[k] - m);
    dr[k] = UnitValue(phi_inv_of(lum + p.omega * (c.fr[k] - c.fl[k])));
    dg[k] = UnitValue(phi_inv_of(lum + p.omega * (c.fg[k] - c.fl[k])));
    db[k] = UnitValue(phi_inv_of(lum + p.omega * (c.fb[k] - c.fl[k])));
  }
  detail::finalize_metrics(metrics, EnhanceMode::GlobalColor3, 0, 0, cfg.gamma,
                           {{WindowId{0, 0}, p, st}},
                           p.lambda_capped || p.omega_capped, img, out);
  return out;
}

// f_enh = sum_ij w_ij <x> psi_ij(f) with per-window (lambda, tau).
inline RasterImage enhance_fuzzy_mono(const RasterImage& img, const FuzzyPartition& part,
                                      const EnhanceConfig& cfg,
                                      RunMetrics* metrics = nullptr) {
  cfg.validate();
  detail::require_mono(img, "fuzzy-mono");
  detail::require_matching_support(img, part, "fuzzy-mono");
  const MembershipField field = part.rasterize(img.width(), img.height());
  return detail::windowed_mono(img, field, part.gamma(), EnhanceMode::FuzzyMono, cfg,
                               metrics);
}

// Channel-matched merge of the per-window three-parameter transforms.
inline RasterImage enhance_fuzzy_color(const RasterImage& img, const FuzzyPartition& part,
                                       const EnhanceConfig& cfg,
                                       RunMetrics* metrics = nullptr) {
  cfg.validate();
  detail::require_color(img, "fuzzy-color");
  detail::require_matching_support(img, part, "fuzzy-color");
  const MembershipField field = part.rasterize(img.width(), img.height());
  return detail::windowed_color(img, field, part.gamma(), EnhanceMode::FuzzyColor, cfg,
                                metrics);
}

// Same transform over the classical equal-tile partition.
inline RasterImage enhance_crisp_color(const RasterImage& img, const EnhanceConfig& cfg,
                                       RunMetrics* metrics = nullptr) {
  cfg.validate();
  detail::require_color(img, "crisp-color");
  const FuzzyPartition part(img.support(), cfg.windows_x - 1, cfg.windows_y - 1,
                            cfg.gamma);
  const MembershipField field = part.rasterize_crisp(img.width(), img.height());
  return detail::windowed_color(img, field, cfg.gamma, EnhanceMode::CrispColor, cfg,
                                metrics);
}

// Classical histogram equalization on 8-bit quantized levels, per
// channel for color images. The mapping k -> round(255 * cdf(k)) is
// monotone nondecreasing.
inline RasterImage hist_equalize(const RasterImage& img, const EnhanceConfig& cfg = {},
                                 RunMetrics* metrics = nullptr) {
  RasterImage out(img.width(), img.height(), img.plane_count());
  const double total = static_cast<double>(img.pixel_count());
  for (int p = 0; p < img.plane_count(); ++p) {
    auto src = img.plane(p);
    auto dst = out.plane(p);
    long counts[256] = {};
    for (const UnitValue v : src) ++counts[quantize(v)];
    int map[256] = {};
    long cum = 0;
    for (int k = 0; k < 256; ++k) {
      cum += counts[k];
      map[k] = static_cast<int>(std::lround(255.0 * static_cast<double>(cum) / total));
    }
    for (std::size_t k = 0; k < src.size(); ++k) dst[k] = dequantize(map[quantize(src[k])]);
  }
  detail::finalize_metrics(metrics, EnhanceMode::HistEq, 0, 0, cfg.gamma, {}, false, img,
                           out);
  return out;
}

// Dispatch on cfg.mode; fuzzy modes build their partition from the
// window counts and gamma in the config.
inline RasterImage run_enhance(const RasterImage& img, const EnhanceConfig& cfg,
                               RunMetrics* metrics = nullptr) {
  cfg.validate();
  switch (cfg.mode) {
    case EnhanceMode::GlobalMono:
      return enhance_global_mono(img, cfg, metrics);
    case EnhanceMode::GlobalColor2:
      return enhance_global_color2(img, cfg, metrics);
    case EnhanceMode::GlobalColor3:
      return enhance_global_color3(img, cfg, metrics);
    case EnhanceMode::FuzzyMono: {
      const FuzzyPartition part(img.support(), cfg.windows_x - 1, cfg.windows_y - 1,
                                cfg.gamma);
      return enhance_fuzzy_mono(img, part, cfg, metrics);
    }
    case EnhanceMode::FuzzyColor: {
      const FuzzyPartition part(img.support(), cfg.windows_x - 1, cfg.windows_y - 1,
                                cfg.gamma);
      return enhance_fuzzy_color(img, part, cfg, metrics);
    }
    case EnhanceMode::CrispColor:
      return enhance_crisp_color(img, cfg, metrics);
    case EnhanceMode::HistEq:
      return hist_equalize(img, cfg, metrics);
  }
  throw std::invalid_argument("run_enhance: unknown mode");
}

}  // namespace logpix
