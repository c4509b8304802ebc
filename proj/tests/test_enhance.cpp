#include <catch2/catch.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "logpix/enhance.hpp"
#include "testutil.hpp"

using namespace logpix;

namespace {
constexpr double kTol = 1e-12;

double max_plane_diff(const RasterImage& a, const RasterImage& b) {
  REQUIRE(a.plane_count() == b.plane_count());
  REQUIRE(a.pixel_count() == b.pixel_count());
  double worst = 0.0;
  for (int p = 0; p < a.plane_count(); ++p) {
    auto pa = a.plane(p), pb = b.plane(p);
    for (std::size_t k = 0; k < pa.size(); ++k)
      worst = std::max(worst, std::abs(pa[k].value() - pb[k].value()));
  }
  return worst;
}

PlaneSummary mono_summary(const RasterImage& img) {
  return detail::summarize_image(img);
}
}  // namespace

TEST_CASE("parameter derivation from window statistics", "[enhance]") {
  const TargetStats target;
  EnhanceConfig cfg;

  WindowStats normalized;
  normalized.mu_phi = UnitValue(0.5);
  normalized.sigma_phi_sq = target.sigma * target.sigma;
  normalized.card = 10.0;
  AffineParams p = derive_params_mono(normalized, target, cfg);
  CHECK(p.lambda == Approx(1.0).margin(kTol));
  CHECK(p.tau.value() == Approx(0.5).margin(kTol));
  CHECK_FALSE(p.lambda_capped);

  WindowStats half = normalized;
  half.mu_phi = UnitValue(0.6);
  half.sigma_phi_sq = (target.sigma / 2.0) * (target.sigma / 2.0);
  p = derive_params_mono(half, target, cfg);
  CHECK(p.lambda == Approx(2.0).margin(kTol));
  CHECK(p.tau.value() == Approx(0.4).margin(kTol));

  // constant window: the guard floors sigma and the cap takes over
  WindowStats flat = normalized;
  flat.sigma_phi_sq = 0.0;
  p = derive_params_mono(flat, target, cfg);
  CHECK(p.lambda == Approx(cfg.gain_cap).margin(kTol));
  CHECK(p.lambda_capped);
}

TEST_CASE("color parameter derivation adds the chroma gain", "[enhance]") {
  const TargetStats target;
  EnhanceConfig cfg;

  WindowStats st;
  st.mu_phi = UnitValue(0.5);
  st.sigma_phi_sq = target.sigma * target.sigma;
  st.card = 4.0;

  st.gamma_phi_sq = target.sigma * target.sigma;
  AffineParams p = derive_params_color(st, target, cfg);
  CHECK(p.omega == Approx(1.0).margin(kTol));
  CHECK_FALSE(p.omega_capped);

  st.gamma_phi_sq = (target.sigma / 3.0) * (target.sigma / 3.0);
  p = derive_params_color(st, target, cfg);
  CHECK(p.omega == Approx(3.0).margin(kTol));

  st.gamma_phi_sq = 0.0;  // achromatic window
  p = derive_params_color(st, target, cfg);
  CHECK(p.omega == Approx(cfg.gain_cap).margin(kTol));
  CHECK(p.omega_capped);
}

TEST_CASE("single-pixel affine transforms", "[enhance]") {
  AffineParams identity;
  identity.lambda = 1.0;
  identity.tau = UnitValue(0.5);
  identity.omega = 1.0;
  CHECK(affine_mono(UnitValue(0.37), identity).value() == Approx(0.37).margin(kTol));

  AffineParams stretch = identity;
  stretch.lambda = 2.0;
  CHECK(affine_mono(UnitValue(0.6), stretch).value() ==
        Approx(0.69230769230769231).margin(kTol));

  // the window mean maps to the neutral for any lambda
  AffineParams centered;
  centered.lambda = 3.7;
  centered.tau = log_neg(UnitValue(0.81));
  CHECK(affine_mono(UnitValue(0.81), centered).value() == Approx(0.5).margin(kTol));

  // channelwise two-parameter map
  const RgbPixel px{UnitValue(0.6), UnitValue(0.5), UnitValue(0.5)};
  const RgbPixel out2 = affine_color2(px, stretch);
  CHECK(out2.r.value() == Approx(0.69230769230769231).margin(kTol));
  CHECK(out2.g.value() == Approx(0.5).margin(kTol));
  CHECK(out2.b.value() == Approx(0.5).margin(kTol));

  // gray stays gray under both color transforms
  const RgbPixel gray{UnitValue(0.3), UnitValue(0.3), UnitValue(0.3)};
  const RgbPixel g2 = affine_color2(gray, stretch);
  CHECK(g2.r.value() == Approx(g2.g.value()).margin(kTol));
  CHECK(g2.g.value() == Approx(g2.b.value()).margin(kTol));
  AffineParams chroma = stretch;
  chroma.omega = 4.2;
  const RgbPixel g3 = affine_color3(rgb_to_lrgb_log(gray), chroma);
  CHECK(g3.r.value() == Approx(g3.g.value()).margin(kTol));
  CHECK(g3.g.value() == Approx(g3.b.value()).margin(kTol));
}

TEST_CASE("three-parameter transform scales chroma by omega", "[enhance]") {
  const LrgbLog q = rgb_to_lrgb_log({UnitValue(0.6), UnitValue(0.5), UnitValue(0.5)});
  AffineParams p;
  p.lambda = 1.0;
  p.tau = UnitValue(0.5);
  p.omega = 2.0;
  const RgbPixel out = affine_color3(q, p);
  const LrgbLog qo = rgb_to_lrgb_log(out);
  CHECK(phi_of(qo.r.value()) == Approx(2.0 * 0.06757751801802740).margin(1e-9));
  CHECK(saturation_log(qo) == Approx(0.09556904249260654).margin(1e-9));

  // omega = lambda collapses to the two-parameter transform
  std::mt19937 rng(606);
  std::uniform_real_distribution<double> val(0.05, 0.95);
  for (int it = 0; it < 200; ++it) {
    const RgbPixel px{UnitValue(val(rng)), UnitValue(val(rng)), UnitValue(val(rng))};
    AffineParams both;
    both.lambda = 1.7;
    both.tau = UnitValue(0.44);
    both.omega = both.lambda;
    const RgbPixel a = affine_color3(rgb_to_lrgb_log(px), both);
    const RgbPixel b = affine_color2(px, both);
    CHECK(a.r.value() == Approx(b.r.value()).margin(kTol));
    CHECK(a.g.value() == Approx(b.g.value()).margin(kTol));
    CHECK(a.b.value() == Approx(b.b.value()).margin(kTol));
  }
}

TEST_CASE("three-parameter transform matches the rational chain", "[enhance]") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> val(0.05, 0.95);
  for (int it = 0; it < 200; ++it) {
    const RgbPixel px{UnitValue(val(rng)), UnitValue(val(rng)), UnitValue(val(rng))};
    const LrgbLog q = rgb_to_lrgb_log(px);
    AffineParams p;
    p.lambda = 2.3;
    p.tau = UnitValue(0.41);
    p.omega = 1.6;
    const RgbPixel a = affine_color3(q, p);
    // R = lambda <x> (l <+> tau) <+> omega <x> r, chained rational ops
    const UnitValue lum = log_smul(p.lambda, log_add(q.l, p.tau));
    CHECK(a.r.value() ==
          Approx(log_add(lum, log_smul(p.omega, q.r)).value()).margin(1e-9));
    CHECK(a.g.value() ==
          Approx(log_add(lum, log_smul(p.omega, q.g)).value()).margin(1e-9));
    CHECK(a.b.value() ==
          Approx(log_add(lum, log_smul(p.omega, q.b)).value()).margin(1e-9));
  }
}

TEST_CASE("global mono normalization is exact", "[enhance]") {
  const EnhanceConfig cfg;
  const RasterImage ramp = testutil::phi_ramp(64, 64);
  RunMetrics metrics;
  const RasterImage out = enhance_global_mono(ramp, cfg, &metrics);

  const PlaneSummary s = mono_summary(out);
  CHECK(s.phi_mean == Approx(0.0).margin(1e-9));
  CHECK(std::sqrt(s.phi_variance) == Approx(kSigmaUniform).margin(1e-9));
  CHECK_FALSE(metrics.cap_engaged);
  CHECK(testutil::strictly_interior(out));

  // an already normalized image passes through unchanged
  const RasterImage again = enhance_global_mono(out, cfg);
  CHECK(max_plane_diff(out, again) < 1e-9);
}

TEST_CASE("constant input engages the cap and stays flat", "[enhance]") {
  const EnhanceConfig cfg;
  const RasterImage flat = testutil::constant_mono(16, 16, 0.37);
  RunMetrics metrics;
  const RasterImage out = enhance_global_mono(flat, cfg, &metrics);
  CHECK(metrics.cap_engaged);
  CHECK(metrics.windows.size() == 1);
  CHECK(metrics.windows[0].params.lambda_capped);
  for (const UnitValue v : out.plane(0))
    CHECK(v.value() == Approx(0.5).margin(1e-9));

  // fuzzy pipeline on a constant image: every window caps identically
  const FuzzyPartition part(flat.support(), 2, 2, 1.0);
  const RasterImage fuzzy = enhance_fuzzy_mono(flat, part, cfg);
  for (const UnitValue v : fuzzy.plane(0))
    CHECK(v.value() == Approx(0.5).margin(1e-9));
}

TEST_CASE("global color2 scales saturation along with contrast", "[enhance]") {
  const EnhanceConfig cfg;
  const RasterImage img = testutil::color_gradient(32, 32);
  RunMetrics metrics;
  const RasterImage out = enhance_global_color2(img, cfg, &metrics);
  REQUIRE(metrics.windows.size() == 1);
  const double lambda = metrics.windows[0].params.lambda;

  // luminosity is normalized, but chroma picks up the same gain: the
  // two-parameter transform multiplies every pixel's saturation by lambda
  const PlaneSummary post = detail::summarize_image(out);
  CHECK(std::abs(post.phi_mean) < 1e-9);
  for (int row = 0; row < img.height(); ++row)
    for (int col = 0; col < img.width(); ++col) {
      const double before =
          saturation_log(rgb_to_lrgb_log(testutil::pixel_at(img, col, row)));
      const double after =
          saturation_log(rgb_to_lrgb_log(testutil::pixel_at(out, col, row)));
      CHECK(after == Approx(lambda * before).margin(1e-9));
    }
}

TEST_CASE("global color3 normalizes the mean saturation energy", "[enhance]") {
  const EnhanceConfig cfg;
  const RasterImage img = testutil::color_gradient(48, 48);
  RunMetrics metrics;
  const RasterImage out = enhance_global_color3(img, cfg, &metrics);
  REQUIRE_FALSE(metrics.cap_engaged);

  const PlaneSummary post = detail::summarize_image(out);
  REQUIRE(post.gamma_phi_sq.has_value());
  CHECK(std::sqrt(*post.gamma_phi_sq) == Approx(kSigmaUniform).margin(1e-6));
  CHECK(std::abs(post.phi_mean) < 1e-9);
  CHECK(testutil::strictly_interior(out));
}

TEST_CASE("color3 preserves hue pixel by pixel", "[enhance]") {
  const EnhanceConfig cfg;
  const RasterImage img = testutil::noise_color(40, 25, 909);
  const RasterImage global = enhance_global_color3(img, cfg);

  EnhanceConfig fuzzy_cfg = cfg;
  fuzzy_cfg.windows_x = 3;
  fuzzy_cfg.windows_y = 3;
  const FuzzyPartition part(img.support(), 2, 2, 1.0);
  const RasterImage fuzzy = enhance_fuzzy_color(img, part, fuzzy_cfg);

  for (int row = 0; row < img.height(); ++row) {
    for (int col = 0; col < img.width(); ++col) {
      const RgbPixel in = testutil::pixel_at(img, col, row);
      if (saturation_log(rgb_to_lrgb_log(in)) < 1e-6) continue;
      CHECK(testutil::chroma_cosine(in, testutil::pixel_at(global, col, row)) >=
            1.0 - 1e-9);
      CHECK(testutil::chroma_cosine(in, testutil::pixel_at(fuzzy, col, row)) >=
            1.0 - 1e-9);
    }
  }
}

TEST_CASE("gray input stays gray through the color3 paths", "[enhance]") {
  EnhanceConfig cfg;
  cfg.windows_x = 3;
  cfg.windows_y = 3;
  RasterImage img = testutil::constant_gray(24, 24, 0.5);
  // add structure so lambda is finite while chroma stays zero
  for (int row = 0; row < 24; ++row)
    for (int col = 0; col < 24; ++col) {
      const UnitValue v((col + row + 1.0) / 50.0);
      for (int p = 0; p < 3; ++p) img.set(p, col, row, v);
    }

  RunMetrics metrics;
  const RasterImage global = enhance_global_color3(img, cfg, &metrics);
  CHECK(metrics.cap_engaged);  // omega guard on an achromatic image
  const FuzzyPartition part(img.support(), 2, 2, 1.0);
  const RasterImage fuzzy = enhance_fuzzy_color(img, part, cfg);
  for (const RasterImage* out : {&global, &fuzzy}) {
    for (std::size_t k = 0; k < out->pixel_count(); ++k) {
      CHECK(out->plane(0)[k].value() == Approx(out->plane(1)[k].value()).margin(kTol));
      CHECK(out->plane(1)[k].value() == Approx(out->plane(2)[k].value()).margin(kTol));
    }
  }

  // and the mono pipeline on the shared plane gives the same image
  RasterImage mono(24, 24, 1);
  for (std::size_t k = 0; k < mono.pixel_count(); ++k)
    mono.plane(0)[k] = img.plane(0)[k];
  const RasterImage mono_out = enhance_global_mono(mono, cfg);
  double worst = 0.0;
  for (std::size_t k = 0; k < mono.pixel_count(); ++k)
    worst = std::max(worst,
                     std::abs(mono_out.plane(0)[k].value() - global.plane(0)[k].value()));
  CHECK(worst < 1e-9);
}

TEST_CASE("fuzzy pipelines with one window equal the global ones", "[enhance]") {
  EnhanceConfig cfg;
  cfg.windows_x = 1;
  cfg.windows_y = 1;

  const RasterImage mono = testutil::noise_mono(32, 24, 321);
  const FuzzyPartition whole_m(mono.support(), 0, 0, 1.0);
  CHECK(max_plane_diff(enhance_fuzzy_mono(mono, whole_m, cfg),
                       enhance_global_mono(mono, cfg)) <= kTol);

  const RasterImage color = testutil::noise_color(32, 24, 654);
  const FuzzyPartition whole_c(color.support(), 0, 0, 1.0);
  CHECK(max_plane_diff(enhance_fuzzy_color(color, whole_c, cfg),
                       enhance_global_color3(color, cfg)) <= kTol);
  CHECK(max_plane_diff(enhance_crisp_color(color, cfg),
                       enhance_global_color3(color, cfg)) <= kTol);
}

TEST_CASE("per-window transforms are exactly normalized", "[enhance]") {
  const EnhanceConfig cfg;
  const RasterImage img = testutil::two_tone(64, 64);
  const FuzzyPartition part(img.support(), 2, 2, 1.0);
  const MembershipField field = part.rasterize(64, 64);
  const auto plane = img.plane(0);
  const TargetStats target;

  std::vector<double> wbuf;
  for (int j = 0; j <= 2; ++j) {
    for (int i = 0; i <= 2; ++i) {
      field.fill_plane({i, j}, wbuf);
      const double card = fuzzy_cardinality({i, j}, field);
      const UnitValue mu = log_mean(plane, wbuf, card);
      WindowStats st;
      st.mu_phi = mu;
      st.sigma_phi_sq = log_variance(plane, mu, wbuf, card);
      st.card = card;
      const AffineParams p = derive_params_mono(st, target, cfg);
      REQUIRE_FALSE(p.lambda_capped);

      std::vector<UnitValue> mapped(plane.size());
      for (std::size_t k = 0; k < plane.size(); ++k)
        mapped[k] = affine_mono(plane[k], p);
      const UnitValue mu2 = log_mean(mapped, wbuf, card);
      CHECK(phi_of(mu2.value()) == Approx(0.0).margin(1e-9));
      CHECK(std::sqrt(log_variance(mapped, mu2, wbuf, card)) ==
            Approx(target.sigma).margin(1e-9));
    }
  }
}

TEST_CASE("crisp tiles match the global transform of each tile", "[enhance]") {
  EnhanceConfig cfg;
  cfg.windows_x = 3;
  cfg.windows_y = 3;
  const RasterImage img = testutil::color_gradient(48, 48);
  const RasterImage crisp = enhance_crisp_color(img, cfg);

  EnhanceConfig global_cfg;
  for (int tj = 0; tj < 3; ++tj) {
    for (int ti = 0; ti < 3; ++ti) {
      RasterImage tile(16, 16, 3);
      for (int p = 0; p < 3; ++p)
        for (int row = 0; row < 16; ++row)
          for (int col = 0; col < 16; ++col)
            tile.set(p, col, row, img.at(p, ti * 16 + col, tj * 16 + row));
      const RasterImage tile_out = enhance_global_color3(tile, global_cfg);
      for (int p = 0; p < 3; ++p)
        for (int row = 0; row < 16; ++row)
          for (int col = 0; col < 16; ++col)
            CHECK(crisp.at(p, ti * 16 + col, tj * 16 + row).value() ==
                  Approx(tile_out.at(p, col, row).value()).margin(1e-9));
    }
  }
}

TEST_CASE("crisp partition jumps where the fuzzy one stays smooth", "[enhance]") {
  EnhanceConfig cfg;
  cfg.windows_x = 3;
  cfg.windows_y = 3;
  const RasterImage img = testutil::color_gradient(96, 96);
  const RasterImage crisp = enhance_crisp_color(img, cfg);
  const FuzzyPartition part(img.support(), 2, 2, 1.0);
  const RasterImage fuzzy = enhance_fuzzy_color(img, part, cfg);

  // largest phi jump across the vertical and horizontal tile boundaries
  const auto boundary_jump = [](const RasterImage& out) {
    double worst = 0.0;
    for (int b = 1; b < 3; ++b) {
      const int col = b * 32;
      for (int row = 0; row < out.height(); ++row)
        for (int p = 0; p < 3; ++p)
          worst = std::max(worst, std::abs(phi_of(out.at(p, col, row).value()) -
                                           phi_of(out.at(p, col - 1, row).value())));
      const int brow = b * 32;
      for (int c = 0; c < out.width(); ++c)
        for (int p = 0; p < 3; ++p)
          worst = std::max(worst, std::abs(phi_of(out.at(p, c, brow).value()) -
                                           phi_of(out.at(p, c, brow - 1).value())));
    }
    return worst;
  };
  CHECK(boundary_jump(crisp) > boundary_jump(fuzzy));
}

TEST_CASE("histogram equalization basics", "[enhance]") {
  // exactly uniform histogram: the mapping shifts levels by at most one
  RasterImage uniform(16, 16, 1);
  for (int k = 0; k < 256; ++k)
    uniform.plane(0)[static_cast<std::size_t>(k)] = dequantize(k);
  const RasterImage u_out = hist_equalize(uniform);
  for (int k = 0; k < 256; ++k)
    CHECK(std::abs(quantize(u_out.plane(0)[static_cast<std::size_t>(k)]) - k) <= 1);

  // 50/50 two-level image maps to about the middle and the top
  const RasterImage two = testutil::two_tone(32, 32, 0.25, 0.75);
  const RasterImage t_out = hist_equalize(two);
  CHECK(quantize(t_out.at(0, 0, 0)) == 128);
  CHECK(quantize(t_out.at(0, 31, 0)) == 255);

  // the observed level mapping is monotone nondecreasing
  const RasterImage ramp = testutil::vignette(64, 64);
  const RasterImage r_out = hist_equalize(ramp);
  int level_map[256];
  std::fill(std::begin(level_map), std::end(level_map), -1);
  for (std::size_t k = 0; k < ramp.pixel_count(); ++k)
    level_map[quantize(ramp.plane(0)[k])] = quantize(r_out.plane(0)[k]);
  int previous = 0;
  for (int k = 0; k < 256; ++k) {
    if (level_map[k] < 0) continue;
    CHECK(level_map[k] >= previous);
    previous = level_map[k];
  }
}

TEST_CASE("histogram equalization flattens non-constant images", "[enhance]") {
  for (const RasterImage& img :
       {testutil::vignette(64, 64), testutil::noise_mono(48, 48, 5150, 0.2, 0.6)}) {
    const RasterImage out = hist_equalize(img);
    CHECK(testutil::chi_sq_to_uniform(out.plane(0)) <
          testutil::chi_sq_to_uniform(img.plane(0)));
    CHECK(testutil::strictly_interior(out));
  }
  const RasterImage color = testutil::color_gradient(64, 64);
  const RasterImage out = hist_equalize(color);
  for (int p = 0; p < 3; ++p)
    CHECK(testutil::chi_sq_to_uniform(out.plane(p)) <
          testutil::chi_sq_to_uniform(color.plane(p)));
}

TEST_CASE("pipelines validate their inputs", "[enhance]") {
  const EnhanceConfig cfg;
  const RasterImage mono = testutil::constant_mono(8, 8, 0.4);
  const RasterImage color = testutil::constant_gray(8, 8, 0.4);
  CHECK_THROWS_AS(enhance_global_mono(color, cfg), std::invalid_argument);
  CHECK_THROWS_AS(enhance_global_color3(mono, cfg), std::invalid_argument);
  CHECK_THROWS_AS(enhance_global_color2(mono, cfg), std::invalid_argument);

  EnhanceConfig bad = cfg;
  bad.windows_x = 0;
  CHECK_THROWS_AS(run_enhance(mono, bad), std::invalid_argument);
  bad = cfg;
  bad.gamma = -1.0;
  CHECK_THROWS_AS(run_enhance(mono, bad), std::invalid_argument);

  // partition support must match the image
  const FuzzyPartition other(SupportRect{0.0, 4.0, 0.0, 4.0}, 1, 1, 1.0);
  CHECK_THROWS_AS(enhance_fuzzy_mono(mono, other, cfg), std::invalid_argument);

  // a crisp tiling finer than the raster leaves empty tiles behind
  EnhanceConfig fine = cfg;
  fine.windows_x = 3;
  fine.windows_y = 3;
  CHECK_THROWS_AS(enhance_crisp_color(testutil::constant_gray(2, 2, 0.5), fine),
                  std::domain_error);
}

TEST_CASE("run_enhance dispatches every mode", "[enhance]") {
  const RasterImage mono = testutil::noise_mono(20, 20, 31337);
  const RasterImage color = testutil::noise_color(20, 20, 31338);
  EnhanceConfig cfg;
  cfg.windows_x = 2;
  cfg.windows_y = 2;

  for (EnhanceMode mode : {EnhanceMode::GlobalMono, EnhanceMode::FuzzyMono}) {
    cfg.mode = mode;
    RunMetrics metrics;
    const RasterImage out = run_enhance(mono, cfg, &metrics);
    CHECK(out.mono());
    CHECK(metrics.mode == mode);
    CHECK(testutil::strictly_interior(out));
  }
  for (EnhanceMode mode : {EnhanceMode::GlobalColor2, EnhanceMode::GlobalColor3,
                           EnhanceMode::FuzzyColor, EnhanceMode::CrispColor}) {
    cfg.mode = mode;
    RunMetrics metrics;
    const RasterImage out = run_enhance(color, cfg, &metrics);
    CHECK(out.plane_count() == 3);
    CHECK(metrics.mode == mode);
    if (mode == EnhanceMode::FuzzyColor || mode == EnhanceMode::CrispColor)
      CHECK(metrics.windows.size() == 4);
    CHECK(testutil::strictly_interior(out));
  }
  cfg.mode = EnhanceMode::HistEq;
  CHECK(run_enhance(mono, cfg).mono());
  CHECK(run_enhance(color, cfg).plane_count() == 3);

  CHECK(std::string(to_string(EnhanceMode::FuzzyColor)) == "fuzzy-color");
  CHECK(parse_mode("fuzzy-color") == EnhanceMode::FuzzyColor);
  CHECK_FALSE(parse_mode("bogus").has_value());
}

TEST_CASE("ten-by-ten fuzzy partition run", "[enhance]") {
  const RasterImage img = testutil::color_gradient(80, 80);
  EnhanceConfig cfg;
  cfg.mode = EnhanceMode::FuzzyColor;
  cfg.windows_x = 10;
  cfg.windows_y = 10;
  RunMetrics metrics;
  const RasterImage out = run_enhance(img, cfg, &metrics);
  CHECK(metrics.m == 9);
  CHECK(metrics.n == 9);
  CHECK(metrics.windows.size() == 100);
  CHECK(testutil::strictly_interior(out));
  double card_sum = 0.0;
  for (const WindowParamRecord& w : metrics.windows) card_sum += w.stats.card;
  CHECK(card_sum == Approx(80.0 * 80.0).margin(1e-6));
}
