// logpix: logarithmic image enhancement over fuzzy Bernstein windows.
//
//   logpix enhance    run an enhancement pipeline on an image
//   logpix stats      print global / per-window logarithmic statistics
//   logpix membership export one membership plane as a grayscale image

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "logpix/enhance.hpp"
#include "logpix/imageio.hpp"
#include "logpix/partition.hpp"
#include "logpix/report.hpp"

namespace {

struct GridSpec {
  int x = 1;
  int y = 1;
};

// "MxN" window counts, e.g. "3x3"
GridSpec parse_grid(const std::string& text, const char* flag) {
  const std::size_t sep = text.find_first_of("xX");
  if (sep == std::string::npos)
    throw CLI::ValidationError(flag, "expected a value like 3x3");
  try {
    GridSpec g;
    g.x = std::stoi(text.substr(0, sep));
    g.y = std::stoi(text.substr(sep + 1));
    if (g.x < 1 || g.y < 1)
      throw CLI::ValidationError(flag, "window counts must be >= 1");
    return g;
  } catch (const CLI::ValidationError&) {
    throw;
  } catch (const std::exception&) {
    throw CLI::ValidationError(flag, "expected a value like 3x3");
  }
}

void require_positive(double value, const char* flag) {
  if (!(value > 0.0))
    throw CLI::ValidationError(flag, "must be positive");
}

std::pair<int, int> parse_window_index(const std::string& text) {
  const std::size_t sep = text.find(',');
  if (sep == std::string::npos)
    throw CLI::ValidationError("--window", "expected a value like 1,2");
  try {
    return {std::stoi(text.substr(0, sep)), std::stoi(text.substr(sep + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--window", "expected a value like 1,2");
  }
}

void write_json(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error(path + ": write failed");
}

struct EnhanceArgs {
  std::string mode;
  std::string input, output, metrics;
  std::string windows = "3x3";
  double gamma = 1.0;
  double gain_cap = 10.0;
};

int cmd_enhance(const EnhanceArgs& args) {
  const std::optional<logpix::EnhanceMode> mode = logpix::parse_mode(args.mode);
  if (!mode) {
    std::cerr << "error: unknown mode '" << args.mode << "'\n";
    return 2;
  }
  const GridSpec grid = parse_grid(args.windows, "--windows");
  require_positive(args.gamma, "--gamma");
  require_positive(args.gain_cap, "--gain-cap");

  logpix::EnhanceConfig cfg;
  cfg.mode = *mode;
  cfg.windows_x = grid.x;
  cfg.windows_y = grid.y;
  cfg.gamma = args.gamma;
  cfg.gain_cap = args.gain_cap;

  const logpix::RasterImage img = logpix::load_image(args.input);
  logpix::RunReport report;
  report.input = args.input;
  report.output = args.output;

  const auto t0 = std::chrono::steady_clock::now();
  const logpix::RasterImage out = logpix::run_enhance(img, cfg, &report.metrics);
  const auto t1 = std::chrono::steady_clock::now();
  report.wall_clock_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

  logpix::save_image(out, args.output);
  if (!args.metrics.empty()) write_json(logpix::report_json(report), args.metrics);
  return 0;
}

struct StatsArgs {
  std::string input, metrics;
  std::string windows = "1x1";
  double gamma = 1.0;
};

int cmd_stats(const StatsArgs& args) {
  const GridSpec grid = parse_grid(args.windows, "--windows");
  require_positive(args.gamma, "--gamma");
  const logpix::RasterImage img = logpix::load_image(args.input);

  // luminosity phi plane plus saturation energies for color inputs
  std::vector<double> lum;
  const std::vector<double>* sat2 = nullptr;
  logpix::detail::ColorPhiPlanes planes;
  if (img.mono()) {
    lum = logpix::phi_plane_of(img.plane(0));
  } else {
    planes = logpix::detail::color_phi_planes(img);
    lum = planes.fl;
    sat2 = &planes.sat2;
  }

  const logpix::FuzzyPartition part(img.support(), grid.x - 1, grid.y - 1, args.gamma);
  const logpix::MembershipField field = part.rasterize(img.width(), img.height());

  const auto window_entry = [&](const std::vector<double>& w) {
    const double card = logpix::detail::plain_sum(w);
    const double m = logpix::weighted_average(lum, w, card);
    nlohmann::json j;
    j["card"] = card;
    j["phi_mean"] = m;
    j["mu_phi"] = logpix::phi_inv_of(m);
    j["sigma_phi_sq"] = logpix::weighted_sq_deviation(lum, m, w, card);
    j["gamma_phi_sq"] =
        sat2 ? nlohmann::json(logpix::weighted_average(*sat2, w, card))
             : nlohmann::json(nullptr);
    return j;
  };

  nlohmann::json j;
  j["schema_version"] = logpix::kReportSchemaVersion;
  j["input"] = args.input;
  j["image"] = {{"width", img.width()},
                {"height", img.height()},
                {"planes", img.plane_count()}};
  j["partition"] = {{"m", part.m()}, {"n", part.n()}, {"gamma", part.gamma()}};
  j["global"] = window_entry(std::vector<double>(img.pixel_count(), 1.0));
  nlohmann::json windows = nlohmann::json::array();
  std::vector<double> wbuf;
  for (int wj = 0; wj <= part.n(); ++wj) {
    for (int wi = 0; wi <= part.m(); ++wi) {
      field.fill_plane({wi, wj}, wbuf);
      nlohmann::json entry = window_entry(wbuf);
      entry["i"] = wi;
      entry["j"] = wj;
      windows.push_back(entry);
    }
  }
  j["windows"] = windows;

  std::cout << j.dump(2) << '\n';
  if (!args.metrics.empty()) write_json(j, args.metrics);
  return 0;
}

struct MembershipArgs {
  std::string output;
  std::string windows = "3x3";
  std::string size;
  std::string window;
  double gamma = 1.0;
};

int cmd_membership(const MembershipArgs& args) {
  const GridSpec grid = parse_grid(args.windows, "--windows");
  require_positive(args.gamma, "--gamma");
  const GridSpec dims = parse_grid(args.size, "--size");
  const auto [wi, wj] = parse_window_index(args.window);
  if (wi < 0 || wi >= grid.x || wj < 0 || wj >= grid.y) {
    std::cerr << "error: --window " << wi << "," << wj
              << " is outside the " << grid.x << "x" << grid.y << " grid\n";
    return 2;
  }

  const logpix::SupportRect support{0.0, static_cast<double>(dims.x), 0.0,
                                    static_cast<double>(dims.y)};
  const logpix::FuzzyPartition part(support, grid.x - 1, grid.y - 1, args.gamma);
  const logpix::MembershipField field = part.rasterize(dims.x, dims.y);
  const std::vector<double> plane = field.plane({wi, wj});

  logpix::RasterImage img(dims.x, dims.y, 1);
  auto dst = img.plane(0);
  for (std::size_t k = 0; k < plane.size(); ++k) dst[k] = logpix::UnitValue(plane[k]);
  logpix::save_image(img, args.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"logarithmic image enhancement over fuzzy Bernstein windows"};
  app.require_subcommand(1);

  EnhanceArgs enhance_args;
  CLI::App* enhance = app.add_subcommand("enhance", "enhance an image");
  enhance->add_option("--mode", enhance_args.mode,
                      "global-mono | global-color2 | global-color3 | fuzzy-mono | "
                      "fuzzy-color | crisp-color | histeq")
      ->required();
  enhance->add_option("-i,--input", enhance_args.input, "input image (PNG/PGM/PPM)")
      ->required();
  enhance->add_option("-o,--output", enhance_args.output, "output image")->required();
  enhance->add_option("--windows", enhance_args.windows, "window grid, e.g. 3x3");
  enhance->add_option("--gamma", enhance_args.gamma, "partition sharpness (> 0)");
  enhance->add_option("--gain-cap", enhance_args.gain_cap, "cap on lambda and omega");
  enhance->add_option("--metrics", enhance_args.metrics, "write a JSON run report here");

  StatsArgs stats_args;
  CLI::App* stats = app.add_subcommand("stats", "print logarithmic statistics");
  stats->add_option("-i,--input", stats_args.input, "input image")->required();
  stats->add_option("--windows", stats_args.windows, "window grid, e.g. 3x3");
  stats->add_option("--gamma", stats_args.gamma, "partition sharpness (> 0)");
  stats->add_option("--metrics", stats_args.metrics, "also write the JSON here");

  MembershipArgs mem_args;
  CLI::App* membership =
      app.add_subcommand("membership", "export a membership plane as an image");
  membership->add_option("--windows", mem_args.windows, "window grid, e.g. 3x3");
  membership->add_option("--gamma", mem_args.gamma, "partition sharpness (> 0)");
  membership->add_option("--size", mem_args.size, "raster size, e.g. 256x256")->required();
  membership->add_option("--window", mem_args.window, "window index, e.g. 1,1")->required();
  membership->add_option("-o,--output", mem_args.output, "output image")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (enhance->parsed()) return cmd_enhance(enhance_args);
    if (stats->parsed()) return cmd_stats(stats_args);
    if (membership->parsed()) return cmd_membership(mem_args);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
