#pragma once

#include <json.hpp>
#include <string>

#include "logpix/enhance.hpp"

// Machine-readable run reports. nlohmann::json keeps object keys sorted,
// which gives the stable serialization the CLI promises.

namespace logpix {

inline constexpr int kReportSchemaVersion = 1;

struct RunReport {
  std::string input;
  std::string output;
  RunMetrics metrics;
  double wall_clock_ms = 0.0;
};

namespace detail {

inline nlohmann::json summary_json(const PlaneSummary& s) {
  nlohmann::json j;
  j["phi_mean"] = s.phi_mean;
  j["phi_variance"] = s.phi_variance;
  j["gamma_phi_sq"] = s.gamma_phi_sq ? nlohmann::json(*s.gamma_phi_sq)
                                     : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json window_json(const WindowParamRecord& w) {
  nlohmann::json j;
  j["i"] = w.id.i;
  j["j"] = w.id.j;
  j["lambda"] = w.params.lambda;
  j["tau"] = w.params.tau.value();
  j["omega"] = w.params.omega;
  j["lambda_capped"] = w.params.lambda_capped;
  j["omega_capped"] = w.params.omega_capped;
  j["card"] = w.stats.card;
  j["mu_phi"] = w.stats.mu_phi.value();
  j["sigma_phi_sq"] = w.stats.sigma_phi_sq;
  j["gamma_phi_sq"] = w.stats.gamma_phi_sq;
  return j;
}

}  // namespace detail

inline nlohmann::json report_json(const RunReport& r) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["mode"] = to_string(r.metrics.mode);
  j["input"] = r.input;
  j["output"] = r.output;
  j["partition"] = {{"m", r.metrics.m}, {"n", r.metrics.n}, {"gamma", r.metrics.gamma}};
  j["pre"] = detail::summary_json(r.metrics.pre);
  j["post"] = detail::summary_json(r.metrics.post);
  j["cap_engaged"] = r.metrics.cap_engaged;
  nlohmann::json windows = nlohmann::json::array();
  for (const WindowParamRecord& w : r.metrics.windows)
    windows.push_back(detail::window_json(w));
  j["windows"] = windows;
  j["wall_clock_ms"] = r.wall_clock_ms;
  return j;
}

}  // namespace logpix
