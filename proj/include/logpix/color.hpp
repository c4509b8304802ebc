#pragma once

#include <cmath>
#include <stdexcept>

#include "logpix/logcalc.hpp"

// The lrgb perceptual decomposition: whiteness l plus chromatic
// components r, g, b, in a classical and a logarithmic variant. The
// logarithmic variant keeps chroma inside V with achromatic neutral 0.5
// and satisfies phi(r) + phi(g) + phi(b) = 0.

namespace logpix {

struct RgbPixel {
  UnitValue r, g, b;
};

// Classical lrgb: l in (0,1); r, g, b signed chroma in (-2/3, 2/3) with
// r + g + b = 0.
struct LrgbClassic {
  double l = 0.5;
  double r = 0.0, g = 0.0, b = 0.0;
};

// Logarithmic lrgb: every component lives in V; chroma neutral is 0.5.
struct LrgbLog {
  UnitValue l, r, g, b;
};

inline LrgbClassic rgb_to_lrgb_classic(const RgbPixel& p) {
  const double R = p.r.value(), G = p.g.value(), B = p.b.value();
  return {(R + G + B) / 3.0,
          (2.0 * R - G - B) / 3.0,
          (2.0 * G - B - R) / 3.0,
          (2.0 * B - R - G) / 3.0};
}

// Inverse of rgb_to_lrgb_classic. Arbitrary lrgb coordinates can leave
// the channel range; that is reported, not clamped.
inline RgbPixel lrgb_to_rgb_classic(const LrgbClassic& q) {
  const double R = q.l + (2.0 * q.r - q.g - q.b) / 3.0;
  const double G = q.l + (2.0 * q.g - q.b - q.r) / 3.0;
  const double B = q.l + (2.0 * q.b - q.r - q.g) / 3.0;
  if (!(R > 0.0 && R < 1.0 && G > 0.0 && G < 1.0 && B > 0.0 && B < 1.0))
    throw std::range_error("lrgb_to_rgb_classic: channel outside (0,1)");
  return {UnitValue(R), UnitValue(G), UnitValue(B)};
}

// s^2 = (r^2 + g^2 + b^2) / 3
inline double saturation_classic(const LrgbClassic& q) {
  return std::sqrt((q.r * q.r + q.g * q.g + q.b * q.b) / 3.0);
}

// Logarithmic decomposition, computed in phi-space: three phi
// evaluations, linear combinations, one phi_inv per component. The
// chained rational route gives the same values and is kept as a test
// oracle only.
inline LrgbLog rgb_to_lrgb_log(const RgbPixel& p) {
  const double fr = phi_of(p.r.value());
  const double fg = phi_of(p.g.value());
  const double fb = phi_of(p.b.value());
  const double fl = (fr + fg + fb) / 3.0;
  return {UnitValue(phi_inv_of(fl)), UnitValue(phi_inv_of(fr - fl)),
          UnitValue(phi_inv_of(fg - fl)), UnitValue(phi_inv_of(fb - fl))};
}

// R = l <+> r, G = l <+> g, B = l <+> b
inline RgbPixel lrgb_to_rgb_log(const LrgbLog& q) {
  return {log_add(q.l, q.r), log_add(q.l, q.g), log_add(q.l, q.b)};
}

// s_phi^2 = (phi(r)^2 + phi(g)^2 + phi(b)^2) / 3
inline double saturation_log(const LrgbLog& q) {
  const double fr = phi_of(q.r.value());
  const double fg = phi_of(q.g.value());
  const double fb = phi_of(q.b.value());
  return std::sqrt((fr * fr + fg * fg + fb * fb) / 3.0);
}

}  // namespace logpix
