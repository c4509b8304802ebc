#pragma once

#include <cmath>

// Logarithmic arithmetic on the bounded intensity set V = (0,1).
//
// V carries a vector-space structure transported from the reals through
// the isomorphism phi(v) = ln(v/(1-v))/4: addition, subtraction and
// scalar multiplication all stay inside V, the neutral element is 0.5,
// and the opposite of v is 1-v. A scalar product, a norm and a modulus
// complete the Euclidean structure.
//
// Every operation keeps a single canonical evaluation path (the rational
// closed form, or the map through phi where that *is* the definition);
// the test suite checks that both routes agree.

namespace logpix {

// phi diverges at the endpoints, so constructed values are clamped to
// [kUnitEps, 1 - kUnitEps].
inline constexpr double kUnitEps = 1.1920928955078125e-07;  // 2^-23

inline constexpr double kNeutralValue = 0.5;

// An intensity strictly inside (0,1).
class UnitValue {
 public:
  constexpr UnitValue() = default;
  explicit constexpr UnitValue(double v) : v_(clamp_interior(v)) {}

  constexpr double value() const { return v_; }

  static constexpr double clamp_interior(double v) {
    if (v < kUnitEps) return kUnitEps;
    if (v > 1.0 - kUnitEps) return 1.0 - kUnitEps;
    return v;
  }

 private:
  double v_ = kNeutralValue;
};

inline constexpr UnitValue kNeutral{kNeutralValue};

// Coordinate of an intensity under the isomorphism; unbounded.
struct PhiValue {
  double t = 0.0;
};

// Raw maps between V and phi-space. Inputs to phi_of must be strictly
// interior; phi_inv_of saturates to the clamped interior for large |t|.
inline double phi_of(double v) { return 0.25 * std::log(v / (1.0 - v)); }

inline double phi_inv_of(double t) {
  return UnitValue::clamp_interior(1.0 / (1.0 + std::exp(-4.0 * t)));
}

inline PhiValue phi(UnitValue a) { return {phi_of(a.value())}; }

inline UnitValue phi_inv(PhiValue p) { return UnitValue(phi_inv_of(p.t)); }

// v1 <+> v2 = v1*v2 / ((1-v1)(1-v2) + v1*v2)
inline constexpr UnitValue log_add(UnitValue a, UnitValue b) {
  const double va = a.value(), vb = b.value();
  const double num = va * vb;
  return UnitValue(num / ((1.0 - va) * (1.0 - vb) + num));
}

// opposite: 1 - v
inline constexpr UnitValue log_neg(UnitValue a) {
  return UnitValue(1.0 - a.value());
}

// v1 <-> v2 = v1(1-v2) / (v1(1-v2) + (1-v1)v2)
inline constexpr UnitValue log_sub(UnitValue a, UnitValue b) {
  const double va = a.value(), vb = b.value();
  const double num = va * (1.0 - vb);
  return UnitValue(num / (num + (1.0 - va) * vb));
}

// lambda <x> v = v^l / (v^l + (1-v)^l), evaluated with a single pow so
// one-sided overflow saturates instead of producing 0/0.
inline UnitValue log_smul(double lambda, UnitValue a) {
  const double va = a.value();
  const double r = std::pow((1.0 - va) / va, lambda);
  return UnitValue(1.0 / (1.0 + r));
}

// (v1 | v2) = phi(v1) * phi(v2)
inline double inner(UnitValue a, UnitValue b) {
  return phi_of(a.value()) * phi_of(b.value());
}

// ||v|| = |phi(v)|
inline double norm(UnitValue a) { return std::abs(phi_of(a.value())); }

// |v| = 0.5 + |v - 0.5|, a value in [0.5, 1)
inline constexpr UnitValue modulus(UnitValue a) {
  const double d = a.value() - 0.5;
  return UnitValue(0.5 + (d < 0.0 ? -d : d));
}

}  // namespace logpix
