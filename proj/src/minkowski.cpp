#include "dms/minkowski.hpp"

#include <ostream>

#include "dms/error.hpp"

namespace dms {

std::ostream& operator<<(std::ostream& os, const Vec21& v) {
  return os << '(' << v.x << ", " << v.y << ", " << v.z << ')';
}

const char* causal_name(CausalClass c) {
  switch (c) {
    case CausalClass::Spacelike: return "Spacelike";
    case CausalClass::LightlikePositive: return "LightlikePositive";
    case CausalClass::LightlikeNegative: return "LightlikeNegative";
    case CausalClass::TimelikePositive: return "TimelikePositive";
    case CausalClass::TimelikeNegative: return "TimelikeNegative";
    case CausalClass::Zero: return "Zero";
  }
  return "?";
}

CausalClass classify(const Vec21& v, double tol) {
  const double s = max_abs(v);
  if (s == 0.0) return CausalClass::Zero;
  const Vec21 w = v / s;
  const double q = norm2(w);
  if (q > tol) return CausalClass::Spacelike;
  if (q < -tol) return w.z > 0 ? CausalClass::TimelikePositive : CausalClass::TimelikeNegative;
  return w.z > 0 ? CausalClass::LightlikePositive : CausalClass::LightlikeNegative;
}

Vec21 dual_plane_normal(const Vec21& v) {
  if (max_abs(v) == 0.0) fail(Errc::ZeroVector, "dual of the zero vector");
  return v;
}

Vec21 unit(const Vec21& v) {
  const double n = mnorm(v);
  if (!(n > 1e-300) || n < 1e-14 * max_abs(v)) fail(Errc::ZeroVector, "cannot normalize a null vector");
  return v / n;
}

}  // namespace dms
