#pragma once

#include <stdexcept>
#include <string>

namespace dms {

enum class Errc {
  ZeroVector,
  CoincidentPoints,
  DependentEndpoints,
  NonLightlike,
  SameCenter,
  PointNotOnGeodesic,
  NotHyperbolic,
  NoAxis,
  TooFewPoints,
  BadOrder,
  BadSpikeOrder,
  NonPositiveLength,
  BadGluing,
  NonPositiveScale,
  ArcsCross,
  NotFilling,
  DisconnectedTiling,
  WaistOffArc,
  NotTriangulation,
  NotEdgeToEdge,
  NotInPlane,
  ChainNotFound,
  MismatchedSurface,
  StemsCross,
  SpikeNotFound,
  IntersectingPhotons,
  DisjointnessFailure,
  MismatchedLinearPart,
  ParseError,
  InvariantViolation,
  InvalidArgument,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc c, const std::string& what);
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc c, const std::string& what);

}  // namespace dms
