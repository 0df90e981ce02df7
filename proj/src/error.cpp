#include "dms/error.hpp"

namespace dms {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::CoincidentPoints: return "CoincidentPoints";
    case Errc::DependentEndpoints: return "DependentEndpoints";
    case Errc::NonLightlike: return "NonLightlike";
    case Errc::SameCenter: return "SameCenter";
    case Errc::PointNotOnGeodesic: return "PointNotOnGeodesic";
    case Errc::NotHyperbolic: return "NotHyperbolic";
    case Errc::NoAxis: return "NoAxis";
    case Errc::TooFewPoints: return "TooFewPoints";
    case Errc::BadOrder: return "BadOrder";
    case Errc::BadSpikeOrder: return "BadSpikeOrder";
    case Errc::NonPositiveLength: return "NonPositiveLength";
    case Errc::BadGluing: return "BadGluing";
    case Errc::NonPositiveScale: return "NonPositiveScale";
    case Errc::ArcsCross: return "ArcsCross";
    case Errc::NotFilling: return "NotFilling";
    case Errc::DisconnectedTiling: return "DisconnectedTiling";
    case Errc::WaistOffArc: return "WaistOffArc";
    case Errc::NotTriangulation: return "NotTriangulation";
    case Errc::NotEdgeToEdge: return "NotEdgeToEdge";
    case Errc::NotInPlane: return "NotInPlane";
    case Errc::ChainNotFound: return "ChainNotFound";
    case Errc::MismatchedSurface: return "MismatchedSurface";
    case Errc::StemsCross: return "StemsCross";
    case Errc::SpikeNotFound: return "SpikeNotFound";
    case Errc::IntersectingPhotons: return "IntersectingPhotons";
    case Errc::DisjointnessFailure: return "DisjointnessFailure";
    case Errc::MismatchedLinearPart: return "MismatchedLinearPart";
    case Errc::ParseError: return "ParseError";
    case Errc::InvariantViolation: return "InvariantViolation";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(Errc c, const std::string& what)
    : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}

void fail(Errc c, const std::string& what) { throw Error(c, what); }

}  // namespace dms
