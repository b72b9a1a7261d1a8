#include "tilekit/errors.hpp"

namespace tilekit {

std::string_view code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SidesTooSmall: return "SidesTooSmall";
    case ErrorCode::NonPositiveLength: return "NonPositiveLength";
    case ErrorCode::AlreadyGlued: return "AlreadyGlued";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::SelfSlot: return "SelfSlot";
    case ErrorCode::InvalidSlot: return "InvalidSlot";
    case ErrorCode::UnknownFace: return "UnknownFace";
    case ErrorCode::DegenerateVertex: return "DegenerateVertex";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::DuplicateGluing: return "DuplicateGluing";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::BoundaryVertex: return "BoundaryVertex";
    case ErrorCode::InteriorVertex: return "InteriorVertex";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::NotOrientable: return "NotOrientable";
    case ErrorCode::OddChi: return "OddChi";
    case ErrorCode::EmptyRegion: return "EmptyRegion";
    case ErrorCode::DisconnectedRegion: return "DisconnectedRegion";
    case ErrorCode::NonPositiveDefect: return "NonPositiveDefect";
    case ErrorCode::NotIntegral: return "NotIntegral";
    case ErrorCode::UnknownSolid: return "UnknownSolid";
    case ErrorCode::TooFewSectors: return "TooFewSectors";
    case ErrorCode::NonManifold: return "NonManifold";
    case ErrorCode::UngluedSlot: return "UngluedSlot";
    case ErrorCode::HitVertex: return "HitVertex";
    case ErrorCode::SegmentEscapesStrip: return "SegmentEscapesStrip";
    case ErrorCode::NoGeodesic: return "NoGeodesic";
    case ErrorCode::NotADisk: return "NotADisk";
    case ErrorCode::SidesIntersect: return "SidesIntersect";
    case ErrorCode::InvalidPoint: return "InvalidPoint";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::CoincidentNodes: return "CoincidentNodes";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::ConflictingMutation: return "ConflictingMutation";
    case ErrorCode::NothingToUndo: return "NothingToUndo";
    case ErrorCode::BadRequest: return "BadRequest";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace tilekit
