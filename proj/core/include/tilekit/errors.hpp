#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tilekit {

// Stable machine-readable error codes. The CLI and the session service
// surface these names verbatim, so never rename an existing entry.
enum class ErrorCode {
  // surface kernel
  SidesTooSmall,
  NonPositiveLength,
  AlreadyGlued,
  LengthMismatch,
  SelfSlot,
  InvalidSlot,
  UnknownFace,
  DegenerateVertex,
  // spec files
  ParseError,
  DanglingReference,
  DuplicateGluing,
  DuplicateName,
  // curvature
  BoundaryVertex,
  InteriorVertex,
  NotClosed,
  NotOrientable,
  OddChi,
  EmptyRegion,
  DisconnectedRegion,
  NonPositiveDefect,
  NotIntegral,
  // generators
  UnknownSolid,
  TooFewSectors,
  NonManifold,
  InvalidParameter,
  // geodesics
  UngluedSlot,
  HitVertex,
  SegmentEscapesStrip,
  NoGeodesic,
  NotADisk,
  SidesIntersect,
  InvalidPoint,
  // embedding
  Disconnected,
  CoincidentNodes,
  // service
  UnknownSession,
  ConflictingMutation,
  NothingToUndo,
  BadRequest,
  Internal,
};

std::string_view code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view code_name() const noexcept { return tilekit::code_name(code_); }

 private:
  ErrorCode code_;
};

// A spec-file error carrying the 1-based position of the offending token.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string& message, int line, int column)
      : Error(code, message), line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace tilekit
