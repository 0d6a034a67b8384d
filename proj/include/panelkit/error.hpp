#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace panelkit {

enum class ErrorKind {
  InvalidArgument,
  NotAnEdge,
  IdCollision,
  NeighborMismatch,
  InvalidEmbedding,
  DegenerateTriangle,
  SelfIntersectingFan,
  BoundaryMismatch,
  NonGenericDirection,
  NonGenericApex,
  CurvesIntersect,
  InvalidPolygon,
  SpliceMismatch,
  FanDegenerate,
  SceneInvariantViolation,
  MalformedConfig,
  Io,
  AlgorithmMismatch,
};

std::string_view to_string(ErrorKind kind);

// Every failure the library reports carries a machine-readable kind plus a
// human-readable message with the exact witness where one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace panelkit
