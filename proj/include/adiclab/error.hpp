#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace adiclab {

enum class ErrorKind {
  InvalidArgument,
  MissingBit,
  RankOutOfRange,
  AlphaOutOfRange,
  MaximalPrefix,
  MinimalPrefix,
  WindowEscapesColumn,
  KinkPreconditionFailed,
  BoundExceeded,
  NotFound,
  LevelBelowK,
  SizeCap,
  ParseError,
  InconsistentLengths,
  CapExceeded,
  ShapeMismatch,
  ResourceCap,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::size_t position = 0)
      : std::runtime_error(what), kind_(kind), position_(position) {}

  ErrorKind kind() const noexcept { return kind_; }
  // Offset into the input for ParseError, zero otherwise.
  std::size_t position() const noexcept { return position_; }

 private:
  ErrorKind kind_;
  std::size_t position_;
};

}  // namespace adiclab
