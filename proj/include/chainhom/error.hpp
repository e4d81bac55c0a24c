#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace chainhom {

enum class ErrorKind {
  NonSquareMatrix,
  AsymmetricMatrix,
  NegativeDistance,
  TriangleViolation,
  DisconnectedGraph,
  NonpositiveScale,
  IndexOutOfRange,
  IllegalMove,
  JunctionMismatch,
  ScaleMismatch,
  NotALoop,
  WrongComponent,
  ScaleOrderViolation,
  OutsideTruncation,
  StartMismatch,
  InconsistentThread,
  NotAHomotopy,
  SpecInvalid,
  InvalidInput,
  ArithmeticOverflow,
};

const char* to_string(ErrorKind kind);

// Every failure the library reports. `indices` carries the offending point
// indices (pair, triple, ...) when the error names them.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::vector<std::size_t> indices = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        indices_(std::move(indices)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

 private:
  ErrorKind kind_;
  std::vector<std::size_t> indices_;
};

}  // namespace chainhom
