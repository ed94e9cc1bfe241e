#pragma once

#include <stdexcept>
#include <string>

namespace hypervol {

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a finite point gets within kBoundaryTol of the sphere at infinity.
class BoundaryProximityError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class DimensionMismatchError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class InvalidArgumentError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

}  // namespace hypervol
