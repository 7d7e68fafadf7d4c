#pragma once

#include <stdexcept>
#include <string>

namespace pvol {

/// Base class of everything this library throws on invalid input or data.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Manifest or image file could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input violated a structural invariant (dimensions, duplicate ids, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Byte stream is not a valid mask image.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Mask has too little foreground to trace a perimeter.
class DegenerateMaskError : public Error {
 public:
  using Error::Error;
};

/// Fewer points than an ellipse fit requires.
class InsufficientPointsError : public Error {
 public:
  using Error::Error;
};

/// Point scatter admits no ellipse solution.
class FitError : public Error {
 public:
  using Error::Error;
};

/// No frame of a sweep satisfies the mid-plane area floor.
class EmptySweepError : public Error {
 public:
  using Error::Error;
};

/// A sweep was passed to an operation expecting the other imaging plane.
class PlaneMismatchError : public Error {
 public:
  using Error::Error;
};

/// Paired sweeps disagree on frame count or grid.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

/// Boundary distance requested against an empty mask.
class UndefinedDistanceError : public Error {
 public:
  using Error::Error;
};

/// Bad operation parameters (k > n, zero observers, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Value outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Phantom geometry does not fit the requested frame.
class GeometryError : public Error {
 public:
  using Error::Error;
};

}  // namespace pvol
