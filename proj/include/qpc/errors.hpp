#pragma once

#include <stdexcept>
#include <string>

namespace qpc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Semiaxes violate the family's ordering.
class SpecError : public Error {
 public:
  using Error::Error;
};

// A chart coordinate (or confocal parameter) lies outside its open interval.
class RangeError : public Error {
 public:
  RangeError(int slot, const std::string& what) : Error(what), slot_(slot) {}
  int slot() const noexcept { return slot_; }

 private:
  int slot_;
};

// Point lies on a coordinate hyperplane, where principal charts are undefined.
class ChartDegenerateError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// Requested principal line field is undefined (adjacent curvatures coincide).
class DegenerateDirectionError : public Error {
 public:
  DegenerateDirectionError(double gap, const std::string& what) : Error(what), gap_(gap) {}
  double gap() const noexcept { return gap_; }

 private:
  double gap_;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qpc
