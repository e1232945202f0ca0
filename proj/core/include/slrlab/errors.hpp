#pragma once

#include <stdexcept>
#include <string>

namespace slrlab {

// Precondition violations (bad dimensions, non-unit vectors, zero sizes)
// surface as std::invalid_argument. The two domain errors below let the CLI
// map failures to distinct exit codes.

/// An enumeration or table would exceed its configured size cap.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, double requested, double cap)
      : std::runtime_error(what), requested_(requested), cap_(cap) {}

  double requested() const noexcept { return requested_; }
  double cap() const noexcept { return cap_; }

 private:
  double requested_;
  double cap_;
};

/// No closed form or estimator applies to the requested parameter regime.
class UnsupportedRegime : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace slrlab
