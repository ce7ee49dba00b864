#pragma once

#include <stdexcept>
#include <string>

namespace rsvdangle {

// All library failures surface as this type; the message names the failed
// condition (e.g. "rank deficient sketch", "empty tail").
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Distortion constants outside the range where a bound is defined.
class InvalidParams : public Error {
 public:
  using Error::Error;
};

// Posterior gap assumptions do not hold.
class GapViolation : public Error {
 public:
  using Error::Error;
};

// Not enough tail singular values for the requested sample size.
class TailTooShort : public Error {
 public:
  using Error::Error;
};

}  // namespace rsvdangle
