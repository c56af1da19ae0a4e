#pragma once

#include <stdexcept>
#include <string>

namespace norlund {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// API misuse: mixed precisions, out-of-range orders, malformed requests.
class UsageError : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

// A sequence transform hit a vanishing denominator.
class AccelBreakdown : public Error {
 public:
  using Error::Error;
};

// The evaluation point is too close to a singularity for the working precision.
class IllConditioned : public Error {
 public:
  using Error::Error;
};

}  // namespace norlund
