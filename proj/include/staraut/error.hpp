#pragma once

#include <stdexcept>
#include <string>

namespace staraut {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class GroupMismatch : public Error {
 public:
  using Error::Error;
};

class CategoryMismatch : public Error {
 public:
  using Error::Error;
};

// An enumeration or search was asked to run above its configured bound.
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

// Input data violates the defining condition of its type.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// A search that mathematically must succeed came back empty.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace staraut
