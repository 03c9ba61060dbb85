#pragma once

#include <stdexcept>
#include <string>

namespace statgeo {

// Base of every error raised by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidShape : public Error {
 public:
  using Error::Error;
};

// A sampled segment starts or ends inside the shape: the arena does not
// enclose it.
class ArenaTooSmall : public Error {
 public:
  using Error::Error;
};

// A line whose crossings cannot be classified robustly; the caller resamples.
class DegenerateLine : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class ConfigMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace statgeo
