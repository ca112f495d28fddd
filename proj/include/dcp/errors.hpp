#ifndef DCP_ERRORS_HPP
#define DCP_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dcp {

// Base for every domain error raised by the library. Callers that only need a
// message can catch this; the derived types carry structured payloads.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

class NumericInput : public Error {
 public:
  using Error::Error;
};

class InvalidDuration : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// |alpha|^2 exceeded dim/4 for the requested truncation.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, std::size_t required_dim)
      : Error(what), required_dim_(required_dim) {}
  std::size_t required_dim() const noexcept { return required_dim_; }

 private:
  std::size_t required_dim_;
};

// Loop overlap fell below the corruption threshold.
class TruncationCorruption : public Error {
 public:
  TruncationCorruption(const std::string& what, double overlap)
      : Error(what), overlap_(overlap) {}
  double overlap() const noexcept { return overlap_; }

 private:
  double overlap_;
};

// Spatial frequency is not an integer multiple of 2*pi/L.
class CommensurabilityError : public Error {
 public:
  CommensurabilityError(const std::string& what, double nearest_k)
      : Error(what), nearest_k_(nearest_k) {}
  double nearest_valid_k() const noexcept { return nearest_k_; }

 private:
  double nearest_k_;
};

class AliasingError : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class NotClosed : public Error {
 public:
  using Error::Error;
};

class DegeneratePath : public Error {
 public:
  using Error::Error;
};

class InsufficientSweep : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace dcp

#endif  // DCP_ERRORS_HPP
