#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace semsec {

// Thrown when a numerical identity that must hold (nonnegative mutual
// information, PSD conditional covariance) is violated beyond round-off.
class ConsistencyError : public std::logic_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

// Singular or otherwise unusable matrix blocks.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Rejection sampler exhausted its budget without producing a valid draw.
class SamplerStarvation : public std::runtime_error {
 public:
  explicit SamplerStarvation(const std::string& what) : std::runtime_error(what) {}
};

// Configuration failed validation; `path` names the offending field.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string path, const std::string& message)
      : std::invalid_argument(path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace semsec
