#pragma once

#include <stdexcept>
#include <string>

namespace dpdrc {

// Bad problem data: shapes, definiteness, symmetry, unknown config keys.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

class DimensionError : public ValidationError {
 public:
  explicit DimensionError(const std::string& what) : ValidationError(what) {}
};

class DomainError : public ValidationError {
 public:
  explicit DomainError(const std::string& what) : ValidationError(what) {}
};

// Privacy budget outside the calibration hypotheses (Gaussian: eps in (0,1), delta in (0,1)).
class InvalidBudget : public ValidationError {
 public:
  explicit InvalidBudget(const std::string& what) : ValidationError(what) {}
};

// No tau in the searched range admits a risk-sensitive controller.
class NoFeasibleTau : public std::runtime_error {
 public:
  explicit NoFeasibleTau(const std::string& what) : std::runtime_error(what) {}
};

class QuadratureError : public std::runtime_error {
 public:
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dpdrc
