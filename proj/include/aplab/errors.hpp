#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aplab {

// Configuration rejected by a stability or parameter check (CLI exit code 2).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configuration that is valid in principle but outside what the schemes
// implement, e.g. a relaxation parameter other than 1.
class UnsupportedConfiguration : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A file that cannot be opened, read or written (CLI exit code 4).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// NaN or Inf produced while time stepping (CLI exit code 3).
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(std::size_t step, const std::string& what)
      : std::runtime_error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

// An iterative spectral solve that did not converge (CLI exit code 3).
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(int iterations, const std::string& what)
      : std::runtime_error(what), iterations_(iterations) {}
  int iterations() const noexcept { return iterations_; }

 private:
  int iterations_;
};

}  // namespace aplab
