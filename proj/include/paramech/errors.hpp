#pragma once

#include <stdexcept>
#include <string>

namespace paramech {

/// Process exit codes used by the command-line front end.
enum class ExitCode : int {
  success = 0,
  invalid_input = 2,
  singular_system = 3,
  no_convergence = 4,
  io_failure = 5,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  [[nodiscard]] virtual ExitCode exit_code() const noexcept { return ExitCode::invalid_input; }
};

/// Malformed or inconsistent input (scenario text, dimensions, options).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Degenerate linear system: singular Hessian or singular 2-form.
class SingularSystemError : public Error {
 public:
  explicit SingularSystemError(const std::string& what, double at_time = 0.0)
      : Error(what), time_(at_time) {}
  [[nodiscard]] ExitCode exit_code() const noexcept override { return ExitCode::singular_system; }
  [[nodiscard]] double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Evaluation at a singular point of a builtin field (e.g. distance at 0).
class DomainError : public Error {
 public:
  using Error::Error;
  [[nodiscard]] ExitCode exit_code() const noexcept override { return ExitCode::singular_system; }
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, int iterations) : Error(what), iterations_(iterations) {}
  [[nodiscard]] ExitCode exit_code() const noexcept override { return ExitCode::no_convergence; }
  [[nodiscard]] int iterations() const noexcept { return iterations_; }

 private:
  int iterations_;
};

class IoError : public Error {
 public:
  using Error::Error;
  [[nodiscard]] ExitCode exit_code() const noexcept override { return ExitCode::io_failure; }
};

}  // namespace paramech
