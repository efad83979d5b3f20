#pragma once

#include <stdexcept>
#include <string>

namespace isee {

// Exit codes used by the command-line tool.
enum class ExitCode : int { ok = 0, validation = 2, numerical = 3, io = 4 };

class Error : public std::runtime_error {
 public:
  Error(const std::string& what, ExitCode code)
      : std::runtime_error(what), code_(code) {}
  ExitCode exit_code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what)
      : Error(what, ExitCode::validation) {}
};

// Parameters are well formed but the requested rule cannot be applied.
class InvalidConfiguration : public Error {
 public:
  explicit InvalidConfiguration(const std::string& what)
      : Error(what, ExitCode::validation) {}
};

class NumericalFailure : public Error {
 public:
  explicit NumericalFailure(const std::string& what)
      : Error(what, ExitCode::numerical) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what, ExitCode::io) {}
};

}  // namespace isee
