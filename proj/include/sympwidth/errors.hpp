#pragma once

#include <stdexcept>
#include <string>

namespace sympwidth {

/// Malformed body/Hamiltonian specification or CLI input. `path` is a JSON
/// pointer to the offending element when one is known.
class SpecError : public std::runtime_error {
 public:
  SpecError(std::string path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what),
        path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// A computation produced a non-finite value.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An inequality that must hold mathematically was violated beyond tolerance.
class CheckFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sympwidth
