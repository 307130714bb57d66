#ifndef PROBCLONE_ERROR_H
#define PROBCLONE_ERROR_H

#include <stdexcept>
#include <string>

namespace probclone {

// Operand shapes are incompatible (lengths, matrix dimensions, subsystem
// factor sizes).
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// A mathematical precondition does not hold: non-normalized state,
// non-Hermitian operator, overlap outside [0, 1), Gram mismatch, ...
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Malformed external input (state files, machine files).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// An iterative routine failed or produced a result outside its residual
// contract.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace probclone

#endif  // PROBCLONE_ERROR_H
