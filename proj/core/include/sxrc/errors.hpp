#pragma once

#include <stdexcept>
#include <string>

namespace sxrc {

// A violated precondition: the caller passed something the contract forbids.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Inconsistent code parameters or malformed user input.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Not enough live nodes, shares, or helpers to carry out an operation.
class UnavailableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reconstructed data did not match what was expected (digest mismatch etc).
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed file, bad magic, truncated payload, or an I/O failure.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The GF(2) reference solver found a rank-deficient system.
class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sxrc
