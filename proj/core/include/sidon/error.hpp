#pragma once

#include <stdexcept>
#include <string>

namespace sidon {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid scheme parameters (q not an odd prime, k too small, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Malformed or out-of-contract input (shape mismatch, zero vector, bad file).
class InputError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive routine was asked to enumerate more than it is allowed to.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// The element handed to the product factorization is not a product of two
/// nonzero elements of the Sidon space.
class FactorizationError : public Error {
 public:
  using Error::Error;
};

/// A ciphertext did not decrypt to a valid message.
class DecryptionFailure : public Error {
 public:
  using Error::Error;
};

/// A randomized loop exceeded its trial cap or an internal invariant broke.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace sidon
