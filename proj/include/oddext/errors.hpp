#pragma once

#include <stdexcept>
#include <string>

namespace oddext {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class DegreeMismatch : public Error {
public:
  using Error::Error;
};

/// A k = 0 mode was handed to an inverse of the Hodge Laplacian (torus harmonic forms).
class NonTrivialKernel : public Error {
public:
  using Error::Error;
};

/// Hodge-system data violating df = 0 or d*g = 0.
class IncompatibleData : public Error {
public:
  using Error::Error;
};

/// Translation phase e^{ik.a} not representable over the Gaussian rationals.
class TranslationNotExact : public Error {
public:
  using Error::Error;
};

class UnderSampled : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

} // namespace oddext
