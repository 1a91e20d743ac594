#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ultrapower {

// Error taxonomy shared by the library and the CLI. Each class maps to one
// documented CLI exit code (see tools/ and README).
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// Malformed documents, unusable flag values, incompatible selector tables.
class ParseError : public Error {
public:
  using Error::Error;
};

// Violated operation preconditions: malformed chains, non-dense carriers,
// degenerate refuter inputs, non-covering families, undecidable queries.
class PreconditionError : public Error {
public:
  using Error::Error;
};

// Two elements or sequences from different carriers were mixed.
class DescriptorMismatchError : public PreconditionError {
public:
  using PreconditionError::PreconditionError;
};

// Certificate whose support the ambient ultrafilter trace rejects.
class InvalidCertificateError : public Error {
public:
  using Error::Error;
};

// Certificate contradicted pointwise; carries the violating index.
class FalsifiedCertificateError : public Error {
public:
  FalsifiedCertificateError(const std::string& what_arg, std::uint64_t violating_index)
      : Error(what_arg), index(violating_index) {}

  std::uint64_t index;
};

// Period cap exceeded while aligning eventually periodic representations.
class ResourceError : public Error {
public:
  using Error::Error;
};

}  // namespace ultrapower
