#pragma once

#include <stdexcept>
#include <string>

namespace fibrifier {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A table or map refers to an object or morphism that does not exist.
class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

/// Two functors were expected to share a codomain (or domain) and do not.
class TargetMismatch : public Error {
 public:
  using Error::Error;
};

/// A closure engine exceeded its morphism or coset budget.
class CapExceeded : public Error {
 public:
  CapExceeded(std::string what, long cap) : Error(std::move(what)), cap_(cap) {}
  long cap() const noexcept { return cap_; }

 private:
  long cap_;
};

class NotAFibration : public Error {
 public:
  using Error::Error;
};

class NotIsofibration : public Error {
 public:
  using Error::Error;
};

class IncoherentPseudoFunctor : public Error {
 public:
  using Error::Error;
};

class NotFibrewiseOpfibration : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON or a document that does not match its schema.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace fibrifier
