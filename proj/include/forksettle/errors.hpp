#pragma once

#include <stdexcept>
#include <string>

namespace forksettle {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied arguments outside an operation's domain.
class BadParams : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

/// A martingale source produced Pr[1 | prefix] above (1 - eps) / 2.
class MartingaleViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class UnknownTine : public Error {
 public:
  using Error::Error;
};

class MalformedFork : public Error {
 public:
  using Error::Error;
};

class InsufficientReserve : public Error {
 public:
  using Error::Error;
};

class NotClosed : public Error {
 public:
  using Error::Error;
};

class NotHonestSlot : public Error {
 public:
  using Error::Error;
};

/// Brute-force enumeration refused an input longer than its guard.
class TooLong : public Error {
 public:
  using Error::Error;
};

class TooManyForks : public Error {
 public:
  using Error::Error;
};

class EmptySet : public Error {
 public:
  using Error::Error;
};

class ComposeConstantTerm : public Error {
 public:
  using Error::Error;
};

class NonConvergent : public Error {
 public:
  using Error::Error;
};

/// An adversary handed back a fork that breaks the prefix relation or an axiom.
class InvalidAdversaryFork : public Error {
 public:
  using Error::Error;
};

class BadGrid : public Error {
 public:
  using Error::Error;
};

class MismatchFound : public Error {
 public:
  using Error::Error;
};

}  // namespace forksettle
