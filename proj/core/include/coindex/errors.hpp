#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coindex {

// Base of every exception raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotAUnit : public Error {
 public:
  using Error::Error;
};

class UnknownSymbol : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::string const& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class NotPrime : public Error {
 public:
  using Error::Error;
};

class SelfReferentialDefinition : public Error {
 public:
  using Error::Error;
};

class NotASubgroup : public Error {
 public:
  using Error::Error;
};

// A finite enumeration outgrew its configured cap.
class Exceeded : public Error {
 public:
  using Error::Error;
};

class InvalidWord : public Error {
 public:
  using Error::Error;
};

class NotInSubgroup : public Error {
 public:
  using Error::Error;
};

class IncompleteTable : public Error {
 public:
  using Error::Error;
};

class DegeneratePresentation : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class DatasetError : public Error {
 public:
  using Error::Error;
};

}  // namespace coindex
