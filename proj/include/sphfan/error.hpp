#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sphfan {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual)
      : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
              std::to_string(actual)),
        expected_(expected),
        actual_(actual) {}

  std::size_t expected() const { return expected_; }
  std::size_t actual() const { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

class UnknownColor : public Error {
 public:
  explicit UnknownColor(const std::string& name) : Error("unknown color \"" + name + "\""), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class UnknownElement : public Error {
 public:
  explicit UnknownElement(const std::string& name)
      : Error("unknown group element \"" + name + "\""), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// Raised when the Fourier-Motzkin cross-check disagrees with the simplex.
class OracleDisagreement : public Error {
 public:
  using Error::Error;
};

}  // namespace sphfan
